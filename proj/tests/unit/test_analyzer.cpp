#include <gtest/gtest.h>

#include <map>
#include <set>

#include "bitml/analyzer/analyzer.hpp"
#include "bitml/dsl/parser.hpp"
#include "bitml/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace bitml;

namespace {

// Written out from the connector definitions, independently of the registry tables.
const std::map<ConnectorKind, std::set<std::pair<std::string, std::string>>> kAllowed = {
    {ConnectorKind::Spend,
     {{"TransactionOutput", "AbstractTransactionInput"},
      {"TransactionOutput", "TransactionInput"},
      {"TransactionOutput", "CoinbaseTransactionInput"}}},
    {ConnectorKind::Unlock, {{"UnlockingScript", "LockingScript"}}},
    {ConnectorKind::Pbkdf2, {{"MnemonicCodeWord", "Seed"}}},
    {ConnectorKind::Hmac512, {{"Seed", "PrivateKey"}, {"PrivateKey", "PrivateKey"}, {"PublicKey", "PublicKey"}}},
    {ConnectorKind::Hash160, {{"PublicKey", "PublicAddress"}}},
};

const std::map<std::string, std::string> kInstance = {
    {"BitcoinNode", "N"},       {"Block", "Blk"},
    {"BlockHeader", "Blk.H"},   {"Transaction", "T"},
    {"TransactionOutput", "T.out0"}, {"TransactionInput", "T.in0"},
    {"CoinbaseTransactionInput", "T.cb"}, {"LockingScript", "L"},
    {"UnlockingScript", "U"},   {"EllipticCurveSignature", "Sig"},
    {"MnemonicCodeWord", "M"},  {"Seed", "S"},
    {"PrivateKey", "K"},        {"PublicKey", "P"},
    {"PublicAddress", "Addr"},
};

std::vector<std::string> class_stereotypes() {
    std::vector<std::string> out;
    for (const auto* s : bitml_profile().stereotypes_of(Metaclass::Class)) out.push_back(s->name);
    return out;
}

std::size_t count_rule(const std::vector<Diagnostic>& diags, std::string_view rule) {
    return static_cast<std::size_t>(
        std::count_if(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.rule_id == rule; }));
}

std::vector<Diagnostic> check(const std::string& src) { return check_source(src, "a.bitml").diagnostics; }

Element node_with(std::initializer_list<std::string_view> roles) {
    Element e;
    e.id = e.name = "N";
    e.stereotype = "BitcoinNode";
    for (auto r : roles) e.tags[std::string(r)] = true;
    return e;
}

}  // namespace

TEST(Analyzer, EndpointTableMatchesRegistryForAllPairs) {
    const auto& reg = bitml_profile();
    const auto classes = class_stereotypes();
    ASSERT_EQ(classes.size(), 16u);
    for (const auto& [kind, allowed] : kAllowed) {
        std::size_t hits = 0;
        for (const auto& s : classes) {
            for (const auto& d : classes) {
                const bool expected = allowed.count({s, d}) != 0;
                EXPECT_EQ(reg.connector_endpoints_allowed(kind, s, d), expected)
                    << connector_keyword(kind) << " " << s << " -> " << d;
                hits += expected;
            }
        }
        EXPECT_EQ(hits, allowed.size());
    }
}

TEST(Analyzer, EveryDisallowedPairInjectedIntoTheModelYieldsOneEndpointDiagnostic) {
    const std::string rel = "analyzer/endpoint_base.bitml";
    const auto base = check_source(testsupport::read_fixture(rel), rel);
    ASSERT_TRUE(base.diagnostics.empty());
    const auto& reg = bitml_profile();
    const auto classes = class_stereotypes();
    std::size_t injected = 0;
    for (const auto& [kind, allowed] : kAllowed) {
        for (const auto& s : classes) {
            for (const auto& d : classes) {
                if (allowed.count({s, d})) continue;
                Model m = base.model;
                // Abstract stereotypes have no keyword, so each endpoint is a fresh element.
                for (const auto& [id, st] : {std::pair{"X_src", s}, std::pair{"X_dst", d}}) {
                    Element e;
                    e.id = e.name = id;
                    e.stereotype = st;
                    e.diagram = "Base";
                    if (st == "BitcoinNode") e.diagram_kind = DiagramKind::Network;
                    if (st == "Transaction") e.children.clear();
                    m.elements.push_back(e);
                }
                m.connectors.push_back(Connector{kind, "X_src", "X_dst", "Base", {}});
                m.reindex();
                const auto diags = check_structure(m, reg);
                const auto endpoint = count_rule(diags, endpoint_rule(kind));
                EXPECT_EQ(endpoint, 1u) << connector_keyword(kind) << " " << s << " -> " << d;
                ++injected;
            }
        }
    }
    EXPECT_EQ(injected, 5u * 256u - 9u);
}

TEST(Analyzer, DisallowedPairsInjectedAsSourceText) {
    const std::string base = testsupport::read_fixture("analyzer/endpoint_base.bitml");
    const auto anchor = base.find("}\nnetwork");
    ASSERT_NE(anchor, std::string::npos);
    std::size_t injected = 0;
    for (const auto& [kind, allowed] : kAllowed) {
        for (const auto& [s, src] : kInstance) {
            for (const auto& [d, dst] : kInstance) {
                if (allowed.count({s, d})) continue;
                std::string src_text = base;
                src_text.insert(anchor, "  " + std::string(connector_keyword(kind)) + " " + src + " -> " + dst + "\n");
                const auto diags = check(src_text);
                ASSERT_EQ(diags.size(), 1u) << src_text;
                EXPECT_EQ(diags[0].rule_id, endpoint_rule(kind));
                ++injected;
            }
        }
    }
    EXPECT_EQ(injected, 5u * 225u - 8u);
}

TEST(Analyzer, NodeClassificationOverAllRoleSets) {
    const auto& roles = tags::kNodeRoles;
    std::size_t named = 0;
    for (unsigned mask = 0; mask < (1u << std::size(roles)); ++mask) {
        Element e = node_with({});
        std::set<std::string_view> active;
        for (std::size_t i = 0; i < std::size(roles); ++i) {
            e.tags[std::string(roles[i])] = ((mask >> i) & 1u) != 0;
            if ((mask >> i) & 1u) active.insert(roles[i]);
        }
        const std::string kind = classify_node(e);
        if (active == std::set<std::string_view>{"Wallet", "Miner", "FullBlockchain", "NetworkRouting"}) {
            EXPECT_EQ(kind, "BitcoinCore");
            ++named;
        } else if (active == std::set<std::string_view>{"Wallet", "NetworkRouting"}) {
            EXPECT_EQ(kind, "LightweightWallet");
            ++named;
        } else {
            EXPECT_EQ(kind.rfind("Custom(", 0), 0u) << kind;
        }
    }
    EXPECT_EQ(named, 2u);
    EXPECT_EQ(classify_node(node_with({})), "Custom({})");
    EXPECT_EQ(classify_node(node_with({"Miner"})), "Custom({Miner})");
}

TEST(Analyzer, RoleTagsDefaultToFalse) {
    const auto diags = check("network N { node Bare }");
    ASSERT_EQ(diags.size(), 1u);
    EXPECT_EQ(diags[0].rule_id, "BITML-005");
    EXPECT_EQ(diags[0].severity, Severity::Lint);
}

TEST(Analyzer, ResolutionDiagnostics) {
    auto single = [](const std::string& src) {
        const auto d = check(src);
        return d.size() == 1 ? d[0].rule_id : "<" + std::to_string(d.size()) + " diagnostics>";
    };
    EXPECT_EQ(single("transactions D { seed Tx1 seed Tx1 }"), "BITML-101");
    EXPECT_EQ(single("transactions D { transaction Tx { input in0 } spend Ghost.out -> Tx.in0 }"), "BITML-102");
    EXPECT_EQ(single("transactions D { seed S { attr x: Frobnicate } }"), "BITML-103");
    EXPECT_EQ(single("transactions D { seed S { attr x: Seed } }"), "BITML-103");
    EXPECT_EQ(single("transactions D { seed S { op x: Nonce } }"), "BITML-103");
    EXPECT_EQ(single("transactions D { lockingscript L { tag ScriptType = P2XX } }"), "BITML-104");
    EXPECT_EQ(single("transactions D { unlockingscript U { tag LockingScriptType = CustomScript } }"), "BITML-104");
    EXPECT_EQ(single("network D { node N { tag Wallet = true tag NetworkRouting = true tag Protocol = 3 } }"), "BITML-104");
    EXPECT_EQ(single("network D { node N { tag MiningType = \"Hosted\" tag Wallet = true tag NetworkRouting = true } }"),
              "BITML-104");
    EXPECT_EQ(single("transactions D { seed S { tag ScriptType = P2SH } }"), "BITML-105");
    EXPECT_EQ(single("transactions D { seed S { input in0 } }"), "BITML-106");
    EXPECT_EQ(single("transactions D { seed S { tx T } }"), "BITML-106");
    EXPECT_EQ(single("transactions D { seed S { tag Label = \"x\" tag Label = \"y\" } }"), "BITML-101");
    EXPECT_EQ(single("inv X on Widget: true;"), "BITML-107");
}

TEST(Analyzer, AdHocTagsKeepTheirLiteralType) {
    const auto r = check_source("transactions D { seed S { tag Note = \"x\" tag Count = 4 tag Flag = true tag E = Foo } }",
                                "a.bitml");
    ASSERT_TRUE(r.diagnostics.empty());
    const Element* s = r.model.find("S");
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(std::get<std::string>(*s->tag("Note")), "x");
    EXPECT_EQ(std::get<std::uint64_t>(*s->tag("Count")), 4u);
    EXPECT_EQ(std::get<bool>(*s->tag("Flag")), true);
    EXPECT_EQ(std::get<EnumValue>(*s->tag("E")).literal, "Foo");
}

TEST(Analyzer, StructureOutputIsSortedAndDeterministic) {
    const std::string src = R"(transactions D {
  transaction B { output o }
  transaction A { output o }
  blockheader H
  block E
})";
    const auto first = check(src);
    ASSERT_EQ(first.size(), 4u);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(check(src), first);
    for (std::size_t i = 1; i < first.size(); ++i) {
        EXPECT_LE(first[i - 1].span, first[i].span);
    }
}
