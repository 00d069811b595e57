#include "bitml/profile.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace bitml {

std::string_view to_string(Metaclass m) {
    switch (m) {
        case Metaclass::Class: return "Class";
        case Metaclass::Attribute: return "Attribute";
        case Metaclass::Operation: return "Operation";
        case Metaclass::Association: return "Association";
        case Metaclass::Dependency: return "Dependency";
    }
    return "Class";
}

std::string_view connector_name(ConnectorKind k) {
    switch (k) {
        case ConnectorKind::Spend: return "Spend";
        case ConnectorKind::Unlock: return "Unlock";
        case ConnectorKind::Pbkdf2: return "PBKDF2KeyStretching";
        case ConnectorKind::Hmac512: return "HMACSHA512";
        case ConnectorKind::Hash160: return "RIPEMD160HashOfSHA256Hash";
    }
    return "Spend";
}

std::string_view connector_keyword(ConnectorKind k) {
    switch (k) {
        case ConnectorKind::Spend: return "spend";
        case ConnectorKind::Unlock: return "unlock";
        case ConnectorKind::Pbkdf2: return "pbkdf2";
        case ConnectorKind::Hmac512: return "hmac512";
        case ConnectorKind::Hash160: return "hash160";
    }
    return "spend";
}

std::optional<ConnectorKind> connector_from_name(std::string_view name) {
    for (auto k : kAllConnectorKinds) {
        if (connector_name(k) == name) return k;
    }
    return std::nullopt;
}

std::optional<ConnectorKind> connector_from_keyword(std::string_view keyword) {
    for (auto k : kAllConnectorKinds) {
        if (connector_keyword(k) == keyword) return k;
    }
    return std::nullopt;
}

const TaggedValueDef* StereotypeDef::find_tag(std::string_view tag) const {
    for (const auto& t : tagged_values) {
        if (t.name == tag) return &t;
    }
    return nullptr;
}

bool EnumDef::has_literal(std::string_view literal) const {
    return std::find(literals.begin(), literals.end(), literal) != literals.end();
}

const StereotypeDef* ProfileRegistry::lookup_stereotype(std::string_view name) const {
    auto it = stereotype_index_.find(name);
    return it == stereotype_index_.end() ? nullptr : &stereotypes_[it->second];
}

const EnumDef* ProfileRegistry::lookup_enum(std::string_view name) const {
    for (const auto& e : enums_) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

const TaggedValueDef* ProfileRegistry::lookup_tag(std::string_view name) const {
    for (const auto& t : tagged_values_) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

const ConnectorDef& ProfileRegistry::connector(ConnectorKind kind) const {
    for (const auto& c : connectors_) {
        if (c.kind == kind) return c;
    }
    std::fprintf(stderr, "bitml: connector %s missing from registry\n",
                 std::string(connector_name(kind)).c_str());
    std::abort();
}

std::vector<const StereotypeDef*> ProfileRegistry::stereotypes_of(Metaclass m) const {
    std::vector<const StereotypeDef*> out;
    for (const auto& s : stereotypes_) {
        if (s.extends == m) out.push_back(&s);
    }
    return out;
}

bool ProfileRegistry::is_class_stereotype(std::string_view name) const {
    const auto* s = lookup_stereotype(name);
    return s != nullptr && s->extends == Metaclass::Class;
}

bool ProfileRegistry::specializes(std::string_view name, std::string_view base) const {
    const StereotypeDef* s = lookup_stereotype(name);
    while (s != nullptr) {
        if (s->name == base) return true;
        if (!s->generalizes) return false;
        s = lookup_stereotype(*s->generalizes);
    }
    return false;
}

bool ProfileRegistry::connector_endpoints_allowed(ConnectorKind kind, std::string_view src,
                                                  std::string_view dst) const {
    if (lookup_stereotype(src) == nullptr) throw UnknownStereotype(std::string(src));
    if (lookup_stereotype(dst) == nullptr) throw UnknownStereotype(std::string(dst));
    const auto& def = connector(kind);
    return std::any_of(def.allowed_pairs.begin(), def.allowed_pairs.end(), [&](const auto& pair) {
        return specializes(src, pair.first) && specializes(dst, pair.second);
    });
}

namespace {

std::string split_camel_case(std::string_view name) {
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        const char c = name[i];
        if (i > 0 && std::isupper(static_cast<unsigned char>(c)) &&
            std::islower(static_cast<unsigned char>(name[i - 1]))) {
            out.push_back(' ');
        }
        out.push_back(c);
    }
    return out;
}

TaggedValueDef boolean_tag(std::string_view name) {
    return {std::string(name), TagType::Boolean, std::nullopt, "false", {}, false};
}

TaggedValueDef enum_tag(std::string name, std::string enum_name,
                        std::vector<std::string> allowed = {}) {
    return {std::move(name), TagType::EnumRef, std::move(enum_name), std::nullopt,
            std::move(allowed), false};
}

TaggedValueDef string_tag(std::string name, std::vector<std::string> allowed = {},
                          bool secret = false) {
    return {std::move(name), TagType::String, std::nullopt, std::nullopt, std::move(allowed),
            secret};
}

[[noreturn]] void self_check_failed(const std::string& what) {
    std::fprintf(stderr, "bitml: profile self-check failed: %s\n", what.c_str());
    std::abort();
}

void self_check(const ProfileRegistry& reg) {
    auto count = [&](Metaclass m) { return reg.stereotypes_of(m).size(); };
    if (count(Metaclass::Class) != 16) self_check_failed("expected 16 class stereotypes");
    if (count(Metaclass::Attribute) != 14) self_check_failed("expected 14 attribute stereotypes");
    if (count(Metaclass::Operation) != 8) self_check_failed("expected 8 operation stereotypes");
    if (count(Metaclass::Association) + count(Metaclass::Dependency) != 5)
        self_check_failed("expected 5 connector stereotypes");
    // 16 + 14 + 8 + 5: the per-metaclass counts add up to 43, not the headline 42.
    if (reg.stereotypes().size() != 43) self_check_failed("expected 43 stereotypes");
    if (reg.tagged_values().size() != 23) self_check_failed("expected 23 tagged values");
    if (reg.enums().size() != 6) self_check_failed("expected 6 enumerations");

    std::set<std::string> names;
    for (const auto& s : reg.stereotypes()) {
        if (!names.insert(s.name).second) self_check_failed("duplicate stereotype " + s.name);
        for (const auto& t : s.tagged_values) {
            if (reg.lookup_tag(t.name) == nullptr) self_check_failed("undeclared tag " + t.name);
        }
    }
    for (const auto& t : reg.tagged_values()) {
        const bool is_enum = t.value_type == TagType::EnumRef;
        if (is_enum != t.enum_ref.has_value()) self_check_failed("enum_ref mismatch on " + t.name);
        if (!is_enum) continue;
        const EnumDef* e = reg.lookup_enum(*t.enum_ref);
        if (e == nullptr) self_check_failed("tag " + t.name + " names missing enum");
        for (const auto& lit : t.allowed) {
            if (!e->has_literal(lit)) self_check_failed("tag " + t.name + " allows " + lit);
        }
    }
    for (const auto& c : reg.connectors()) {
        for (const auto& [src, dst] : c.allowed_pairs) {
            if (!reg.is_class_stereotype(src) || !reg.is_class_stereotype(dst))
                self_check_failed("connector " + c.name + " names a non-class endpoint");
        }
    }
}

}  // namespace

ProfileRegistry build_registry() {
    ProfileRegistry reg;

    reg.enums_ = {
        {"ScriptType", {"P2PK", "P2PKH", "P2SH", "P2WPKH", "CustomScript"}},
        {"TransactionPosition", {"OnChain", "OffChain"}},
        {"PayToScriptHashType", {"P2SH", "CHV"}},
        {"CommunicationProtocol", {"BitcoinP2P", "Stratum", "MiningPoolProtocol"}},
        {"HashCashFunctionType", {"SHA1", "Scrypt", "DoubleSHA256"}},
        {"HashCashVerificationFunctionType", {"SHA1", "Scrypt", "DoubleSHA256"}},
    };

    std::vector<TaggedValueDef> node_tags;
    for (auto role : tags::kNodeRoles) node_tags.push_back(boolean_tag(role));
    node_tags.push_back(enum_tag("Protocol", "CommunicationProtocol"));
    node_tags.push_back(string_tag("MiningType", {"Solo", "Cloud", "Pooled"}));
    node_tags.push_back(enum_tag("HashCashFunction", "HashCashFunctionType"));
    node_tags.push_back(enum_tag("HashCashVerificationFunction", "HashCashVerificationFunctionType"));
    node_tags.push_back(string_tag("NodeTypeLabel"));

    const auto miner_p2sh = enum_tag("MinerPay2ScriptHashStandard", "PayToScriptHashType");
    const auto locking_script_type =
        enum_tag("LockingScriptType", "ScriptType", {"P2PK", "P2PKH", "P2SH", "P2WPKH"});
    const auto script_type = enum_tag("ScriptType", "ScriptType");
    const auto position = enum_tag("Position", "TransactionPosition");
    const auto words = string_tag("MnemonicWords", {}, true);
    const auto passphrase = string_tag("Passphrase", {}, true);
    const auto seed_hex = string_tag("SeedHex", {}, true);
    const auto key_hex = string_tag("KeyHex", {}, true);
    const auto chain_hex = string_tag("ChainCodeHex", {}, true);
    const auto address = string_tag("AddressBase58", {}, true);
    const auto header_hex = string_tag("HeaderHex", {}, true);

    reg.tagged_values_ = node_tags;
    for (const auto& t : {miner_p2sh, locking_script_type, script_type, position, words,
                          passphrase, seed_hex, key_hex, chain_hex, address, header_hex}) {
        reg.tagged_values_.push_back(t);
    }

    auto add = [&](std::string name, Metaclass m, std::vector<TaggedValueDef> tvs, bool named,
                   std::optional<std::string> parent = std::nullopt) {
        StereotypeDef def;
        def.alias = split_camel_case(name);
        def.name = std::move(name);
        def.extends = m;
        def.tagged_values = std::move(tvs);
        def.named_in_source = named;
        def.generalizes = std::move(parent);
        reg.stereotypes_.push_back(std::move(def));
    };

    // Class stereotypes.
    add("BitcoinNode", Metaclass::Class, node_tags, true);
    add("Block", Metaclass::Class, {}, true);
    add("BlockHeader", Metaclass::Class, {header_hex}, true);
    add("Transaction", Metaclass::Class, {position}, true);
    add("TransactionOutput", Metaclass::Class, {}, true);
    add("AbstractTransactionInput", Metaclass::Class, {}, true);
    add("TransactionInput", Metaclass::Class, {}, true, "AbstractTransactionInput");
    add("CoinbaseTransactionInput", Metaclass::Class, {miner_p2sh}, true, "AbstractTransactionInput");
    add("LockingScript", Metaclass::Class, {script_type}, true);
    add("UnlockingScript", Metaclass::Class, {locking_script_type}, true);
    add("EllipticCurveSignature", Metaclass::Class, {}, true);
    add("MnemonicCodeWord", Metaclass::Class, {words, passphrase}, true);
    add("Seed", Metaclass::Class, {seed_hex}, true);
    add("PrivateKey", Metaclass::Class, {key_hex, chain_hex}, true);
    add("PublicKey", Metaclass::Class, {key_hex, chain_hex}, true);
    add("PublicAddress", Metaclass::Class, {address}, true);

    // Attribute stereotypes. Only BlockHeight and ExtraNonce are named in the source
    // material; the rest complete the count from the block/transaction fields.
    for (const char* attr : {"Nonce", "ExtraNonce", "BlockHeight", "PreviousBlockHash",
                             "MerkleRoot", "Timestamp", "DifficultyTarget", "Version",
                             "BlockHash", "SatoshiValue", "TransactionLockTime",
                             "SequenceNumber", "ReferencedTxId", "ReferencedOutputIndex"}) {
        const std::string_view a = attr;
        add(attr, Metaclass::Attribute, {}, a == "BlockHeight" || a == "ExtraNonce");
    }

    // Operation stereotypes are labels only.
    for (const char* op : {"ComputeBlockHash", "ComputeMerkleRoot", "SignECDSA", "VerifyECDSA",
                           "EvaluateScript", "SelectUTXO", "DeriveChildKey", "ComputeAddress"}) {
        add(op, Metaclass::Operation, {}, false);
    }

    reg.connectors_ = {
        {ConnectorKind::Spend,
         "Spend",
         Metaclass::Association,
         {{"TransactionOutput", "AbstractTransactionInput"},
          {"TransactionOutput", "TransactionInput"},
          {"TransactionOutput", "CoinbaseTransactionInput"}},
         "Spent By",
         "Spends"},
        {ConnectorKind::Unlock,
         "Unlock",
         Metaclass::Dependency,
         {{"UnlockingScript", "LockingScript"}},
         "Unlocks",
         "Unlocked By"},
        {ConnectorKind::Pbkdf2,
         "PBKDF2KeyStretching",
         Metaclass::Dependency,
         {{"MnemonicCodeWord", "Seed"}},
         "Stretches To",
         "Stretched From"},
        {ConnectorKind::Hmac512,
         "HMACSHA512",
         Metaclass::Dependency,
         {{"Seed", "PrivateKey"}, {"PrivateKey", "PrivateKey"}, {"PublicKey", "PublicKey"}},
         "Derives",
         "Derived From"},
        {ConnectorKind::Hash160,
         "RIPEMD160HashOfSHA256Hash",
         Metaclass::Dependency,
         {{"PublicKey", "PublicAddress"}},
         "Hashes To",
         "Hashed From"},
    };
    for (const auto& c : reg.connectors_) add(c.name, c.uml_base, {}, true);

    for (std::size_t i = 0; i < reg.stereotypes_.size(); ++i) {
        reg.stereotype_index_.emplace(reg.stereotypes_[i].name, i);
    }
    self_check(reg);
    return reg;
}

const ProfileRegistry& bitml_profile() {
    static const ProfileRegistry registry = build_registry();
    return registry;
}

}  // namespace bitml
