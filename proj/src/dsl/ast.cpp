#include "bitml/dsl/ast.hpp"

#include <charconv>

namespace bitml::dsl {

std::string_view to_string(DiagramKind k) {
    return k == DiagramKind::Transactions ? "transactions" : "network";
}

std::optional<DiagramKind> diagram_kind_from_keyword(std::string_view kw) {
    if (kw == "transactions") return DiagramKind::Transactions;
    if (kw == "network") return DiagramKind::Network;
    return std::nullopt;
}

namespace {

struct KindInfo {
    ElementKind kind;
    std::string_view keyword;
    std::string_view stereotype;
};

constexpr KindInfo kKinds[] = {
    {ElementKind::Node, "node", "BitcoinNode"},
    {ElementKind::Block, "block", "Block"},
    {ElementKind::BlockHeader, "blockheader", "BlockHeader"},
    {ElementKind::Transaction, "transaction", "Transaction"},
    {ElementKind::Output, "output", "TransactionOutput"},
    {ElementKind::Input, "input", "TransactionInput"},
    {ElementKind::CoinbaseInput, "coinbaseinput", "CoinbaseTransactionInput"},
    {ElementKind::LockingScript, "lockingscript", "LockingScript"},
    {ElementKind::UnlockingScript, "unlockingscript", "UnlockingScript"},
    {ElementKind::EcSignature, "ecsignature", "EllipticCurveSignature"},
    {ElementKind::Mnemonic, "mnemonic", "MnemonicCodeWord"},
    {ElementKind::Seed, "seed", "Seed"},
    {ElementKind::PrivateKey, "privatekey", "PrivateKey"},
    {ElementKind::PublicKey, "publickey", "PublicKey"},
    {ElementKind::Address, "address", "PublicAddress"},
};

const KindInfo& info(ElementKind k) {
    for (const auto& i : kKinds) {
        if (i.kind == k) return i;
    }
    return kKinds[0];
}

bool same_tags(const std::vector<AstTag>& a, const std::vector<AstTag>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name || !(a[i].value == b[i].value)) return false;
    }
    return true;
}

bool same_element(const AstElement& a, const AstElement& b) {
    if (a.kind != b.kind || a.name != b.name || !same_tags(a.tags, b.tags)) return false;
    if (a.attrs.size() != b.attrs.size() || a.ops.size() != b.ops.size() ||
        a.tx_refs.size() != b.tx_refs.size() || a.children.size() != b.children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.attrs.size(); ++i) {
        if (a.attrs[i].name != b.attrs[i].name || a.attrs[i].stereotype != b.attrs[i].stereotype ||
            a.attrs[i].value != b.attrs[i].value) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.ops.size(); ++i) {
        if (a.ops[i].name != b.ops[i].name || a.ops[i].stereotype != b.ops[i].stereotype) return false;
    }
    for (std::size_t i = 0; i < a.tx_refs.size(); ++i) {
        if (a.tx_refs[i].name != b.tx_refs[i].name) return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!same_element(a.children[i], b.children[i])) return false;
    }
    return true;
}

}  // namespace

std::string_view element_keyword(ElementKind k) { return info(k).keyword; }
std::string_view element_stereotype(ElementKind k) { return info(k).stereotype; }

std::optional<ElementKind> element_kind_from_keyword(std::string_view kw) {
    for (const auto& i : kKinds) {
        if (i.keyword == kw) return i.kind;
    }
    return std::nullopt;
}

std::optional<ElementKind> element_kind_from_stereotype(std::string_view stereotype) {
    for (const auto& i : kKinds) {
        if (i.stereotype == stereotype) return i.kind;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> Literal::as_u64() const {
    if (kind == Kind::Integer) {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || p != text.data() + text.size()) return std::nullopt;
        return v;
    }
    if (kind == Kind::Hex) {
        auto v = u256_from_hex(text);
        if (!v || *v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
        return static_cast<std::uint64_t>(*v);
    }
    return std::nullopt;
}

std::optional<U256> Literal::as_u256() const {
    if (kind == Kind::Integer) {
        auto v = as_u64();
        return v ? std::optional<U256>(U256(*v)) : std::nullopt;
    }
    if (kind == Kind::Hex) return u256_from_hex(text);
    return std::nullopt;
}

std::string Literal::to_source() const {
    switch (kind) {
        case Kind::Integer:
        case Kind::Ident:
        case Kind::Boolean: return text;
        case Kind::Hex: return "0x" + text;
        case Kind::String: {
            std::string out = "\"";
            for (char c : text) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            return out + "\"";
        }
    }
    return text;
}

std::string AstPath::joined() const {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += '.';
        out += segments[i];
    }
    return out;
}

bool same_structure(const AstModel& a, const AstModel& b) {
    if (a.diagrams.size() != b.diagrams.size() ||
        a.user_invariants.size() != b.user_invariants.size()) {
        return false;
    }
    for (std::size_t d = 0; d < a.diagrams.size(); ++d) {
        const auto& x = a.diagrams[d];
        const auto& y = b.diagrams[d];
        if (x.kind != y.kind || x.name != y.name || x.elements.size() != y.elements.size() ||
            x.connectors.size() != y.connectors.size()) {
            return false;
        }
        for (std::size_t i = 0; i < x.elements.size(); ++i) {
            if (!same_element(x.elements[i], y.elements[i])) return false;
        }
        for (std::size_t i = 0; i < x.connectors.size(); ++i) {
            const auto& c = x.connectors[i];
            const auto& e = y.connectors[i];
            if (c.kind != e.kind || c.source.segments != e.source.segments ||
                c.target.segments != e.target.segments) {
                return false;
            }
        }
    }
    for (std::size_t i = 0; i < a.user_invariants.size(); ++i) {
        const auto& x = a.user_invariants[i];
        const auto& y = b.user_invariants[i];
        if (x.name != y.name || x.context != y.context) return false;
        if (!x.expr || !y.expr || !constraints::same_structure(*x.expr, *y.expr)) return false;
    }
    return true;
}

}  // namespace bitml::dsl
