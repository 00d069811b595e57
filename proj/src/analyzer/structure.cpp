#include <algorithm>
#include <limits>

#include "bitml/analyzer/analyzer.hpp"

namespace bitml {

std::string_view endpoint_rule(ConnectorKind kind) {
    switch (kind) {
        case ConnectorKind::Spend: return rules::kSpendEndpoints;
        case ConnectorKind::Unlock: return rules::kUnlockEndpoints;
        case ConnectorKind::Pbkdf2: return rules::kPbkdf2Endpoints;
        case ConnectorKind::Hmac512: return rules::kHmacEndpoints;
        case ConnectorKind::Hash160: return rules::kHash160Endpoints;
    }
    return rules::kSpendEndpoints;
}

std::string classify_node(const Element& node) {
    using namespace tags;
    std::vector<std::string_view> active;
    for (auto role : kNodeRoles) {
        if (node.role(role)) active.push_back(role);
    }
    auto exactly = [&](std::initializer_list<std::string_view> roles) {
        return active.size() == roles.size() &&
               std::all_of(roles.begin(), roles.end(), [&](auto r) { return node.role(r); });
    };
    if (exactly({kWallet, kMiner, kFullBlockchain, kNetworkRouting})) return "BitcoinCore";
    if (exactly({kWallet, kNetworkRouting})) return "LightweightWallet";
    std::string out = "Custom({";
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (i) out += ", ";
        out += active[i];
    }
    return out + "})";
}

namespace {

class StructureChecker {
public:
    StructureChecker(const Model& model, const ProfileRegistry& reg) : m_(model), reg_(reg) {}

    std::vector<Diagnostic> run() {
        for (const auto& e : m_.elements) {
            check_diagram_kind(e);
            check_nonce_widths(e);
            if (e.stereotype == "Transaction") check_transaction(e);
            else if (e.stereotype == "Block") check_block(e);
            else if (e.stereotype == "BlockHeader") check_header(e);
            else if (e.stereotype == "BitcoinNode") check_node(e);
            else if (reg_.specializes(e.stereotype, "AbstractTransactionInput")) check_input_spends(e);
        }
        for (const auto& c : m_.connectors) check_endpoints(c);
        sort_diagnostics(out_);
        return std::move(out_);
    }

private:
    void diag(Severity sev, std::string_view rule, std::string message, const SourceSpan& span) {
        out_.push_back(Diagnostic{sev, std::string(rule), std::move(message), span});
    }

    static std::string label(const Element& e) { return "'" + e.id + "'"; }

    std::size_t count_inputs(const Element& tx, std::string_view stereotype) const {
        std::size_t n = 0;
        for (const Element* c : m_.children_of(tx)) {
            if (reg_.specializes(c->stereotype, stereotype)) ++n;
        }
        return n;
    }

    void check_transaction(const Element& tx) {
        if (count_inputs(tx, "AbstractTransactionInput") == 0) {
            diag(Severity::Error, rules::kTransactionWithoutInput,
                 "transaction " + label(tx) + " has no inputs", tx.span);
        }
    }

    void check_block(const Element& block) {
        if (block.members.empty()) {
            diag(Severity::Error, rules::kEmptyBlock, "block " + label(block) + " contains no transactions",
                 block.span);
            return;
        }
        for (std::size_t i = 0; i < block.members.size(); ++i) {
            const Element* tx = m_.find(block.members[i]);
            if (tx == nullptr) continue;
            const std::size_t coinbase = count_inputs(*tx, "CoinbaseTransactionInput");
            if (i == 0 && coinbase != 1) {
                diag(Severity::Error, rules::kCoinbasePlacement,
                     "first transaction " + label(*tx) + " of block " + label(block) +
                         " must contain exactly one coinbase input, found " + std::to_string(coinbase),
                     block.span);
            } else if (i > 0 && coinbase != 0) {
                diag(Severity::Error, rules::kCoinbasePlacement,
                     "transaction " + label(*tx) + " at position " + std::to_string(i + 1) + " of block " +
                         label(block) + " contains a coinbase input",
                     block.span);
            }
        }
    }

    void check_header(const Element& header) {
        const auto prev = header.attributes_of("PreviousBlockHash");
        if (prev.size() != 1) {
            diag(Severity::Error, rules::kPreviousBlockHashCount,
                 "block header " + label(header) + " must have exactly one PreviousBlockHash attribute, found " +
                     std::to_string(prev.size()),
                 header.span);
        }
    }

    void check_node(const Element& node) {
        if (node.role(tags::kStratumNode) && node.role(tags::kStratumServer)) {
            diag(Severity::Error, rules::kStratumRoleConflict,
                 "node " + label(node) + " cannot play both StratumNode and StratumServer roles", node.span);
        }
        const std::string kind = classify_node(node);
        if (kind.rfind("Custom(", 0) == 0) {
            diag(Severity::Lint, rules::kUnnamedNodeType,
                 "node " + label(node) + " role set matches no named node type: " + kind, node.span);
        }
        if (const auto* mining = node.tag(tags::kMiningType)) {
            const auto* s = std::get_if<std::string>(mining);
            if (s != nullptr && *s == "Pooled") {
                const auto* proto = node.tag(tags::kProtocol);
                const auto* lit = proto ? std::get_if<EnumValue>(proto) : nullptr;
                if (lit == nullptr || (lit->literal != "Stratum" && lit->literal != "MiningPoolProtocol")) {
                    diag(Severity::Lint, rules::kPooledProtocol,
                         "pooled-mining node " + label(node) +
                             " should use the Stratum or MiningPoolProtocol protocol",
                         node.span);
                }
            }
        }
    }

    void check_nonce_widths(const Element& e) {
        auto check = [&](std::string_view stereotype, const U256& max, std::string_view width) {
            for (const Attribute* a : e.attributes_of(stereotype)) {
                if (!a->value) continue;
                const auto v = a->value->as_u256();
                if (!v || *v > max) {
                    diag(Severity::Error, rules::kNonceWidth,
                         std::string(stereotype) + " attribute '" + e.id + "." + a->name + "' must fit in " +
                             std::string(width),
                         a->span);
                }
            }
        };
        check("Nonce", U256(std::numeric_limits<std::uint32_t>::max()), "32 bits");
        check("ExtraNonce", U256(std::numeric_limits<std::uint64_t>::max()), "8 bytes");
    }

    void check_input_spends(const Element& input) {
        std::size_t valid = 0;
        for (const Connector* c : m_.incoming(input.id, ConnectorKind::Spend)) {
            const Element* src = m_.find(c->source);
            if (src && reg_.connector_endpoints_allowed(ConnectorKind::Spend, src->stereotype,
                                                        input.stereotype)) {
                ++valid;
            }
        }
        if (valid > 1) {
            diag(Severity::Error, rules::kInputSpentTwice,
                 "input " + label(input) + " spends " + std::to_string(valid) +
                     " outputs; an input references exactly one UTXO",
                 input.span);
        }
    }

    void check_endpoints(const Connector& c) {
        const Element* src = m_.find(c.source);
        const Element* dst = m_.find(c.target);
        if (src == nullptr || dst == nullptr) return;
        if (!reg_.connector_endpoints_allowed(c.kind, src->stereotype, dst->stereotype)) {
            diag(Severity::Error, endpoint_rule(c.kind),
                 std::string(connector_keyword(c.kind)) + " connector cannot be drawn from «" +
                     src->stereotype + "» " + label(*src) + " to «" + dst->stereotype + "» " + label(*dst),
                 c.span);
        }
    }

    void check_diagram_kind(const Element& e) {
        if (e.owner) return;
        const bool is_node = e.stereotype == "BitcoinNode";
        if (e.diagram_kind == DiagramKind::Network && !is_node) {
            diag(Severity::Warning, rules::kDiagramKind,
                 "«" + e.stereotype + "» " + label(e) + " does not belong in network diagram '" + e.diagram + "'",
                 e.span);
        } else if (e.diagram_kind == DiagramKind::Transactions && is_node) {
            diag(Severity::Warning, rules::kDiagramKind,
                 "«BitcoinNode» " + label(e) + " belongs in a network diagram, not transactions diagram '" +
                     e.diagram + "'",
                 e.span);
        }
    }

    const Model& m_;
    const ProfileRegistry& reg_;
    std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> check_structure(const Model& model, const ProfileRegistry& registry) {
    return StructureChecker(model, registry).run();
}

}  // namespace bitml
