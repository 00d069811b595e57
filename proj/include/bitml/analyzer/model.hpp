#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bitml/constraints/expr.hpp"
#include "bitml/diagnostic.hpp"
#include "bitml/dsl/ast.hpp"
#include "bitml/profile.hpp"

namespace bitml {

using dsl::DiagramKind;
using dsl::Literal;

struct EnumValue {
    std::string literal;
    friend bool operator==(const EnumValue&, const EnumValue&) = default;
};

/// Typed tagged value. Tags outside the profile keep the natural type of their literal.
using TagValue = std::variant<bool, std::uint64_t, std::string, EnumValue>;

std::string tag_value_to_source(const TagValue& v);

struct Attribute {
    std::string name;
    std::string stereotype;
    std::optional<Literal> value;
    SourceSpan span;
    friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Operation {
    std::string name;
    std::string stereotype;
    SourceSpan span;
    friend bool operator==(const Operation&, const Operation&) = default;
};

struct Element {
    std::string id;    // "Tx" or "Tx.out0"
    std::string name;
    std::string stereotype;
    std::map<std::string, TagValue> tags;
    std::vector<Attribute> attributes;
    std::vector<Operation> operations;
    std::optional<std::string> owner;
    std::vector<std::string> children;  // composition, declaration order
    std::vector<std::string> members;   // block -> transaction references, declaration order
    DiagramKind diagram_kind = DiagramKind::Transactions;
    std::string diagram;
    SourceSpan span;

    [[nodiscard]] const TagValue* tag(std::string_view name) const;
    [[nodiscard]] const Attribute* attribute(std::string_view name) const;
    [[nodiscard]] std::vector<const Attribute*> attributes_of(std::string_view stereotype) const;
    [[nodiscard]] bool role(std::string_view tag_name) const;  // boolean tag, false when absent

    friend bool operator==(const Element&, const Element&) = default;
};

struct Connector {
    ConnectorKind kind = ConnectorKind::Spend;
    std::string source;
    std::string target;
    std::string diagram;
    SourceSpan span;
    friend bool operator==(const Connector&, const Connector&) = default;
};

struct Diagram {
    DiagramKind kind = DiagramKind::Transactions;
    std::string name;
    std::vector<std::string> elements;  // ids, declaration order (children follow parents)
    SourceSpan span;
    friend bool operator==(const Diagram&, const Diagram&) = default;
};

struct Invariant {
    std::string name;
    std::string context;  // as written
    std::string context_stereotype;
    constraints::ExprPtr expr;
    SourceSpan span;

    friend bool operator==(const Invariant& a, const Invariant& b);
};

class Model {
public:
    std::vector<Element> elements;
    std::vector<Connector> connectors;
    std::vector<Diagram> diagrams;
    std::vector<Invariant> invariants;

    [[nodiscard]] const Element* find(std::string_view id) const;
    [[nodiscard]] std::vector<const Element*> children_of(const Element& e) const;
    [[nodiscard]] std::vector<const Connector*> incoming(std::string_view id, ConnectorKind k) const;
    [[nodiscard]] std::vector<const Connector*> outgoing(std::string_view id, ConnectorKind k) const;
    /// Blocks that list `tx_id` as a member transaction.
    [[nodiscard]] std::vector<const Element*> blocks_containing(std::string_view tx_id) const;

    /// Rebuilds the id index; call after mutating `elements`.
    void reindex();

    friend bool operator==(const Model& a, const Model& b);

private:
    std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace bitml
