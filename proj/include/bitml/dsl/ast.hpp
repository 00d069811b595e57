#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bitml/constraints/expr.hpp"
#include "bitml/diagnostic.hpp"
#include "bitml/profile.hpp"
#include "bitml/uint256.hpp"

namespace bitml::dsl {

enum class DiagramKind { Transactions, Network };

std::string_view to_string(DiagramKind k);
std::optional<DiagramKind> diagram_kind_from_keyword(std::string_view kw);

// One element keyword per instantiable class stereotype.
enum class ElementKind {
    Node,
    Block,
    BlockHeader,
    Transaction,
    Output,
    Input,
    CoinbaseInput,
    LockingScript,
    UnlockingScript,
    EcSignature,
    Mnemonic,
    Seed,
    PrivateKey,
    PublicKey,
    Address,
};

inline constexpr ElementKind kAllElementKinds[] = {
    ElementKind::Node,          ElementKind::Block,           ElementKind::BlockHeader,
    ElementKind::Transaction,   ElementKind::Output,          ElementKind::Input,
    ElementKind::CoinbaseInput, ElementKind::LockingScript,   ElementKind::UnlockingScript,
    ElementKind::EcSignature,   ElementKind::Mnemonic,        ElementKind::Seed,
    ElementKind::PrivateKey,    ElementKind::PublicKey,       ElementKind::Address};

std::string_view element_keyword(ElementKind k);
std::string_view element_stereotype(ElementKind k);
std::optional<ElementKind> element_kind_from_keyword(std::string_view kw);
std::optional<ElementKind> element_kind_from_stereotype(std::string_view stereotype);

struct Literal {
    enum class Kind { Integer, Hex, String, Ident, Boolean };
    Kind kind = Kind::Integer;
    // Integer: decimal digits. Hex: lowercase digits, no prefix. Boolean: "true"/"false".
    std::string text;

    [[nodiscard]] std::optional<std::uint64_t> as_u64() const;
    [[nodiscard]] std::optional<U256> as_u256() const;
    [[nodiscard]] std::string to_source() const;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct AstTag {
    std::string name;
    Literal value;
    SourceSpan span;
};

struct AstAttribute {
    std::string name;
    std::string stereotype;
    std::optional<Literal> value;
    SourceSpan span;
};

struct AstOperation {
    std::string name;
    std::string stereotype;
    SourceSpan span;
};

struct AstTxRef {
    std::string name;
    SourceSpan span;
};

struct AstElement {
    ElementKind kind = ElementKind::Node;
    std::string name;
    std::vector<AstTag> tags;
    std::vector<AstAttribute> attrs;
    std::vector<AstOperation> ops;
    std::vector<AstTxRef> tx_refs;
    std::vector<AstElement> children;
    SourceSpan span;
};

struct AstPath {
    std::vector<std::string> segments;  // 1 or 2
    SourceSpan span;

    [[nodiscard]] std::string joined() const;
};

struct AstConnector {
    ConnectorKind kind = ConnectorKind::Spend;
    AstPath source;
    AstPath target;
    SourceSpan span;
};

struct AstDiagram {
    DiagramKind kind = DiagramKind::Transactions;
    std::string name;
    std::vector<AstElement> elements;
    std::vector<AstConnector> connectors;
    SourceSpan span;
};

struct AstInvariant {
    std::string name;
    std::string context;  // element keyword or class-stereotype name, as written
    constraints::ExprPtr expr;
    SourceSpan span;
};

struct AstModel {
    std::vector<AstDiagram> diagrams;
    std::vector<AstInvariant> user_invariants;
};

/// Structural equality ignoring spans.
bool same_structure(const AstModel& a, const AstModel& b);

}  // namespace bitml::dsl
