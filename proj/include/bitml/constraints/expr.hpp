#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bitml/diagnostic.hpp"
#include "bitml/dsl/lexer.hpp"
#include "bitml/uint256.hpp"

namespace bitml::constraints {

enum class BinaryOp { Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul, Div, And, Or, Implies };
enum class UnaryOp { Not, Neg };
enum class CollectionOp { Size, IsEmpty, NotEmpty, ForAll, Exists };

std::string_view to_string(BinaryOp op);
std::string_view to_string(CollectionOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLiteral {
    U256 value;
};
struct StringLiteral {
    std::string value;
};
struct BoolLiteral {
    bool value = false;
};
struct SelfRef {};
struct IteratorRef {};
// A bare identifier: a tag of `self` when it has one, otherwise an enumeration literal.
struct NameRef {
    std::string name;
};
// `source.name` (attribute read) or `source.name(arg)` (built-in navigation).
struct Navigation {
    ExprPtr source;
    std::string name;
    bool is_call = false;
    std::vector<std::string> args;
};
struct CollectionCall {
    ExprPtr source;
    CollectionOp op = CollectionOp::Size;
    ExprPtr body;  // forAll / exists only
};
struct Unary {
    UnaryOp op = UnaryOp::Not;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op = BinaryOp::Eq;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Expr {
    std::variant<IntLiteral, StringLiteral, BoolLiteral, SelfRef, IteratorRef, NameRef, Navigation,
                 CollectionCall, Unary, Binary>
        node;
    SourceSpan span;
};

struct ExprParseResult {
    ExprPtr expr;  // null on failure
    std::vector<Diagnostic> errors;
    std::size_t next = 0;  // index of the first unconsumed token
};

/// Parses one expression starting at `tokens[start]`. Stops before the first token
/// that cannot continue the expression; callers check what follows.
ExprParseResult parse_expr_tokens(std::span<const dsl::Token> tokens, std::size_t start);

/// Parses a complete expression; trailing tokens are an error.
ExprParseResult parse_expr(std::string_view text, const std::string& file = "<expr>");

/// Canonical text; re-parses to a structurally identical tree.
std::string print_expr(const Expr& e);

/// Structural equality, ignoring spans.
bool same_structure(const Expr& a, const Expr& b);

}  // namespace bitml::constraints
