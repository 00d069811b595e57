#include "bitml/constraints/expr.hpp"

#include <limits>
#include <optional>

namespace bitml::constraints {

using dsl::Token;
using dsl::TokenKind;

std::string_view to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::Eq: return "=";
        case BinaryOp::Ne: return "<>";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
        case BinaryOp::Implies: return "implies";
    }
    return "?";
}

std::string_view to_string(CollectionOp op) {
    switch (op) {
        case CollectionOp::Size: return "size";
        case CollectionOp::IsEmpty: return "isEmpty";
        case CollectionOp::NotEmpty: return "notEmpty";
        case CollectionOp::ForAll: return "forAll";
        case CollectionOp::Exists: return "exists";
    }
    return "?";
}

namespace {

constexpr int kMaxDepth = 200;

std::optional<CollectionOp> collection_op(std::string_view name) {
    for (auto op : {CollectionOp::Size, CollectionOp::IsEmpty, CollectionOp::NotEmpty,
                    CollectionOp::ForAll, CollectionOp::Exists}) {
        if (to_string(op) == name) return op;
    }
    return std::nullopt;
}

std::optional<BinaryOp> comparison_op(TokenKind k) {
    switch (k) {
        case TokenKind::Assign: return BinaryOp::Eq;
        case TokenKind::NotEqual: return BinaryOp::Ne;
        case TokenKind::Less: return BinaryOp::Lt;
        case TokenKind::LessEqual: return BinaryOp::Le;
        case TokenKind::Greater: return BinaryOp::Gt;
        case TokenKind::GreaterEqual: return BinaryOp::Ge;
        default: return std::nullopt;
    }
}

struct SyntaxError {
    Diagnostic diag;
};

class ExprParser {
public:
    ExprParser(std::span<const Token> tokens, std::size_t start) : toks_(tokens), pos_(start) {}

    ExprParseResult run() {
        ExprParseResult result;
        try {
            result.expr = parse_implies();
        } catch (const SyntaxError& e) {
            result.errors.push_back(e.diag);
            result.expr = nullptr;
        }
        result.next = pos_;
        return result;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& take() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    [[noreturn]] void fail(const Token& at, const std::string& what) {
        std::string found = at.kind == TokenKind::End ? "end of input"
                            : at.kind == TokenKind::String ? "string"
                                                           : "'" + at.text + "'";
        throw SyntaxError{Diagnostic{Severity::Error, std::string(rules::kParseError),
                                     "expected " + what + ", found " + found, at.span}};
    }
    void expect(TokenKind k, const std::string& what) {
        if (peek().kind != k) fail(peek(), what);
        take();
    }

    struct DepthGuard {
        explicit DepthGuard(ExprParser& p) : p(p) {
            if (++p.depth_ > kMaxDepth) p.fail(p.peek(), "shallower nesting");
        }
        ~DepthGuard() { --p.depth_; }
        ExprParser& p;
    };

    static ExprPtr make(decltype(Expr::node) node, SourceSpan span) {
        auto e = std::make_shared<Expr>();
        e->node = std::move(node);
        e->span = std::move(span);
        return e;
    }

    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
        SourceSpan span = lhs->span.merge(rhs->span);
        return make(Binary{op, std::move(lhs), std::move(rhs)}, std::move(span));
    }

    ExprPtr parse_implies() {
        DepthGuard guard(*this);
        ExprPtr lhs = parse_or();
        if (peek().is_keyword("implies")) {
            take();
            ExprPtr rhs = parse_implies();  // right-associative
            return binary(BinaryOp::Implies, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (peek().is_keyword("or")) {
            take();
            lhs = binary(BinaryOp::Or, std::move(lhs), parse_and());
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_not();
        while (peek().is_keyword("and")) {
            take();
            lhs = binary(BinaryOp::And, std::move(lhs), parse_not());
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (peek().is_keyword("not")) {
            DepthGuard guard(*this);
            const SourceSpan start = take().span;
            ExprPtr operand = parse_not();
            SourceSpan span = start.merge(operand->span);
            return make(Unary{UnaryOp::Not, std::move(operand)}, std::move(span));
        }
        return parse_comparison();
    }

    ExprPtr parse_comparison() {
        ExprPtr lhs = parse_additive();
        if (auto op = comparison_op(peek().kind)) {
            take();
            ExprPtr rhs = parse_additive();
            if (comparison_op(peek().kind)) fail(peek(), "no further comparison (comparisons do not chain)");
            return binary(*op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            const BinaryOp op = take().kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
            lhs = binary(op, std::move(lhs), parse_multiplicative());
        }
        return lhs;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        while (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
            const BinaryOp op = take().kind == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div;
            lhs = binary(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (peek().kind == TokenKind::Minus) {
            DepthGuard guard(*this);
            const SourceSpan start = take().span;
            ExprPtr operand = parse_unary();
            SourceSpan span = start.merge(operand->span);
            return make(Unary{UnaryOp::Neg, std::move(operand)}, std::move(span));
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (peek().kind == TokenKind::Dot) {
                take();
                if (!peek().is_name()) fail(peek(), "a name after '.'");
                const Token& name = take();
                Navigation nav{e, name.text, false, {}};
                SourceSpan span = e->span.merge(name.span);
                if (peek().kind == TokenKind::LParen) {
                    take();
                    nav.is_call = true;
                    while (peek().kind != TokenKind::RParen) {
                        if (!peek().is_name()) fail(peek(), "an argument name or ')'");
                        nav.args.push_back(take().text);
                        if (peek().kind == TokenKind::Comma) take();
                        else if (peek().kind != TokenKind::RParen) fail(peek(), "',' or ')'");
                    }
                    span = span.merge(take().span);
                }
                e = make(std::move(nav), std::move(span));
            } else if (peek().kind == TokenKind::Arrow) {
                take();
                const Token& name = peek();
                auto op = name.is_name() ? collection_op(name.text) : std::nullopt;
                if (!op) fail(name, "size, isEmpty, notEmpty, forAll or exists after '->'");
                take();
                expect(TokenKind::LParen, "'('");
                CollectionCall call{e, *op, nullptr};
                if (*op == CollectionOp::ForAll || *op == CollectionOp::Exists) {
                    call.body = parse_implies();
                }
                if (peek().kind != TokenKind::RParen) fail(peek(), "')'");
                SourceSpan span = e->span.merge(take().span);
                e = make(std::move(call), std::move(span));
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Integer: {
                take();
                return make(IntLiteral{U256(t.text)}, t.span);
            }
            case TokenKind::Hex: {
                take();
                return make(IntLiteral{*u256_from_hex(t.text)}, t.span);
            }
            case TokenKind::String:
                take();
                return make(StringLiteral{t.text}, t.span);
            case TokenKind::Ident:
                take();
                return make(NameRef{t.text}, t.span);
            case TokenKind::LParen: {
                DepthGuard guard(*this);
                take();
                ExprPtr inner = parse_implies();
                if (peek().kind != TokenKind::RParen) fail(peek(), "')'");
                take();
                return inner;
            }
            case TokenKind::Keyword:
                if (t.text == "true" || t.text == "false") {
                    take();
                    return make(BoolLiteral{t.text == "true"}, t.span);
                }
                if (t.text == "self") {
                    take();
                    return make(SelfRef{}, t.span);
                }
                if (t.text == "it") {
                    take();
                    return make(IteratorRef{}, t.span);
                }
                break;
            default: break;
        }
        fail(t, "an expression");
    }

    std::span<const Token> toks_;
    std::size_t pos_;
    int depth_ = 0;
};

int precedence(const Expr& e) {
    if (const auto* b = std::get_if<Binary>(&e.node)) {
        switch (b->op) {
            case BinaryOp::Implies: return 1;
            case BinaryOp::Or: return 2;
            case BinaryOp::And: return 3;
            case BinaryOp::Eq: case BinaryOp::Ne: case BinaryOp::Lt:
            case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge: return 5;
            case BinaryOp::Add: case BinaryOp::Sub: return 6;
            case BinaryOp::Mul: case BinaryOp::Div: return 7;
        }
    }
    if (const auto* u = std::get_if<Unary>(&e.node)) return u->op == UnaryOp::Not ? 4 : 8;
    return 9;
}

void print_into(const Expr& e, std::string& out);

// Wraps compound operands in parentheses so the printed form never depends on
// associativity rules.
void print_operand(const Expr& e, int min_precedence, std::string& out) {
    if (precedence(e) < min_precedence || std::holds_alternative<Binary>(e.node)) {
        out += '(';
        print_into(e, out);
        out += ')';
    } else {
        print_into(e, out);
    }
}

void print_into(const Expr& e, std::string& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLiteral>) {
                if (n.value > std::numeric_limits<std::uint64_t>::max()) {
                    out += "0x" + u256_to_hex(n.value);
                } else {
                    out += n.value.str();
                }
            } else if constexpr (std::is_same_v<T, StringLiteral>) {
                out += '"';
                for (char c : n.value) {
                    if (c == '"' || c == '\\') out += '\\';
                    out += c;
                }
                out += '"';
            } else if constexpr (std::is_same_v<T, BoolLiteral>) {
                out += n.value ? "true" : "false";
            } else if constexpr (std::is_same_v<T, SelfRef>) {
                out += "self";
            } else if constexpr (std::is_same_v<T, IteratorRef>) {
                out += "it";
            } else if constexpr (std::is_same_v<T, NameRef>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, Navigation>) {
                print_operand(*n.source, 9, out);
                out += '.';
                out += n.name;
                if (n.is_call) {
                    out += '(';
                    for (std::size_t i = 0; i < n.args.size(); ++i) {
                        if (i) out += ", ";
                        out += n.args[i];
                    }
                    out += ')';
                }
            } else if constexpr (std::is_same_v<T, CollectionCall>) {
                print_operand(*n.source, 9, out);
                out += "->";
                out += to_string(n.op);
                out += '(';
                if (n.body) print_into(*n.body, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, Unary>) {
                if (n.op == UnaryOp::Not) {
                    out += "not ";
                    print_operand(*n.operand, 4, out);
                } else {
                    out += '-';
                    print_operand(*n.operand, 8, out);
                }
            } else if constexpr (std::is_same_v<T, Binary>) {
                print_operand(*n.lhs, 9, out);
                out += ' ';
                out += to_string(n.op);
                out += ' ';
                print_operand(*n.rhs, 9, out);
            }
        },
        e.node);
}

bool same_ptr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return same_structure(*a, *b);
}

}  // namespace

ExprParseResult parse_expr_tokens(std::span<const dsl::Token> tokens, std::size_t start) {
    return ExprParser(tokens, start).run();
}

ExprParseResult parse_expr(std::string_view text, const std::string& file) {
    auto lexed = dsl::tokenize(text, file);
    if (!lexed.ok()) {
        ExprParseResult r;
        r.errors = std::move(lexed.errors);
        return r;
    }
    auto result = parse_expr_tokens(lexed.tokens, 0);
    if (result.expr && lexed.tokens[result.next].kind != TokenKind::End) {
        const Token& t = lexed.tokens[result.next];
        result.errors.push_back(Diagnostic{Severity::Error, std::string(rules::kParseError),
                                           "unexpected '" + t.text + "' after expression", t.span});
        result.expr = nullptr;
    }
    return result;
}

std::string print_expr(const Expr& e) {
    std::string out;
    print_into(e, out);
    return out;
}

bool same_structure(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntLiteral>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, StringLiteral>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, BoolLiteral>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, SelfRef> || std::is_same_v<T, IteratorRef>) return true;
            else if constexpr (std::is_same_v<T, NameRef>) return x.name == y.name;
            else if constexpr (std::is_same_v<T, Navigation>)
                return x.name == y.name && x.is_call == y.is_call && x.args == y.args &&
                       same_ptr(x.source, y.source);
            else if constexpr (std::is_same_v<T, CollectionCall>)
                return x.op == y.op && same_ptr(x.source, y.source) && same_ptr(x.body, y.body);
            else if constexpr (std::is_same_v<T, Unary>)
                return x.op == y.op && same_ptr(x.operand, y.operand);
            else if constexpr (std::is_same_v<T, Binary>)
                return x.op == y.op && same_ptr(x.lhs, y.lhs) && same_ptr(x.rhs, y.rhs);
        },
        a.node);
}

}  // namespace bitml::constraints
