#pragma once

// Hand-rolled random generators for property tests. Every generator is a pure
// function of the engine state, so a failing seed reproduces exactly.

#include <random>
#include <string>
#include <vector>

#include "bitml/constraints/expr.hpp"
#include "bitml/dsl/ast.hpp"
#include "bitml/dsl/lexer.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string gen_ident(Rng& rng) {
    static const char* heads[] = {"Bond", "Refund", "Settle", "Tx", "Out", "In", "Lock", "Key", "Node", "a", "Z"};
    std::string s;
    do {
        s = heads[pick(rng, std::size(heads))];
        if (coin(rng, 0.7)) s += std::to_string(pick(rng, 1000));
        if (coin(rng, 0.2)) s += "_x";
    } while (bitml::dsl::is_keyword(s) || s == "self" || s == "it");
    return s;
}

inline std::string gen_string(Rng& rng) {
    static const char alphabet[] = "abc XYZ019\"\\-_.:";
    std::string s;
    const std::size_t n = pick(rng, 10);
    for (std::size_t i = 0; i < n; ++i) s += alphabet[pick(rng, sizeof alphabet - 1)];
    return s;
}

inline std::string gen_hex_digits(Rng& rng, std::size_t max_len = 64) {
    static const char digits[] = "0123456789abcdef";
    std::string s;
    const std::size_t n = 1 + pick(rng, max_len);
    for (std::size_t i = 0; i < n; ++i) s += digits[pick(rng, 16)];
    return s;
}

inline bitml::dsl::Literal gen_literal(Rng& rng) {
    using K = bitml::dsl::Literal::Kind;
    switch (pick(rng, 5)) {
        case 0: return {K::Integer, std::to_string(std::uniform_int_distribution<std::uint64_t>()(rng) >> pick(rng, 64))};
        case 1: return {K::Hex, gen_hex_digits(rng)};
        case 2: return {K::String, gen_string(rng)};
        case 3: return {K::Ident, gen_ident(rng)};
        default: return {K::Boolean, coin(rng) ? "true" : "false"};
    }
}

inline bitml::dsl::AstElement gen_element(Rng& rng, int depth) {
    using namespace bitml::dsl;
    AstElement e;
    e.kind = kAllElementKinds[pick(rng, std::size(kAllElementKinds))];
    e.name = gen_ident(rng);
    if (coin(rng, 0.3)) return e;
    for (std::size_t i = pick(rng, 3); i > 0; --i) e.tags.push_back({gen_ident(rng), gen_literal(rng), {}});
    for (std::size_t i = pick(rng, 3); i > 0; --i) {
        AstAttribute a{gen_ident(rng), gen_ident(rng), std::nullopt, {}};
        if (coin(rng)) a.value = gen_literal(rng);
        e.attrs.push_back(std::move(a));
    }
    for (std::size_t i = pick(rng, 2); i > 0; --i) e.ops.push_back({gen_ident(rng), gen_ident(rng), {}});
    for (std::size_t i = pick(rng, 2); i > 0; --i) e.tx_refs.push_back({gen_ident(rng), {}});
    if (depth < 2) {
        for (std::size_t i = pick(rng, 3); i > 0; --i) e.children.push_back(gen_element(rng, depth + 1));
    }
    return e;
}

inline bitml::dsl::AstPath gen_path(Rng& rng) {
    bitml::dsl::AstPath p;
    p.segments.push_back(gen_ident(rng));
    if (coin(rng)) p.segments.push_back(gen_ident(rng));
    return p;
}

inline bitml::constraints::ExprPtr gen_expr(Rng& rng, int depth);

inline bitml::dsl::AstModel gen_ast_model(Rng& rng) {
    using namespace bitml::dsl;
    AstModel m;
    for (std::size_t i = pick(rng, 3); i > 0; --i) {
        AstDiagram d;
        d.kind = coin(rng) ? DiagramKind::Transactions : DiagramKind::Network;
        d.name = gen_ident(rng);
        for (std::size_t j = pick(rng, 5); j > 0; --j) d.elements.push_back(gen_element(rng, 0));
        for (std::size_t j = pick(rng, 4); j > 0; --j) {
            AstConnector c;
            c.kind = static_cast<bitml::ConnectorKind>(pick(rng, 5));
            c.source = gen_path(rng);
            c.target = gen_path(rng);
            d.connectors.push_back(std::move(c));
        }
        m.diagrams.push_back(std::move(d));
    }
    for (std::size_t i = pick(rng, 3); i > 0; --i) {
        AstInvariant inv;
        inv.name = gen_ident(rng);
        inv.context = coin(rng) ? "transaction" : gen_ident(rng);
        inv.expr = gen_expr(rng, 0);
        m.user_invariants.push_back(std::move(inv));
    }
    return m;
}

// Expressions ---------------------------------------------------------------

inline bitml::constraints::ExprPtr wrap(bitml::constraints::Expr e) {
    return std::make_shared<const bitml::constraints::Expr>(std::move(e));
}

inline bitml::constraints::ExprPtr gen_expr(Rng& rng, int depth) {
    using namespace bitml::constraints;
    const bool leaf = depth >= 4 || coin(rng, 0.3);
    if (leaf) {
        switch (pick(rng, 6)) {
            case 0: {
                bitml::U256 v = std::uniform_int_distribution<std::uint64_t>()(rng);
                if (coin(rng, 0.2)) v = v * v * v;
                return wrap({IntLiteral{v}, {}});
            }
            case 1: return wrap({StringLiteral{gen_string(rng)}, {}});
            case 2: return wrap({BoolLiteral{coin(rng)}, {}});
            case 3: return wrap({SelfRef{}, {}});
            case 4: return wrap({IteratorRef{}, {}});
            default: return wrap({NameRef{gen_ident(rng)}, {}});
        }
    }
    switch (pick(rng, 5)) {
        case 0: {
            Navigation n;
            n.source = gen_expr(rng, depth + 1);
            n.name = coin(rng, 0.2) ? "tx" : gen_ident(rng);
            n.is_call = coin(rng);
            if (n.is_call) {
                for (std::size_t i = pick(rng, 3); i > 0; --i) n.args.push_back(gen_ident(rng));
            }
            return wrap({std::move(n), {}});
        }
        case 1: {
            CollectionCall c;
            c.source = gen_expr(rng, depth + 1);
            c.op = static_cast<CollectionOp>(pick(rng, 5));
            if (c.op == CollectionOp::ForAll || c.op == CollectionOp::Exists) c.body = gen_expr(rng, depth + 1);
            return wrap({std::move(c), {}});
        }
        case 2: return wrap({Unary{coin(rng) ? UnaryOp::Not : UnaryOp::Neg, gen_expr(rng, depth + 1)}, {}});
        default:
            return wrap({Binary{static_cast<BinaryOp>(pick(rng, 13)), gen_expr(rng, depth + 1), gen_expr(rng, depth + 1)},
                         {}});
    }
}

}  // namespace testsupport
