#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bitml/analyzer/model.hpp"
#include "bitml/constraints/expr.hpp"
#include "bitml/profile.hpp"
#include "bitml/uint256.hpp"

namespace bitml::constraints {

struct Absent {
    friend bool operator==(const Absent&, const Absent&) = default;
};

struct ElementRef {
    const Element* element = nullptr;
    friend bool operator==(const ElementRef& a, const ElementRef& b) {
        return a.element == b.element || (a.element && b.element && a.element->id == b.element->id);
    }
};

struct Value;
using Collection = std::vector<Value>;

struct Value {
    std::variant<Absent, U256, bool, std::string, EnumValue, ElementRef, Collection> data;

    Value() = default;
    template <typename T>
    Value(T v) : data(std::move(v)) {}  // NOLINT: implicit by design of the variant

    [[nodiscard]] bool is_absent() const { return std::holds_alternative<Absent>(data); }
    [[nodiscard]] const bool* as_bool() const { return std::get_if<bool>(&data); }
    [[nodiscard]] const U256* as_int() const { return std::get_if<U256>(&data); }

    friend bool operator==(const Value&, const Value&) = default;
};

std::string describe(const Value& v);

struct Evaluation {
    Value value;
    // Set when evaluation failed (type mismatch, division by zero, ...).
    std::optional<std::string> error;
    // Why an absent value was produced, first occurrence first.
    std::vector<std::string> absent_reasons;
};

/// Evaluates `expr` with `self` bound to `context`. Never mutates the model.
Evaluation evaluate(const Expr& expr, const Element& context, const Model& model,
                    const ProfileRegistry& registry = bitml_profile());

/// Convenience: the value only (Absent on evaluation error).
Value eval(const Expr& expr, const Element& context, const Model& model);

/// Built-in value-level constraints: block hash below target (BITML-011) and the
/// 546-satoshi dust limit (BITML-012). Skipped with a lint when values are missing.
std::vector<Diagnostic> run_builtin_value_constraints(const Model& model);

/// Evaluates each invariant on every element whose stereotype specializes its
/// context. False yields an error; absent values and evaluation failures warn.
std::vector<Diagnostic> run_user_invariants(const Model& model,
                                            const std::vector<Invariant>& invariants,
                                            const ProfileRegistry& registry = bitml_profile());

inline constexpr std::uint64_t kDustLimitSatoshis = 546;

}  // namespace bitml::constraints
