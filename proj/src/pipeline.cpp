#include "bitml/pipeline.hpp"

#include <algorithm>

#include "bitml/analyzer/analyzer.hpp"
#include "bitml/constraints/eval.hpp"
#include "bitml/crypto/verify.hpp"
#include "bitml/dsl/parser.hpp"

namespace bitml {

namespace {

void append(std::vector<Diagnostic>& to, std::vector<Diagnostic> from) {
    to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

}  // namespace

CheckResult check_source(std::string_view source, const std::string& file, const CheckOptions& opts) {
    CheckResult out;
    const auto& reg = bitml_profile();
    dsl::ParseResult parsed = dsl::parse_source(source, file);
    if (!parsed.ok()) {
        out.syntax_ok = false;
        out.diagnostics = std::move(parsed.errors);
        return out;
    }
    Resolution res = resolve(parsed.model, reg);
    out.model = std::move(res.model);
    out.diagnostics = std::move(res.diagnostics);
    append(out.diagnostics, check_structure(out.model, reg));
    append(out.diagnostics, constraints::run_builtin_value_constraints(out.model));
    std::vector<Invariant> invariants = out.model.invariants;
    invariants.insert(invariants.end(), opts.extra_invariants.begin(), opts.extra_invariants.end());
    append(out.diagnostics, constraints::run_user_invariants(out.model, invariants, reg));
    if (opts.verify_crypto) append(out.diagnostics, crypto::verify_crypto_connectors(out.model));
    sort_diagnostics(out.diagnostics);
    return out;
}

std::vector<Invariant> load_invariants(std::string_view source, const std::string& file,
                                       std::vector<Diagnostic>& diags) {
    dsl::ParseResult parsed = dsl::parse_source(source, file);
    append(diags, std::move(parsed.errors));
    for (const auto& d : parsed.model.diagrams) {
        diags.push_back(Diagnostic{Severity::Error, std::string(rules::kParseError),
                                   "constraints file may only contain invariants, found diagram '" + d.name + "'",
                                   d.span});
    }
    std::vector<Invariant> out;
    for (const auto& inv : parsed.model.user_invariants) {
        if (auto r = resolve_invariant(inv, bitml_profile(), diags)) out.push_back(std::move(*r));
    }
    sort_diagnostics(diags);
    return out;
}

}  // namespace bitml
