#include "bitml/constraints/eval.hpp"

namespace bitml::constraints {

namespace {

void push(std::vector<Diagnostic>& out, Severity sev, std::string_view rule, std::string msg,
          const SourceSpan& span) {
    out.push_back(Diagnostic{sev, std::string(rule), std::move(msg), span});
}

void check_block_hash(const Model& model, const Element& block, std::vector<Diagnostic>& out) {
    const Element* header = nullptr;
    for (const Element* c : model.children_of(block)) {
        if (c->stereotype == "BlockHeader") {
            header = c;
            break;
        }
    }
    std::vector<const Attribute*> hashes = block.attributes_of("BlockHash");
    std::vector<const Attribute*> targets;
    if (header != nullptr) {
        for (const Attribute* a : header->attributes_of("BlockHash")) hashes.push_back(a);
        targets = header->attributes_of("DifficultyTarget");
    }
    if (hashes.empty() && targets.empty()) return;

    const Attribute* hash = hashes.empty() ? nullptr : hashes.front();
    const Attribute* target = targets.empty() ? nullptr : targets.front();
    const auto hash_value = hash && hash->value ? hash->value->as_u256() : std::nullopt;
    const auto target_value = target && target->value ? target->value->as_u256() : std::nullopt;
    if (!hash_value || !target_value) {
        const SourceSpan& at = hash ? hash->span : target->span;
        push(out, Severity::Lint, rules::kBlockHashAboveTarget,
             "block '" + block.id + "' hash check skipped: " +
                 (!hash_value ? "no BlockHash value" : "no DifficultyTarget value"),
             at);
        return;
    }
    if (*hash_value >= *target_value) {
        push(out, Severity::Error, rules::kBlockHashAboveTarget,
             "block '" + block.id + "' hash 0x" + u256_to_hex(*hash_value, 64) +
                 " is not below target 0x" + u256_to_hex(*target_value, 64),
             hash->span);
    }
}

void check_dust(const Element& output, std::vector<Diagnostic>& out) {
    for (const Attribute* a : output.attributes_of("SatoshiValue")) {
        if (!a->value) {
            push(out, Severity::Lint, rules::kDustOutput,
                 "dust check skipped: '" + output.id + "." + a->name + "' has no value", a->span);
            continue;
        }
        const auto v = a->value->as_u256();
        if (!v) {
            push(out, Severity::Error, rules::kDustOutput,
                 "SatoshiValue '" + output.id + "." + a->name + "' must be an integer", a->span);
        } else if (*v < kDustLimitSatoshis) {
            push(out, Severity::Error, rules::kDustOutput,
                 "output '" + output.id + "' pays " + v->str() + " satoshis, below the dust limit of " +
                     std::to_string(kDustLimitSatoshis),
                 a->span);
        }
    }
}

}  // namespace

std::vector<Diagnostic> run_builtin_value_constraints(const Model& model) {
    std::vector<Diagnostic> out;
    for (const auto& e : model.elements) {
        if (e.stereotype == "Block") check_block_hash(model, e, out);
        else if (e.stereotype == "TransactionOutput") check_dust(e, out);
    }
    sort_diagnostics(out);
    return out;
}

std::vector<Diagnostic> run_user_invariants(const Model& model, const std::vector<Invariant>& invariants,
                                            const ProfileRegistry& registry) {
    std::vector<Diagnostic> out;
    for (const auto& inv : invariants) {
        if (!inv.expr) continue;
        bool absent_reported = false;
        for (const auto& e : model.elements) {
            if (!registry.specializes(e.stereotype, inv.context_stereotype)) continue;
            const Evaluation r = evaluate(*inv.expr, e, model, registry);
            if (r.error) {
                push(out, Severity::Warning, rules::kInvariantEvalError,
                     "invariant '" + inv.name + "' could not be evaluated on '" + e.id + "': " + *r.error,
                     e.span);
                continue;
            }
            if (r.value.is_absent()) {
                if (!absent_reported) {
                    absent_reported = true;
                    std::string why = r.absent_reasons.empty() ? "a value is absent" : r.absent_reasons.front();
                    push(out, Severity::Warning, rules::kInvariantAbsent,
                         "invariant '" + inv.name + "' skipped on '" + e.id + "': " + why, inv.span);
                }
                continue;
            }
            const bool* b = r.value.as_bool();
            if (b == nullptr) {
                push(out, Severity::Warning, rules::kInvariantEvalError,
                     "invariant '" + inv.name + "' yields " + describe(r.value) + " on '" + e.id +
                         "', not a boolean",
                     e.span);
            } else if (!*b) {
                push(out, Severity::Error, rules::kInvariantViolated,
                     inv.name + " violated by «" + e.stereotype + "» '" + e.id + "'", e.span);
            }
        }
    }
    sort_diagnostics(out);
    return out;
}

}  // namespace bitml::constraints
