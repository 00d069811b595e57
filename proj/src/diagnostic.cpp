#include "bitml/diagnostic.hpp"

#include <algorithm>
#include <tuple>

namespace bitml {

SourceSpan SourceSpan::merge(const SourceSpan& other) const {
    SourceSpan out = *this;
    if (std::tie(other.start_line, other.start_col) < std::tie(start_line, start_col)) {
        out.start_line = other.start_line;
        out.start_col = other.start_col;
    }
    if (std::tie(other.end_line, other.end_col) > std::tie(end_line, end_col)) {
        out.end_line = other.end_line;
        out.end_col = other.end_col;
    }
    return out;
}

bool SourceSpan::contains(const SourceSpan& inner) const {
    return std::tie(start_line, start_col) <= std::tie(inner.start_line, inner.start_col) &&
           std::tie(inner.end_line, inner.end_col) <= std::tie(end_line, end_col);
}

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Lint: return "lint";
    }
    return "error";
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.span, a.rule_id, a.message) < std::tie(b.span, b.rule_id, b.message);
    });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace bitml
