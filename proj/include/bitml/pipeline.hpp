#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bitml/analyzer/model.hpp"
#include "bitml/diagnostic.hpp"

namespace bitml {

struct CheckOptions {
    bool verify_crypto = false;
    // Sidecar invariants, already resolved.
    std::vector<Invariant> extra_invariants;
};

struct CheckResult {
    Model model;
    std::vector<Diagnostic> diagnostics;  // sorted
    bool syntax_ok = true;
};

/// parse -> resolve -> structural rules -> value constraints -> invariants -> crypto.
/// Stops after parsing when the source has syntax errors.
CheckResult check_source(std::string_view source, const std::string& file, const CheckOptions& opts = {});

/// Reads invariants from a constraints file; anything but `inv` statements is an error.
std::vector<Invariant> load_invariants(std::string_view source, const std::string& file,
                                       std::vector<Diagnostic>& diags);

}  // namespace bitml
