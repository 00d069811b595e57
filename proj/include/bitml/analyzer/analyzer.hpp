#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bitml/analyzer/model.hpp"
#include "bitml/diagnostic.hpp"
#include "bitml/dsl/ast.hpp"
#include "bitml/profile.hpp"

namespace bitml {

struct Resolution {
    Model model;
    std::vector<Diagnostic> diagnostics;
};

/// Binds every name in `ast` against the profile. Elements, members and connectors
/// that fail to resolve are diagnosed and left out of the model.
Resolution resolve(const dsl::AstModel& ast, const ProfileRegistry& registry);

/// Resolves an invariant context ("transaction", "input", "Seed", ...) to the class
/// stereotype it binds. `input` means AbstractTransactionInput.
std::optional<std::string> resolve_invariant_context(std::string_view context,
                                                     const ProfileRegistry& registry);

/// Builds a model-level invariant from its AST, or diagnoses an unknown context.
std::optional<Invariant> resolve_invariant(const dsl::AstInvariant& inv,
                                           const ProfileRegistry& registry,
                                           std::vector<Diagnostic>& diags);

/// Metamodel-level rules (composition multiplicities, node roles, connector
/// endpoints, nonce widths, coinbase placement, diagram legality). Sorted output.
std::vector<Diagnostic> check_structure(const Model& model, const ProfileRegistry& registry);

/// "BitcoinCore", "LightweightWallet" or "Custom({Role, ...})" for a BitcoinNode.
std::string classify_node(const Element& node);

/// Diagnostic rule id for endpoint violations of a connector kind (BITML-006..010).
std::string_view endpoint_rule(ConnectorKind kind);

}  // namespace bitml
