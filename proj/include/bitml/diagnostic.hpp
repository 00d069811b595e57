#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace bitml {

// 1-based, byte columns. end is inclusive of the last character.
struct SourceSpan {
    std::string file;
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
    friend auto operator<=>(const SourceSpan&, const SourceSpan&) = default;

    // Smallest span covering both.
    [[nodiscard]] SourceSpan merge(const SourceSpan& other) const;
    [[nodiscard]] bool contains(const SourceSpan& inner) const;
};

enum class Severity { Error, Warning, Lint };

std::string_view to_string(Severity s);

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string rule_id;  // "BITML-NNN"
    std::string message;
    SourceSpan span;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Orders by (file, span, rule id, message) so reports are byte-stable.
void sort_diagnostics(std::vector<Diagnostic>& diags);

[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diags);

namespace rules {
// Structural rules.
inline constexpr std::string_view kTransactionWithoutInput = "BITML-001";
inline constexpr std::string_view kEmptyBlock = "BITML-002";
inline constexpr std::string_view kPreviousBlockHashCount = "BITML-003";
inline constexpr std::string_view kStratumRoleConflict = "BITML-004";
inline constexpr std::string_view kUnnamedNodeType = "BITML-005";
inline constexpr std::string_view kSpendEndpoints = "BITML-006";
inline constexpr std::string_view kUnlockEndpoints = "BITML-007";
inline constexpr std::string_view kPbkdf2Endpoints = "BITML-008";
inline constexpr std::string_view kHmacEndpoints = "BITML-009";
inline constexpr std::string_view kHash160Endpoints = "BITML-010";
inline constexpr std::string_view kBlockHashAboveTarget = "BITML-011";
inline constexpr std::string_view kDustOutput = "BITML-012";
inline constexpr std::string_view kNonceWidth = "BITML-013";
inline constexpr std::string_view kInputSpentTwice = "BITML-014";
inline constexpr std::string_view kCoinbasePlacement = "BITML-015";
inline constexpr std::string_view kPooledProtocol = "BITML-016";
inline constexpr std::string_view kDiagramKind = "BITML-017";

// Crypto verification.
inline constexpr std::string_view kPbkdf2Mismatch = "BITML-020";
inline constexpr std::string_view kHmacMismatch = "BITML-021";
inline constexpr std::string_view kHash160Mismatch = "BITML-022";
inline constexpr std::string_view kBadKeyMaterial = "BITML-023";
inline constexpr std::string_view kHardenedPublicDerivation = "BITML-024";
inline constexpr std::string_view kCryptoSkipped = "BITML-025";
inline constexpr std::string_view kMnemonicUnvalidated = "BITML-026";
inline constexpr std::string_view kHeaderProofOfWork = "BITML-027";

// User invariants.
inline constexpr std::string_view kInvariantViolated = "BITML-030";
inline constexpr std::string_view kInvariantAbsent = "BITML-031";
inline constexpr std::string_view kInvariantEvalError = "BITML-032";

// Resolution.
inline constexpr std::string_view kDuplicateName = "BITML-101";
inline constexpr std::string_view kUnresolvedReference = "BITML-102";
inline constexpr std::string_view kUnknownMemberStereotype = "BITML-103";
inline constexpr std::string_view kBadTagValue = "BITML-104";
inline constexpr std::string_view kTagNotApplicable = "BITML-105";
inline constexpr std::string_view kIllegalNesting = "BITML-106";
inline constexpr std::string_view kUnknownContext = "BITML-107";

// Syntax.
inline constexpr std::string_view kLexError = "BITML-201";
inline constexpr std::string_view kParseError = "BITML-202";
}  // namespace rules

}  // namespace bitml
