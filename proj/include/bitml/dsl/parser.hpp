#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bitml/dsl/ast.hpp"
#include "bitml/dsl/lexer.hpp"

namespace bitml::dsl {

struct ParseResult {
    AstModel model;
    std::vector<Diagnostic> errors;  // lexical and syntactic

    [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Parses a token stream. Recovers at element and statement boundaries so one run
/// reports every independent syntax error.
ParseResult parse(std::span<const Token> tokens);

/// tokenize + parse. Lexical errors are included and the parse still runs over the
/// tokens that were produced.
ParseResult parse_source(std::string_view source, const std::string& file = "<input>");

/// Canonical formatter. parse(print(m)) is structurally equal to m.
std::string print_model(const AstModel& model);

}  // namespace bitml::dsl
