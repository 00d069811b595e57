#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bitml/diagnostic.hpp"

namespace bitml::dsl {

enum class TokenKind {
    Keyword,
    Ident,
    Integer,  // unsigned 64-bit decimal
    Hex,      // 0x-prefixed, up to 256 bits
    String,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Assign,  // =
    Colon,
    Semicolon,
    Comma,
    Dot,
    Arrow,  // ->
    NotEqual,  // <>
    Less,
    LessEqual,
    Greater,
    GreaterEqual,
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

std::string_view to_string(TokenKind k);

struct Token {
    TokenKind kind = TokenKind::End;
    // Keywords and identifiers: the spelling. Integers: decimal digits. Hex: lowercase
    // digits without prefix. Strings: the unescaped contents.
    std::string text;
    SourceSpan span;

    [[nodiscard]] bool is_keyword(std::string_view kw) const {
        return kind == TokenKind::Keyword && text == kw;
    }
    // Keywords double as names in navigation position (`it.tx()`, `self.tag(...)`).
    [[nodiscard]] bool is_name() const {
        return kind == TokenKind::Ident || kind == TokenKind::Keyword;
    }
};

struct LexResult {
    std::vector<Token> tokens;  // always terminated by an End token
    std::vector<Diagnostic> errors;

    [[nodiscard]] bool ok() const { return errors.empty(); }
};

[[nodiscard]] bool is_keyword(std::string_view word);

/// Splits `source` into tokens; `//` comments and whitespace are skipped. Illegal
/// characters are reported and skipped so lexing always reaches the end.
LexResult tokenize(std::string_view source, const std::string& file = "<input>");

}  // namespace bitml::dsl
