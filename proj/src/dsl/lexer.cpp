#include "bitml/dsl/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <array>
#include <cstdint>
#include <cstdio>
#include <limits>

namespace bitml::dsl {

namespace {

constexpr std::array<std::string_view, 36> kKeywords = {
    "transactions", "network",   "node",          "block",           "blockheader",
    "transaction",  "output",    "input",         "coinbaseinput",   "lockingscript",
    "unlockingscript", "ecsignature", "mnemonic", "seed",            "privatekey",
    "publickey",    "address",   "tag",           "attr",            "op",
    "tx",           "spend",     "unlock",        "pbkdf2",          "hmac512",
    "hash160",      "inv",       "on",            "and",             "or",
    "not",          "implies",   "self",          "it",              "true",
    "false"};

constexpr std::size_t kMaxHexDigits = 64;

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }
bool is_hex_digit(unsigned char c) { return std::isxdigit(c) != 0; }

std::string describe_byte(unsigned char c) {
    if (c >= 0x20 && c < 0x7f) return std::string("'") + static_cast<char>(c) + "'";
    char buf[8];
    std::snprintf(buf, sizeof buf, "\\x%02x", c);
    return buf;
}

// Length of the UTF-8 sequence starting at s[i], or 0 if malformed.
std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) return 1;
    if ((c & 0xe0) == 0xc0) { len = 2; cp = c & 0x1f; }
    else if ((c & 0xf0) == 0xe0) { len = 3; cp = c & 0x0f; }
    else if ((c & 0xf8) == 0xf0) { len = 4; cp = c & 0x07; }
    else return 0;
    if (i + len > s.size()) return 0;
    for (std::size_t k = 1; k < len; ++k) {
        const auto cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xc0) != 0x80) return 0;
        cp = (cp << 6) | (cc & 0x3f);
    }
    // Reject overlong encodings, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xd800 && cp <= 0xdfff) || cp > 0x10ffff) {
        return 0;
    }
    return len;
}

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    LexResult run() {
        while (true) {
            skip_trivia();
            if (at_end()) break;
            lex_one();
        }
        Token end;
        end.kind = TokenKind::End;
        end.span = span_at(line_, col_, line_, col_);
        result_.tokens.push_back(std::move(end));
        return std::move(result_);
    }

private:
    [[nodiscard]] bool at_end() const { return pos_ >= src_.size(); }
    [[nodiscard]] unsigned char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[nodiscard]] SourceSpan span_at(int l0, int c0, int l1, int c1) const {
        return SourceSpan{file_, l0, c0, l1, c1};
    }

    void skip_trivia() {
        while (!at_end()) {
            const unsigned char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void error(const SourceSpan& span, std::string message) {
        result_.errors.push_back(
            Diagnostic{Severity::Error, std::string(rules::kLexError), std::move(message), span});
    }

    void emit(TokenKind kind, std::string text, int l0, int c0) {
        // The end column points at the last consumed character.
        const int end_col = std::max(c0, col_ - 1);
        const int end_line = (col_ == 1 && line_ > l0) ? line_ - 1 : line_;
        result_.tokens.push_back(Token{kind, std::move(text), span_at(l0, c0, end_line, end_col)});
    }

    void lex_one() {
        const int l0 = line_;
        const int c0 = col_;
        const unsigned char c = peek();

        if (is_ident_start(c)) {
            std::string word;
            while (!at_end() && is_ident_char(peek())) {
                word.push_back(static_cast<char>(peek()));
                advance();
            }
            const TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Ident;
            emit(kind, std::move(word), l0, c0);
            return;
        }
        if (std::isdigit(c)) {
            lex_number(l0, c0);
            return;
        }
        if (c == '"') {
            lex_string(l0, c0);
            return;
        }

        auto single = [&](TokenKind k) {
            std::string text(1, static_cast<char>(c));
            advance();
            emit(k, std::move(text), l0, c0);
        };
        auto pair = [&](TokenKind k, std::string text) {
            advance();
            advance();
            emit(k, std::move(text), l0, c0);
        };

        switch (c) {
            case '{': single(TokenKind::LBrace); return;
            case '}': single(TokenKind::RBrace); return;
            case '(': single(TokenKind::LParen); return;
            case ')': single(TokenKind::RParen); return;
            case '=': single(TokenKind::Assign); return;
            case ':': single(TokenKind::Colon); return;
            case ';': single(TokenKind::Semicolon); return;
            case ',': single(TokenKind::Comma); return;
            case '.': single(TokenKind::Dot); return;
            case '+': single(TokenKind::Plus); return;
            case '*': single(TokenKind::Star); return;
            case '/': single(TokenKind::Slash); return;
            case '-':
                if (peek(1) == '>') pair(TokenKind::Arrow, "->");
                else single(TokenKind::Minus);
                return;
            case '<':
                if (peek(1) == '>') pair(TokenKind::NotEqual, "<>");
                else if (peek(1) == '=') pair(TokenKind::LessEqual, "<=");
                else single(TokenKind::Less);
                return;
            case '>':
                if (peek(1) == '=') pair(TokenKind::GreaterEqual, ">=");
                else single(TokenKind::Greater);
                return;
            default: break;
        }

        advance();
        error(span_at(l0, c0, l0, c0), "illegal character " + describe_byte(c));
    }

    void lex_number(int l0, int c0) {
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance();
            advance();
            std::string digits;
            while (!at_end() && is_ident_char(peek())) {
                digits.push_back(static_cast<char>(std::tolower(peek())));
                advance();
            }
            const SourceSpan span = span_at(l0, c0, line_, col_ - 1);
            if (digits.empty()) {
                error(span, "hex literal has no digits");
            } else if (!std::all_of(digits.begin(), digits.end(),
                                    [](char d) { return is_hex_digit(static_cast<unsigned char>(d)); })) {
                error(span, "malformed hex literal '0x" + digits + "'");
            } else if (digits.size() > kMaxHexDigits) {
                error(span, "hex literal exceeds 256 bits");
            } else {
                emit(TokenKind::Hex, std::move(digits), l0, c0);
            }
            return;
        }

        std::string digits;
        bool trailing_garbage = false;
        while (!at_end() && is_ident_char(peek())) {
            if (!std::isdigit(peek())) trailing_garbage = true;
            digits.push_back(static_cast<char>(peek()));
            advance();
        }
        const SourceSpan span = span_at(l0, c0, line_, col_ - 1);
        if (trailing_garbage) {
            error(span, "malformed integer literal '" + digits + "'");
            return;
        }
        std::uint64_t value = 0;
        constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
        for (char d : digits) {
            const auto digit = static_cast<std::uint64_t>(d - '0');
            if (value > (kMax - digit) / 10) {
                error(span, "integer literal exceeds 64 bits");
                return;
            }
            value = value * 10 + digit;
        }
        emit(TokenKind::Integer, std::to_string(value), l0, c0);
    }

    void lex_string(int l0, int c0) {
        advance();  // opening quote
        std::string text;
        while (true) {
            if (at_end() || peek() == '\n') {
                error(span_at(l0, c0, line_, std::max(c0, col_ - 1)), "unterminated string literal");
                return;
            }
            const unsigned char c = peek();
            if (c == '"') {
                advance();
                emit(TokenKind::String, std::move(text), l0, c0);
                return;
            }
            if (c == '\\') {
                const int el = line_;
                const int ec = col_;
                advance();
                const unsigned char e = at_end() ? 0 : peek();
                if (e == '"' || e == '\\') {
                    text.push_back(static_cast<char>(e));
                    advance();
                } else {
                    error(span_at(el, ec, el, ec + 1),
                          "unsupported escape sequence" + (e ? " \\" + describe_byte(e) : std::string()));
                    if (!at_end() && e != '\n') advance();
                }
                continue;
            }
            const std::size_t len = utf8_sequence_length(src_, pos_);
            if (len == 0) {
                error(span_at(line_, col_, line_, col_), "invalid UTF-8 byte " + describe_byte(c));
                advance();
                continue;
            }
            for (std::size_t k = 0; k < len; ++k) {
                text.push_back(src_[pos_]);
                advance();
            }
        }
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    LexResult result_;
};

}  // namespace

std::string_view to_string(TokenKind k) {
    switch (k) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Ident: return "identifier";
        case TokenKind::Integer: return "integer";
        case TokenKind::Hex: return "hex literal";
        case TokenKind::String: return "string";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Assign: return "'='";
        case TokenKind::Colon: return "':'";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Comma: return "','";
        case TokenKind::Dot: return "'.'";
        case TokenKind::Arrow: return "'->'";
        case TokenKind::NotEqual: return "'<>'";
        case TokenKind::Less: return "'<'";
        case TokenKind::LessEqual: return "'<='";
        case TokenKind::Greater: return "'>'";
        case TokenKind::GreaterEqual: return "'>='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Slash: return "'/'";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

bool is_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexResult tokenize(std::string_view source, const std::string& file) {
    return Lexer(source, file).run();
}

}  // namespace bitml::dsl
