#include <gtest/gtest.h>

#include "bitml/dsl/ast.hpp"
#include "bitml/dsl/lexer.hpp"

using namespace bitml::dsl;

namespace {

std::vector<TokenKind> kinds(const LexResult& r) {
    std::vector<TokenKind> out;
    for (const auto& t : r.tokens) out.push_back(t.kind);
    return out;
}

}  // namespace

TEST(Lexer, MinimalElement) {
    const auto r = tokenize("transaction BondTx {}");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(kinds(r), (std::vector{TokenKind::Keyword, TokenKind::Ident, TokenKind::LBrace, TokenKind::RBrace,
                                     TokenKind::End}));
    EXPECT_EQ(r.tokens[0].text, "transaction");
    EXPECT_EQ(r.tokens[1].text, "BondTx");
}

TEST(Lexer, TagStatement) {
    const auto r = tokenize("tag Position = OnChain");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(kinds(r),
              (std::vector{TokenKind::Keyword, TokenKind::Ident, TokenKind::Assign, TokenKind::Ident, TokenKind::End}));
}

TEST(Lexer, DustLimitInteger) {
    const auto r = tokenize("attr value: SatoshiValue = 546");
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(r.tokens.size(), 7u);
    EXPECT_EQ(r.tokens[5].kind, TokenKind::Integer);
    EXPECT_EQ(r.tokens[5].text, "546");
}

TEST(Lexer, HexIsLowercasedWithoutPrefix) {
    const auto r = tokenize("0xABcd01");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.tokens[0].kind, TokenKind::Hex);
    EXPECT_EQ(r.tokens[0].text, "abcd01");
}

TEST(Lexer, HexWiderThan256BitsIsRejected) {
    const auto r = tokenize("0x1" + std::string(64, '0'));
    EXPECT_FALSE(r.ok());
}

TEST(Lexer, IntegerAbove64BitsIsRejected) {
    EXPECT_TRUE(tokenize("18446744073709551615").ok());
    EXPECT_FALSE(tokenize("18446744073709551616").ok());
}

TEST(Lexer, StringEscapes) {
    const auto r = tokenize(R"("a\"b\\c")");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.tokens[0].kind, TokenKind::String);
    EXPECT_EQ(r.tokens[0].text, "a\"b\\c");
}

TEST(Lexer, OnlyTwoEscapesExist) {
    EXPECT_FALSE(tokenize(R"("line\n")").ok());
}

TEST(Lexer, UnterminatedString) {
    const auto r = tokenize("tag Kind = \"Bond\ntransaction");
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.errors[0].rule_id, "BITML-201");
    EXPECT_EQ(r.errors[0].span.start_line, 1);
}

TEST(Lexer, CommentsAndWhitespaceAreSkipped) {
    const auto r = tokenize("// header\n  block // trailing\n B1");
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(r.tokens.size(), 3u);
    EXPECT_EQ(r.tokens[0].span.start_line, 2);
    EXPECT_EQ(r.tokens[0].span.start_col, 3);
    EXPECT_EQ(r.tokens[1].span.start_line, 3);
    EXPECT_EQ(r.tokens[1].span.start_col, 2);
}

TEST(Lexer, IllegalCharacterIsReportedAndSkipped) {
    const auto r = tokenize("seed S @ seed T", "f.bitml");
    ASSERT_EQ(r.errors.size(), 1u);
    EXPECT_EQ(r.errors[0].span.file, "f.bitml");
    EXPECT_EQ(r.errors[0].span.start_col, 8);
    EXPECT_EQ(kinds(r), (std::vector{TokenKind::Keyword, TokenKind::Ident, TokenKind::Keyword, TokenKind::Ident,
                                     TokenKind::End}));
}

TEST(Lexer, PunctuationAndOperators) {
    const auto r = tokenize("-> <> <= >= < > = . , ; : ( ) + - * /");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(kinds(r),
              (std::vector{TokenKind::Arrow, TokenKind::NotEqual, TokenKind::LessEqual, TokenKind::GreaterEqual,
                           TokenKind::Less, TokenKind::Greater, TokenKind::Assign, TokenKind::Dot, TokenKind::Comma,
                           TokenKind::Semicolon, TokenKind::Colon, TokenKind::LParen, TokenKind::RParen,
                           TokenKind::Plus, TokenKind::Minus, TokenKind::Star, TokenKind::Slash, TokenKind::End}));
}

TEST(Lexer, EveryElementKeywordIsAKeyword) {
    for (auto k : kAllElementKinds) {
        const auto r = tokenize(std::string(element_keyword(k)));
        ASSERT_TRUE(r.ok());
        EXPECT_EQ(r.tokens[0].kind, TokenKind::Keyword) << element_keyword(k);
    }
    EXPECT_FALSE(is_keyword("Transaction"));
    EXPECT_TRUE(is_keyword("spend"));
    EXPECT_TRUE(is_keyword("inv"));
}

TEST(Lexer, NonAsciiBytesAreErrors) {
    const auto r = tokenize("seed \xc3\xa9t\xff");
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.tokens.back().kind, TokenKind::End);
}
