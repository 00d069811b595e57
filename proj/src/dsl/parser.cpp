#include "bitml/dsl/parser.hpp"

#include <algorithm>

namespace bitml::dsl {

namespace {

constexpr int kMaxElementDepth = 32;

// Thrown after a statement-level error has been recorded; the enclosing loop
// synchronizes and continues.
struct Abort {};

bool is_member_start(const Token& t) {
    if (t.kind != TokenKind::Keyword) return false;
    return t.text == "tag" || t.text == "attr" || t.text == "op" || t.text == "tx" ||
           element_kind_from_keyword(t.text).has_value();
}

bool is_diagram_statement_start(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           (element_kind_from_keyword(t.text).has_value() || connector_from_keyword(t.text).has_value());
}

bool is_top_level_start(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           (diagram_kind_from_keyword(t.text).has_value() || t.text == "inv");
}

std::string describe(const Token& t) {
    switch (t.kind) {
        case TokenKind::End: return "end of input";
        case TokenKind::String: return "string \"" + t.text + "\"";
        case TokenKind::Hex: return "'0x" + t.text + "'";
        default: return "'" + t.text + "'";
    }
}

class Parser {
public:
    explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

    ParseResult run() {
        ParseResult result;
        if (toks_.empty()) return result;
        while (peek().kind != TokenKind::End) {
            const Token& t = peek();
            if (t.kind == TokenKind::Keyword && diagram_kind_from_keyword(t.text)) {
                if (auto d = parse_diagram()) result.model.diagrams.push_back(std::move(*d));
            } else if (t.is_keyword("inv")) {
                try {
                    result.model.user_invariants.push_back(parse_invariant());
                } catch (const Abort&) {
                    sync_invariant();
                }
            } else {
                record(t.span, "expected 'transactions', 'network' or 'inv', found " + describe(t));
                take();
                skip_to_top_level();
            }
        }
        result.errors = std::move(errors_);
        return result;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& take() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }

    void record(const SourceSpan& span, std::string message) {
        errors_.push_back(
            Diagnostic{Severity::Error, std::string(rules::kParseError), std::move(message), span});
    }

    [[noreturn]] void fail(const SourceSpan& span, std::string message) {
        record(span, std::move(message));
        throw Abort{};
    }
    [[noreturn]] void fail_expected(const std::string& what) {
        fail(peek().span, "expected " + what + ", found " + describe(peek()));
    }

    const Token& expect(TokenKind k, const std::string& what) {
        if (peek().kind != k) fail_expected(what);
        return take();
    }

    // Reports a missing closing brace once per input; later unclosed scopes are
    // consequences of the same truncation.
    void report_unclosed(const std::string& what, const SourceSpan& opened) {
        if (eof_reported_) return;
        eof_reported_ = true;
        record(peek().span, "expected '}' to close " + what + " opened at line " +
                                std::to_string(opened.start_line) + ", found end of input");
    }

    void skip_balanced_braces() {
        int depth = 0;
        do {
            const Token& t = take();
            if (t.kind == TokenKind::LBrace) ++depth;
            else if (t.kind == TokenKind::RBrace) --depth;
            else if (t.kind == TokenKind::End) return;
        } while (depth > 0);
    }

    void skip_to_top_level() {
        while (peek().kind != TokenKind::End && !is_top_level_start(peek())) {
            if (peek().kind == TokenKind::LBrace) skip_balanced_braces();
            else take();
        }
    }

    // Skips to the next token satisfying `stop`, or a '}' closing the current scope.
    template <typename Pred>
    void sync_in_scope(Pred stop) {
        while (true) {
            const Token& t = peek();
            if (t.kind == TokenKind::End || t.kind == TokenKind::RBrace || stop(t) ||
                is_top_level_start(t)) {
                return;
            }
            if (t.kind == TokenKind::LBrace) skip_balanced_braces();
            else take();
        }
    }

    void sync_invariant() {
        while (peek().kind != TokenKind::End && !is_top_level_start(peek())) {
            if (take().kind == TokenKind::Semicolon) return;
        }
    }

    std::optional<AstDiagram> parse_diagram() {
        AstDiagram diagram;
        const Token& kw = take();
        diagram.kind = *diagram_kind_from_keyword(kw.text);
        diagram.span = kw.span;
        if (peek().kind != TokenKind::Ident) {
            record(peek().span, "expected diagram name, found " + describe(peek()));
            skip_to_top_level();
            return std::nullopt;
        }
        diagram.name = take().text;
        if (peek().kind != TokenKind::LBrace) {
            record(peek().span, "expected '{' after diagram name, found " + describe(peek()));
            skip_to_top_level();
            return std::nullopt;
        }
        take();

        while (true) {
            const Token& t = peek();
            if (t.kind == TokenKind::RBrace) {
                diagram.span = diagram.span.merge(take().span);
                break;
            }
            if (t.kind == TokenKind::End) {
                report_unclosed("diagram '" + diagram.name + "'", diagram.span);
                diagram.span = diagram.span.merge(t.span);
                break;
            }
            if (is_top_level_start(t)) {
                record(t.span, "expected '}' to close diagram '" + diagram.name + "' before " +
                                   describe(t));
                break;
            }
            try {
                if (t.kind == TokenKind::Keyword && element_kind_from_keyword(t.text)) {
                    diagram.elements.push_back(parse_element(0));
                } else if (t.kind == TokenKind::Keyword && connector_from_keyword(t.text)) {
                    diagram.connectors.push_back(parse_connector());
                } else {
                    fail_expected("an element, a connector or '}'");
                }
            } catch (const Abort&) {
                if (peek().kind == TokenKind::LBrace) {
                    skip_balanced_braces();
                } else if (peek().kind != TokenKind::End && !is_diagram_statement_start(peek()) &&
                           peek().kind != TokenKind::RBrace && !is_top_level_start(peek())) {
                    take();
                }
                sync_in_scope(is_diagram_statement_start);
            }
        }
        return diagram;
    }

    Literal parse_literal() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Integer: take(); return {Literal::Kind::Integer, t.text};
            case TokenKind::Hex: take(); return {Literal::Kind::Hex, t.text};
            case TokenKind::String: take(); return {Literal::Kind::String, t.text};
            case TokenKind::Ident: take(); return {Literal::Kind::Ident, t.text};
            case TokenKind::Keyword:
                if (t.text == "true" || t.text == "false") {
                    take();
                    return {Literal::Kind::Boolean, t.text};
                }
                break;
            default: break;
        }
        fail_expected("a literal");
    }

    AstElement parse_element(int depth) {
        AstElement element;
        const Token& kw = take();
        element.kind = *element_kind_from_keyword(kw.text);
        element.span = kw.span;
        if (depth >= kMaxElementDepth) fail(kw.span, "elements nested too deeply");
        const Token& name = expect(TokenKind::Ident, "element name");
        element.name = name.text;
        element.span = element.span.merge(name.span);
        if (peek().kind != TokenKind::LBrace) return element;
        take();

        while (true) {
            const Token& t = peek();
            if (t.kind == TokenKind::RBrace) {
                element.span = element.span.merge(take().span);
                return element;
            }
            if (t.kind == TokenKind::End) {
                report_unclosed(std::string(element_keyword(element.kind)) + " '" + element.name + "'",
                                element.span);
                return element;
            }
            if (is_top_level_start(t)) {
                fail(t.span, "expected '}' to close " + std::string(element_keyword(element.kind)) +
                                 " '" + element.name + "' before " + describe(t));
            }
            try {
                parse_member(element, depth);
            } catch (const Abort&) {
                if (peek().kind == TokenKind::LBrace) {
                    skip_balanced_braces();
                } else if (peek().kind != TokenKind::End && !is_member_start(peek()) &&
                           peek().kind != TokenKind::RBrace && !is_top_level_start(peek())) {
                    take();
                }
                sync_in_scope(is_member_start);
            }
        }
    }

    void parse_member(AstElement& element, int depth) {
        const Token& t = peek();
        if (t.is_keyword("tag")) {
            const SourceSpan start = take().span;
            AstTag tag;
            tag.name = expect(TokenKind::Ident, "tag name").text;
            expect(TokenKind::Assign, "'='");
            const SourceSpan value_span = peek().span;
            tag.value = parse_literal();
            tag.span = start.merge(value_span);
            element.tags.push_back(std::move(tag));
        } else if (t.is_keyword("attr")) {
            const SourceSpan start = take().span;
            AstAttribute attr;
            attr.name = expect(TokenKind::Ident, "attribute name").text;
            expect(TokenKind::Colon, "':'");
            const Token& st = expect(TokenKind::Ident, "attribute stereotype");
            attr.stereotype = st.text;
            attr.span = start.merge(st.span);
            if (peek().kind == TokenKind::Assign) {
                take();
                const SourceSpan value_span = peek().span;
                attr.value = parse_literal();
                attr.span = attr.span.merge(value_span);
            }
            element.attrs.push_back(std::move(attr));
        } else if (t.is_keyword("op")) {
            const SourceSpan start = take().span;
            AstOperation op;
            op.name = expect(TokenKind::Ident, "operation name").text;
            expect(TokenKind::Colon, "':'");
            const Token& st = expect(TokenKind::Ident, "operation stereotype");
            op.stereotype = st.text;
            op.span = start.merge(st.span);
            element.ops.push_back(std::move(op));
        } else if (t.is_keyword("tx")) {
            const SourceSpan start = take().span;
            const Token& name = expect(TokenKind::Ident, "transaction name");
            element.tx_refs.push_back(AstTxRef{name.text, start.merge(name.span)});
        } else if (t.kind == TokenKind::Keyword && element_kind_from_keyword(t.text)) {
            element.children.push_back(parse_element(depth + 1));
        } else if (t.kind == TokenKind::Keyword && connector_from_keyword(t.text)) {
            fail(t.span, "connectors must appear at diagram scope, not inside " +
                             std::string(element_keyword(element.kind)) + " '" + element.name + "'");
        } else {
            fail_expected("'tag', 'attr', 'op', 'tx', a nested element or '}'");
        }
    }

    AstPath parse_path(const std::string& what, const Token& after) {
        AstPath path;
        if (peek().kind != TokenKind::Ident) {
            // Point just past the preceding token so a truncated line reports at its end.
            SourceSpan at = after.span;
            at.start_line = at.end_line;
            at.start_col = at.end_col + 1;
            at.end_col = at.start_col;
            fail(at, "expected " + what + " path, found " + describe(peek()));
        }
        const Token& first = take();
        path.segments.push_back(first.text);
        path.span = first.span;
        if (peek().kind == TokenKind::Dot) {
            const Token& dot = take();
            if (peek().kind != TokenKind::Ident) {
                fail(peek().span, "expected member name after '.', found " + describe(peek()));
            }
            (void)dot;
            const Token& second = take();
            path.segments.push_back(second.text);
            path.span = path.span.merge(second.span);
            if (peek().kind == TokenKind::Dot) {
                fail(peek().span, "connector paths have at most two segments");
            }
        }
        return path;
    }

    AstConnector parse_connector() {
        AstConnector conn;
        const Token& kw = take();
        conn.kind = *connector_from_keyword(kw.text);
        conn.source = parse_path("source", kw);
        const Token& arrow = expect(TokenKind::Arrow, "'->'");
        conn.target = parse_path("target", arrow);
        conn.span = kw.span.merge(conn.target.span);
        return conn;
    }

    AstInvariant parse_invariant() {
        AstInvariant inv;
        const Token& kw = take();
        inv.name = expect(TokenKind::Ident, "invariant name").text;
        if (!peek().is_keyword("on")) fail_expected("'on'");
        take();
        const Token& ctx = peek();
        if (ctx.kind == TokenKind::Ident ||
            (ctx.kind == TokenKind::Keyword && element_kind_from_keyword(ctx.text))) {
            inv.context = take().text;
        } else {
            fail_expected("a context stereotype or element keyword");
        }
        expect(TokenKind::Colon, "':'");
        auto expr = constraints::parse_expr_tokens(toks_, pos_);
        if (!expr.expr) {
            for (auto& e : expr.errors) errors_.push_back(std::move(e));
            pos_ = expr.next;
            throw Abort{};
        }
        pos_ = expr.next;
        inv.expr = std::move(expr.expr);
        const Token& semi = expect(TokenKind::Semicolon, "';' after invariant expression");
        inv.span = kw.span.merge(semi.span);
        return inv;
    }

    std::span<const Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> errors_;
    bool eof_reported_ = false;
};

void indent(std::string& out, int level) { out.append(static_cast<std::size_t>(level) * 2, ' '); }

void print_element(const AstElement& e, int level, std::string& out) {
    indent(out, level);
    out += element_keyword(e.kind);
    out += ' ';
    out += e.name;
    const bool empty = e.tags.empty() && e.attrs.empty() && e.ops.empty() && e.tx_refs.empty() &&
                       e.children.empty();
    if (empty) {
        out += '\n';
        return;
    }
    out += " {\n";
    for (const auto& t : e.tags) {
        indent(out, level + 1);
        out += "tag " + t.name + " = " + t.value.to_source() + "\n";
    }
    for (const auto& a : e.attrs) {
        indent(out, level + 1);
        out += "attr " + a.name + ": " + a.stereotype;
        if (a.value) out += " = " + a.value->to_source();
        out += '\n';
    }
    for (const auto& o : e.ops) {
        indent(out, level + 1);
        out += "op " + o.name + ": " + o.stereotype + "\n";
    }
    for (const auto& r : e.tx_refs) {
        indent(out, level + 1);
        out += "tx " + r.name + "\n";
    }
    for (const auto& c : e.children) print_element(c, level + 1, out);
    indent(out, level);
    out += "}\n";
}

}  // namespace

ParseResult parse(std::span<const Token> tokens) { return Parser(tokens).run(); }

ParseResult parse_source(std::string_view source, const std::string& file) {
    auto lexed = tokenize(source, file);
    auto result = parse(lexed.tokens);
    result.errors.insert(result.errors.begin(), lexed.errors.begin(), lexed.errors.end());
    sort_diagnostics(result.errors);
    return result;
}

std::string print_model(const AstModel& model) {
    std::string out;
    bool first = true;
    for (const auto& d : model.diagrams) {
        if (!first) out += '\n';
        first = false;
        out += std::string(to_string(d.kind)) + " " + d.name + " {\n";
        for (const auto& e : d.elements) print_element(e, 1, out);
        for (const auto& c : d.connectors) {
            indent(out, 1);
            out += std::string(connector_keyword(c.kind)) + " " + c.source.joined() + " -> " +
                   c.target.joined() + "\n";
        }
        out += "}\n";
    }
    for (const auto& inv : model.user_invariants) {
        if (!first) out += '\n';
        first = false;
        out += "inv " + inv.name + " on " + inv.context + ": " +
               (inv.expr ? constraints::print_expr(*inv.expr) : std::string("true")) + ";\n";
    }
    return out;
}

}  // namespace bitml::dsl
