#include "reopt/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace reopt {

namespace {

enum class Tok { Ident, Int, Str, Comma, Dot, Eq, Lt, Le, Gt, Ge, LParen, RParen, Dollar, End };

struct Token {
    Tok kind;
    std::string text;
    int64_t int_value = 0;
    std::size_t pos = 0;
};

struct Lexer {
    const std::string &src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string &msg, std::size_t at) const {
        throw Error("syntax error at position " + std::to_string(at) + ": " + msg);
    }

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos >= src.size()) return {Tok::End, "", 0, pos};
        std::size_t start = pos;
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                ++pos;
            }
            return {Tok::Ident, src.substr(start, pos - start), 0, start};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            Token t{Tok::Int, src.substr(start, pos - start), 0, start};
            t.int_value = std::strtoll(t.text.c_str(), nullptr, 10);
            return t;
        }
        if (c == '"') {
            ++pos;
            std::string out;
            while (pos < src.size() && src[pos] != '"') out += src[pos++];
            if (pos >= src.size()) fail("unterminated string literal", start);
            ++pos;
            return {Tok::Str, out, 0, start};
        }
        ++pos;
        switch (c) {
            case ',': return {Tok::Comma, ",", 0, start};
            case '.': return {Tok::Dot, ".", 0, start};
            case '=': return {Tok::Eq, "=", 0, start};
            case '(': return {Tok::LParen, "(", 0, start};
            case ')': return {Tok::RParen, ")", 0, start};
            case '$': return {Tok::Dollar, "$", 0, start};
            case ';': return next();  // trailing semicolons are tolerated
            case '<':
                if (pos < src.size() && src[pos] == '=') {
                    ++pos;
                    return {Tok::Le, "<=", 0, start};
                }
                return {Tok::Lt, "<", 0, start};
            case '>':
                if (pos < src.size() && src[pos] == '=') {
                    ++pos;
                    return {Tok::Ge, ">=", 0, start};
                }
                return {Tok::Gt, ">", 0, start};
        }
        fail(std::string("unexpected character '") + c + "'", start);
    }
};

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

struct Parser {
    Lexer lexer;
    Token cur;

    explicit Parser(const std::string &text) : lexer{text} { cur = lexer.next(); }

    [[noreturn]] void fail(const std::string &expected) const {
        throw Error("syntax error at position " + std::to_string(cur.pos) + ": expected " +
                    expected + ", got '" + (cur.kind == Tok::End ? "<end>" : cur.text) + "'");
    }

    void advance() { cur = lexer.next(); }

    bool is_keyword(const char *kw) const {
        return cur.kind == Tok::Ident && upper(cur.text) == kw;
    }

    void expect_keyword(const char *kw) {
        if (!is_keyword(kw)) fail(std::string("keyword ") + kw);
        advance();
    }

    std::string expect_ident(const char *what) {
        if (cur.kind != Tok::Ident) fail(what);
        std::string s = cur.text;
        advance();
        return s;
    }

    ColumnRef expect_column() {
        std::string src = expect_ident("column reference <id>.<id>");
        if (cur.kind != Tok::Dot) fail("'.' in column reference");
        advance();
        std::string col = expect_ident("column name after '.'");
        return ColumnRef{src, col};
    }

    Value expect_literal() {
        if (cur.kind == Tok::Int) {
            Value v{cur.int_value};
            advance();
            return v;
        }
        if (cur.kind == Tok::Str) {
            Value v{cur.text};
            advance();
            return v;
        }
        fail("literal (integer or \"string\")");
    }

    Query parse() {
        Query q;
        expect_keyword("SELECT");
        q.projections.push_back(expect_column());
        while (cur.kind == Tok::Comma) {
            advance();
            q.projections.push_back(expect_column());
        }
        expect_keyword("FROM");
        while (true) {
            std::string name = expect_ident("dataset name");
            q.sources.emplace(name, DataSourceRef{name, DataSourceRef::Kind::Base, {}});
            if (cur.kind != Tok::Comma) break;
            advance();
        }
        if (is_keyword("WHERE")) {
            advance();
            parse_conjunct(q);
            while (is_keyword("AND")) {
                advance();
                parse_conjunct(q);
            }
        }
        if (cur.kind != Tok::End) fail("AND or end of query");
        std::sort(q.joins.begin(), q.joins.end());
        q.joins.erase(std::unique(q.joins.begin(), q.joins.end()), q.joins.end());
        q.validate();
        return q;
    }

    void parse_conjunct(Query &q) {
        if (cur.kind != Tok::Ident) fail("predicate");
        // <udfname> ( <id> )  vs  <col> ...
        std::string first = cur.text;
        advance();
        if (cur.kind == Tok::LParen) {
            advance();
            std::string dataset = expect_ident("dataset name inside UDF call");
            if (cur.kind != Tok::RParen) fail("')'");
            advance();
            Predicate p;
            p.form = Predicate::Form::Udf;
            p.udf_name = first;
            p.column = ColumnRef{dataset, ""};
            q.local_predicates[dataset].push_back(p);
            return;
        }
        if (cur.kind != Tok::Dot) fail("'.' or '(' after identifier");
        advance();
        ColumnRef col{first, expect_ident("column name after '.'")};

        if (is_keyword("BETWEEN")) {
            advance();
            Predicate p;
            p.form = Predicate::Form::Range;
            p.column = col;
            p.lo = expect_literal();
            expect_keyword("AND");
            p.hi = expect_literal();
            q.local_predicates[col.source].push_back(p);
            return;
        }

        switch (cur.kind) {
            case Tok::Eq: {
                advance();
                if (cur.kind == Tok::Dollar) {
                    advance();
                    Predicate p;
                    p.form = Predicate::Form::Parameterized;
                    p.column = col;
                    p.param_name = expect_ident("parameter name after '$'");
                    q.local_predicates[col.source].push_back(p);
                    return;
                }
                if (cur.kind == Tok::Ident) {
                    ColumnRef rhs{cur.text, ""};
                    advance();
                    if (cur.kind != Tok::Dot) fail("'.' in column reference");
                    advance();
                    rhs.column = expect_ident("column name after '.'");
                    if (rhs.source == col.source) {
                        throw Error("join predicate must relate two distinct sources: " +
                                    col.qualified() + " = " + rhs.qualified());
                    }
                    JoinPredicate j{col, rhs};
                    j.canonicalize();
                    q.joins.push_back(j);
                    return;
                }
                Predicate p;
                p.form = Predicate::Form::Equality;
                p.column = col;
                p.eq_value = expect_literal();
                q.local_predicates[col.source].push_back(p);
                return;
            }
            case Tok::Lt:
            case Tok::Le:
            case Tok::Gt:
            case Tok::Ge: {
                Tok op = cur.kind;
                advance();
                Predicate p;
                p.form = Predicate::Form::Range;
                p.column = col;
                Value lit = expect_literal();
                if (op == Tok::Lt || op == Tok::Le) {
                    p.hi = lit;
                    p.hi_open = (op == Tok::Lt);
                } else {
                    p.lo = lit;
                    p.lo_open = (op == Tok::Gt);
                }
                q.local_predicates[col.source].push_back(p);
                return;
            }
            default: fail("comparison operator");
        }
    }
};

}  // namespace

Query parse_query(const std::string &text) { return Parser(text).parse(); }

}  // namespace reopt
