#include "resbound/parser.hpp"

#include "lexer.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace resbound {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<std::string> names) : toks_(std::move(toks)) {
        set_names(std::move(names));
    }

    void set_names(std::vector<std::string> names) {
        names_ = std::move(names);
        index_.clear();
        for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
    }

    const Token &peek() const { return toks_[pos_]; }
    const Token &next() { return toks_[pos_++]; }
    bool at_op(char c) const { return peek().kind == Tok::op && peek().text.size() == 1 && peek().text[0] == c; }

    [[noreturn]] void fail(const Token &t, const std::string &msg) const { throw ParseError(t.line, t.column, msg); }

    void expect_op(char c) {
        if (!at_op(c)) fail(peek(), std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_separators() {
        while (peek().kind == Tok::separator) ++pos_;
    }

    void expect_statement_end() {
        if (peek().kind == Tok::separator) {
            skip_separators();
            return;
        }
        if (peek().kind != Tok::end) fail(peek(), "expected end of statement");
    }

    std::size_t n() const { return names_.size(); }

    Poly expression() {
        Poly acc = term();
        while (at_op('+') || at_op('-')) {
            bool minus = next().text[0] == '-';
            Poly t = term();
            if (minus) acc -= t;
            else acc += t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = unary();
        for (;;) {
            if (at_op('*')) {
                ++pos_;
                acc *= unary();
            } else if (at_op('/')) {
                const Token &slash = next();
                Poly d = unary();
                if (!d.is_constant()) fail(slash, "division by a non-constant expression");
                GaussRat c = d.constant_term();
                if (c.is_zero()) fail(slash, "division by zero");
                acc *= GaussRat(1) / c;
            } else if (imaginary_follows()) {
                ++pos_;
                acc *= GaussRat::imaginary_unit();
            } else {
                return acc;
            }
        }
    }

    Poly unary() {
        if (at_op('-')) {
            ++pos_;
            return -unary();
        }
        if (at_op('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Poly power() {
        Poly base = primary();
        if (at_op('^')) {
            ++pos_;
            const Token &e = next();
            if (e.kind != Tok::number || e.text.find_first_not_of("0123456789") != std::string::npos)
                fail(e, "exponent must be a non-negative integer literal");
            unsigned long k = std::stoul(e.text);
            if (k > 10000) fail(e, "exponent too large");
            base = base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    Poly primary() {
        const Token &t = next();
        if (t.kind == Tok::number) {
            if (t.text.find_first_not_of("0123456789") != std::string::npos)
                fail(t, "non-rational literal '" + t.text + "' (write p/q)");
            return Poly::constant(n(), GaussRat(mpq_class(mpz_class(t.text))));
        }
        if (t.kind == Tok::ident) {
            auto it = index_.find(t.text);
            if (it != index_.end()) return Poly::variable(n(), it->second);
            if (t.text == "i") return Poly::constant(n(), GaussRat::imaginary_unit());
            fail(t, "undeclared variable '" + t.text + "'");
        }
        if (t.kind == Tok::op && t.text == "(") {
            Poly inner = expression();
            expect_op(')');
            return inner;
        }
        fail(t, t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    // "3 i" or "1/2 i": the unit written after a literal without '*'.
    bool imaginary_follows() const {
        return peek().kind == Tok::ident && peek().text == "i" && index_.find("i") == index_.end();
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

} // namespace

VectorField parse_vector_field(std::string_view text) {
    Parser p(Lexer(text).run(), {});
    p.skip_separators();
    const Token &kw = p.next();
    if (kw.kind != Tok::ident || kw.text != "vars") p.fail(kw, "expected 'vars' header");
    std::vector<std::string> names;
    for (;;) {
        const Token &id = p.next();
        if (id.kind != Tok::ident) p.fail(id, "expected variable name");
        for (const auto &existing : names)
            if (existing == id.text) p.fail(id, "variable '" + id.text + "' declared twice");
        names.push_back(id.text);
        if (!p.at_op(',')) break;
        ++p.pos_;
    }
    p.expect_statement_end();
    p.set_names(names);

    std::vector<std::optional<Poly>> comps(names.size());
    while (p.peek().kind != Tok::end) {
        const Token &lhs = p.next();
        if (lhs.kind != Tok::ident || lhs.text.size() < 2 || lhs.text[0] != 'd')
            p.fail(lhs, "expected component 'd<var> = ...'");
        std::string var = lhs.text.substr(1);
        auto it = p.index_.find(var);
        if (it == p.index_.end()) p.fail(lhs, "undeclared variable '" + var + "'");
        if (comps[it->second]) p.fail(lhs, "component for '" + var + "' given twice");
        p.expect_op('=');
        comps[it->second] = p.expression();
        p.expect_statement_end();
    }
    std::vector<Poly> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!comps[i]) {
            const Token &e = p.peek();
            throw ParseError(e.line, e.column, "missing component 'd" + names[i] + "'");
        }
        out.push_back(std::move(*comps[i]));
    }
    return VectorField(std::move(out), std::move(names));
}

Poly parse_polynomial(std::string_view text, std::span<const std::string> names) {
    Parser p(Lexer(text).run(), std::vector<std::string>(names.begin(), names.end()));
    Poly out = p.expression();
    p.skip_separators();
    if (p.peek().kind != Tok::end) p.fail(p.peek(), "trailing input");
    return out;
}

GaussRat parse_constant(std::string_view text) {
    return parse_polynomial(text, {}).constant_term();
}

} // namespace resbound
