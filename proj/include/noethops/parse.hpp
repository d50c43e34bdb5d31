// Text form of polynomials: a recursive-descent parser over a small
// expression grammar, and the canonical printer that inverts it.
//
// Grammar (whitespace insensitive):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := integer | identifier | '(' expr ')'
//
// '/' requires a nonzero constant divisor, which is how rational
// coefficients like 3/2 are written. The parser is shared with the
// differential-operator grammar through the Algebra hook type.
#pragma once

#include <cctype>
#include <string>

#include "noethops/polynomial.hpp"

namespace noethops {

namespace detail {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Lexer {
    explicit Lexer(const std::string& text) : s(text) { advance(); }

    Tok tok = Tok::end;
    std::string ident;
    mpz_class number;
    long tok_pos = 0;

    void advance() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        tok_pos = static_cast<long>(pos);
        if (pos >= s.size()) {
            tok = Tok::end;
            return;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            number = mpz_class(s.substr(start, pos - start));
            tok = Tok::number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                      s[pos] == '_'))
                ++pos;
            ident = s.substr(start, pos - start);
            tok = Tok::ident;
            return;
        }
        ++pos;
        switch (c) {
            case '+': tok = Tok::plus; return;
            case '-': tok = Tok::minus; return;
            case '*': tok = Tok::star; return;
            case '/': tok = Tok::slash; return;
            case '^': tok = Tok::caret; return;
            case '(': tok = Tok::lparen; return;
            case ')': tok = Tok::rparen; return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", tok_pos);
    }

private:
    const std::string& s;
    size_t pos = 0;
};

// Parses an expression over any commutative algebra providing constants,
// named symbols, ring operations, and integer powers.
template <class Algebra>
class ExprParser {
public:
    ExprParser(const std::string& text, const Algebra& alg) : lex_(text), alg_(alg) {}

    typename Algebra::value_type run() {
        auto v = expr();
        if (lex_.tok != Tok::end) throw ParseError("trailing input", lex_.tok_pos);
        return v;
    }

private:
    using V = typename Algebra::value_type;

    V expr() {
        bool neg = false;
        if (lex_.tok == Tok::plus) {
            lex_.advance();
        } else if (lex_.tok == Tok::minus) {
            neg = true;
            lex_.advance();
        }
        V v = term();
        if (neg) v = alg_.neg(v);
        while (lex_.tok == Tok::plus || lex_.tok == Tok::minus) {
            bool sub = lex_.tok == Tok::minus;
            lex_.advance();
            V rhs = term();
            v = sub ? alg_.sub(v, rhs) : alg_.add(v, rhs);
        }
        return v;
    }

    V term() {
        V v = factor();
        while (lex_.tok == Tok::star || lex_.tok == Tok::slash) {
            bool div = lex_.tok == Tok::slash;
            long pos = lex_.tok_pos;
            lex_.advance();
            V rhs = factor();
            v = div ? alg_.div(v, rhs, pos) : alg_.mul(v, rhs);
        }
        return v;
    }

    V factor() {
        V v = base();
        if (lex_.tok == Tok::caret) {
            lex_.advance();
            if (lex_.tok != Tok::number)
                throw ParseError("exponent must be a nonnegative integer", lex_.tok_pos);
            if (!lex_.number.fits_sint_p())
                throw ParseError("exponent too large", lex_.tok_pos);
            int e = static_cast<int>(lex_.number.get_si());
            lex_.advance();
            v = alg_.pow(v, e);
        }
        return v;
    }

    V base() {
        switch (lex_.tok) {
            case Tok::number: {
                V v = alg_.constant(mpq_class(lex_.number));
                lex_.advance();
                return v;
            }
            case Tok::ident: {
                V v = alg_.symbol(lex_.ident, lex_.tok_pos);
                lex_.advance();
                return v;
            }
            case Tok::lparen: {
                lex_.advance();
                V v = expr();
                if (lex_.tok != Tok::rparen)
                    throw ParseError("expected ')'", lex_.tok_pos);
                lex_.advance();
                return v;
            }
            default:
                throw ParseError("expected a number, variable, or '('", lex_.tok_pos);
        }
    }

    Lexer lex_;
    const Algebra& alg_;
};

struct PolyAlgebra {
    using value_type = Polynomial;
    RingPtr ring;

    Polynomial constant(const mpq_class& c) const { return Polynomial::constant(ring, c); }

    Polynomial symbol(const std::string& name, long pos) const {
        int idx = ring->var_index(name);
        if (idx < 0) throw ParseError("unknown variable '" + name + "'", pos);
        return Polynomial::variable(ring, idx);
    }

    Polynomial add(const Polynomial& a, const Polynomial& b) const { return poly_add(a, b); }
    Polynomial sub(const Polynomial& a, const Polynomial& b) const { return poly_sub(a, b); }
    Polynomial mul(const Polynomial& a, const Polynomial& b) const { return poly_mul(a, b); }
    Polynomial neg(const Polynomial& a) const { return poly_neg(a); }
    Polynomial pow(const Polynomial& a, int e) const {
        if (e < 0) throw ParseError("negative exponent");
        return poly_pow(a, e);
    }

    Polynomial div(const Polynomial& a, const Polynomial& b, long pos) const {
        if (!b.is_constant() || b.is_zero())
            throw ParseError("'/' needs a nonzero constant divisor", pos);
        return poly_scale(a, 1 / b.constant_value());
    }
};

}  // namespace detail

inline Polynomial parse_poly(const std::string& text, const RingPtr& ring) {
    detail::PolyAlgebra alg{ring};
    return detail::ExprParser<detail::PolyAlgebra>(text, alg).run();
}

inline std::string format_monomial(const Monomial& m, const RingSpec& ring) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += ring.vars[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

inline std::string format_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    const RingSpec& ring = *p.ring();
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
        mpq_class c = t.coef;
        if (first) {
            if (c < 0) {
                s += "-";
                c = -c;
            }
            first = false;
        } else {
            s += (c < 0) ? " - " : " + ";
            if (c < 0) c = -c;
        }
        std::string mono = format_monomial(t.mono, ring);
        if (mono.empty()) {
            s += c.get_str();
        } else if (c == 1) {
            s += mono;
        } else {
            s += c.get_str() + "*" + mono;
        }
    }
    return s;
}

}  // namespace noethops
