// Sparse multivariate polynomials with arbitrary-precision rational
// coefficients. Terms are kept strictly decreasing in the ring's monomial
// order, with no zero coefficients, so equality is plain memberwise
// comparison and the leading term is terms().front().
#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "noethops/errors.hpp"
#include "noethops/ring.hpp"

namespace noethops {

struct Term {
    Monomial mono;
    mpq_class coef;
};

inline mpz_class mpz_gcd_of(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class mpz_lcm_of(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
        : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

    static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }

    static Polynomial constant(const RingPtr& ring, const mpq_class& c) {
        Polynomial p(ring);
        if (c != 0) p.terms_.push_back({Monomial(ring->n(), 0), c});
        return p;
    }

    static Polynomial term(const RingPtr& ring, Monomial m, const mpq_class& c) {
        Polynomial p(ring);
        if (c != 0) p.terms_.push_back({std::move(m), c});
        return p;
    }

    static Polynomial variable(const RingPtr& ring, int index) {
        Monomial m(ring->n(), 0);
        m[index] = 1;
        return term(ring, std::move(m), 1);
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    const Monomial& leading_monomial() const {
        require_nonzero();
        return terms_.front().mono;
    }
    const mpq_class& leading_coefficient() const {
        require_nonzero();
        return terms_.front().coef;
    }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && is_unit_monomial(terms_[0].mono));
    }

    mpq_class constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) throw EngineError("constant_value: polynomial is not constant");
        return terms_[0].coef;
    }

    bool is_monomial() const { return terms_.size() == 1; }

    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, total_degree(t.mono));
        return d;  // -1 for the zero polynomial
    }

    int degree_in(int var) const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono[var]);
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = total_degree(terms_[0].mono);
        for (const auto& t : terms_)
            if (total_degree(t.mono) != d) return false;
        return true;
    }

    bool supported_on(const std::vector<int>& sorted_vars) const {
        for (const auto& t : terms_)
            for (size_t i = 0; i < t.mono.size(); ++i)
                if (t.mono[i] > 0 &&
                    !std::binary_search(sorted_vars.begin(), sorted_vars.end(),
                                        static_cast<int>(i)))
                    return false;
        return true;
    }

    bool uses_variable(int var) const {
        for (const auto& t : terms_)
            if (t.mono[var] > 0) return true;
        return false;
    }

    bool operator==(const Polynomial& other) const {
        if (terms_.size() != other.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != other.terms_[i].mono ||
                terms_[i].coef != other.terms_[i].coef)
                return false;
        return true;
    }
    bool operator!=(const Polynomial& other) const { return !(*this == other); }

private:
    void require_nonzero() const {
        if (terms_.empty()) throw EngineError("leading term of the zero polynomial");
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

namespace detail {

inline void require_same_ring(const Polynomial& a, const Polynomial& b) {
    if (!a.ring() || !b.ring() || !same_variables(*a.ring(), *b.ring()) ||
        !(a.ring()->order == b.ring()->order))
        throw EngineError("polynomial operands live in different rings");
}

struct MonoGreater {
    const MonomialOrder* order;
    bool operator()(const Monomial& a, const Monomial& b) const {
        return cmp_monomials(*order, a, b) > 0;
    }
};

inline Polynomial from_map(const RingPtr& ring,
                           std::map<Monomial, mpq_class, MonoGreater>& acc) {
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
        c.canonicalize();
        if (c != 0) terms.push_back({m, c});
    }
    return Polynomial(ring, std::move(terms));
}

}  // namespace detail

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    detail::require_same_ring(a, b);
    const auto& order = a.ring()->order;
    std::vector<Term> out;
    out.reserve(a.terms().size() + b.terms().size());
    size_t i = 0, j = 0;
    while (i < a.terms().size() && j < b.terms().size()) {
        int c = cmp_monomials(order, a.terms()[i].mono, b.terms()[j].mono);
        if (c > 0) {
            out.push_back(a.terms()[i++]);
        } else if (c < 0) {
            out.push_back(b.terms()[j++]);
        } else {
            mpq_class s = a.terms()[i].coef + b.terms()[j].coef;
            if (s != 0) out.push_back({a.terms()[i].mono, s});
            ++i, ++j;
        }
    }
    for (; i < a.terms().size(); ++i) out.push_back(a.terms()[i]);
    for (; j < b.terms().size(); ++j) out.push_back(b.terms()[j]);
    return Polynomial(a.ring(), std::move(out));
}

inline Polynomial poly_neg(const Polynomial& a) {
    std::vector<Term> out = a.terms();
    for (auto& t : out) t.coef = -t.coef;
    return Polynomial(a.ring(), std::move(out));
}

inline Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    return poly_add(a, poly_neg(b));
}

inline Polynomial poly_scale(const Polynomial& a, const mpq_class& c) {
    if (c == 0) return Polynomial::zero(a.ring());
    std::vector<Term> out = a.terms();
    for (auto& t : out) t.coef *= c;
    return Polynomial(a.ring(), std::move(out));
}

// Multiply by a single term (monomial times scalar); preserves sortedness.
inline Polynomial poly_term_mul(const Polynomial& a, const Monomial& m, const mpq_class& c) {
    if (c == 0) return Polynomial::zero(a.ring());
    std::vector<Term> out = a.terms();
    for (auto& t : out) {
        t.mono = monomial_mul(t.mono, m);
        t.coef *= c;
    }
    return Polynomial(a.ring(), std::move(out));
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    detail::require_same_ring(a, b);
    detail::MonoGreater gt{&a.ring()->order};
    std::map<Monomial, mpq_class, detail::MonoGreater> acc(gt);
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            acc[monomial_mul(ta.mono, tb.mono)] += ta.coef * tb.coef;
    return detail::from_map(a.ring(), acc);
}

inline Polynomial poly_pow(const Polynomial& a, int e) {
    if (e < 0) throw EngineError("poly_pow: negative exponent");
    Polynomial r = Polynomial::constant(a.ring(), 1);
    Polynomial base = a;
    while (e > 0) {
        if (e & 1) r = poly_mul(r, base);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base);
    }
    return r;
}

// Exact division: returns q with a = q * b, or throws when b does not
// divide a. Used for colon ideals and content stripping, where exactness
// is a guaranteed invariant rather than a question.
inline Polynomial poly_exact_div(const Polynomial& a, const Polynomial& b) {
    detail::require_same_ring(a, b);
    if (b.is_zero()) throw EngineError("poly_exact_div: division by zero");
    const auto& order = a.ring()->order;
    Polynomial rem = a;
    std::vector<Term> q;
    while (!rem.is_zero()) {
        const Term& lt = rem.terms().front();
        if (!monomial_divides(b.leading_monomial(), lt.mono))
            throw EngineError("poly_exact_div: division is not exact");
        Monomial m = monomial_div(lt.mono, b.leading_monomial());
        mpq_class c = lt.coef / b.leading_coefficient();
        q.push_back({m, c});
        rem = poly_sub(rem, poly_term_mul(b, m, c));
    }
    std::sort(q.begin(), q.end(), [&](const Term& x, const Term& y) {
        return cmp_monomials(order, x.mono, y.mono) > 0;
    });
    return Polynomial(a.ring(), std::move(q));
}

inline Polynomial poly_derivative(const Polynomial& a, int var) {
    std::vector<Term> out;
    for (const auto& t : a.terms()) {
        if (t.mono[var] == 0) continue;
        Term d = t;
        d.coef *= t.mono[var];
        d.mono[var] -= 1;
        out.push_back(std::move(d));
    }
    return Polynomial(a.ring(), std::move(out));
}

// gcd of rational coefficients: gcd of numerators over lcm of denominators.
// Zero polynomial has content 0; otherwise the content is positive.
inline mpq_class poly_rational_content(const Polynomial& a) {
    if (a.is_zero()) return 0;
    mpz_class num = 0, den = 1;
    for (const auto& t : a.terms()) {
        num = mpz_gcd_of(num, t.coef.get_num());
        den = mpz_lcm_of(den, t.coef.get_den());
    }
    mpq_class c(num, den);
    c.canonicalize();
    return c;
}

// Scales to integer coefficients with gcd 1 and positive leading coefficient.
inline Polynomial poly_primitive_part(const Polynomial& a) {
    if (a.is_zero()) return a;
    mpq_class c = poly_rational_content(a);
    if (a.leading_coefficient() < 0) c = -c;
    return poly_scale(a, 1 / c);
}

inline Polynomial poly_monic(const Polynomial& a) {
    if (a.is_zero()) return a;
    return poly_scale(a, 1 / a.leading_coefficient());
}

// Re-sorts the terms for a ring that shares variables but may use a
// different monomial order.
inline Polynomial poly_convert(const Polynomial& a, const RingPtr& ring) {
    if (!a.ring() || !same_variables(*a.ring(), *ring))
        throw EngineError("poly_convert: rings have different variables");
    std::vector<Term> out = a.terms();
    std::sort(out.begin(), out.end(), [&](const Term& x, const Term& y) {
        return cmp_monomials(ring->order, x.mono, y.mono) > 0;
    });
    return Polynomial(ring, std::move(out));
}

// Substitutes `value` for the variable `var`.
inline Polynomial poly_substitute(const Polynomial& a, int var, const Polynomial& value) {
    // Horner evaluation over the coefficients of each power of the variable.
    int d = a.degree_in(var);
    std::vector<Polynomial> coeff(d + 1, Polynomial::zero(a.ring()));
    for (const auto& t : a.terms()) {
        Term stripped = t;
        int e = stripped.mono[var];
        stripped.mono[var] = 0;
        coeff[e] = poly_add(coeff[e], Polynomial::term(a.ring(), stripped.mono, stripped.coef));
    }
    Polynomial r = coeff[d];
    for (int e = d - 1; e >= 0; --e) r = poly_add(poly_mul(r, value), coeff[e]);
    return r;
}

// Canonical three-way comparison: by terms from the leading one down,
// monomials first, coefficients as tie-break; a proper prefix is smaller.
inline int poly_cmp(const Polynomial& a, const Polynomial& b) {
    detail::require_same_ring(a, b);
    const auto& order = a.ring()->order;
    size_t k = std::min(a.terms().size(), b.terms().size());
    for (size_t i = 0; i < k; ++i) {
        int c = cmp_monomials(order, a.terms()[i].mono, b.terms()[i].mono);
        if (c != 0) return c;
        int cc = cmp(a.terms()[i].coef, b.terms()[i].coef);
        if (cc != 0) return cc < 0 ? -1 : 1;
    }
    if (a.terms().size() != b.terms().size())
        return a.terms().size() < b.terms().size() ? -1 : 1;
    return 0;
}

enum class PolyOp { add, sub, mul, scalar_mul, power };

// Uniform dispatch used by tests and the CLI; the individual functions
// above are the primary interface.
inline Polynomial poly_arith(PolyOp kind, const Polynomial& a, const Polynomial& b) {
    switch (kind) {
        case PolyOp::add: return poly_add(a, b);
        case PolyOp::sub: return poly_sub(a, b);
        case PolyOp::mul: return poly_mul(a, b);
        case PolyOp::scalar_mul: return poly_scale(a, b.constant_value());
        case PolyOp::power: {
            mpq_class e = b.constant_value();
            if (e.get_den() != 1 || e < 0)
                throw EngineError("poly_arith: power wants a nonnegative integer");
            return poly_pow(a, static_cast<int>(e.get_num().get_si()));
        }
    }
    throw EngineError("poly_arith: unknown operation");
}

}  // namespace noethops
