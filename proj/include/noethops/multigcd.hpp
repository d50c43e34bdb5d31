// Multivariate polynomial gcd over the rationals.
//
// Strategy: make both inputs integer-primitive, view them as univariate in
// the highest variable that occurs, split off the content (a gcd in one
// variable fewer), and run the subresultant pseudo-remainder sequence on
// the primitive parts. The subresultant divisors g*h^d keep coefficient
// growth polynomial where a naive Euclidean PRS explodes.
#pragma once

#include <vector>

#include "noethops/polynomial.hpp"

namespace noethops {

namespace detail {

// Dense coefficient list of `a` in the variable `var`; entry i is the
// coefficient of var^i, a polynomial in the remaining variables.
inline std::vector<Polynomial> chief_coefficients(const Polynomial& a, int var) {
    std::vector<Polynomial> c(static_cast<size_t>(a.degree_in(var)) + 1,
                              Polynomial::zero(a.ring()));
    for (const auto& t : a.terms()) {
        Term s = t;
        int e = s.mono[var];
        s.mono[var] = 0;
        c[e] = poly_add(c[e], Polynomial::term(a.ring(), s.mono, s.coef));
    }
    return c;
}

inline Polynomial from_chief(const std::vector<Polynomial>& c, int var, const RingPtr& ring) {
    Polynomial r = Polynomial::zero(ring);
    Monomial x(ring->n(), 0);
    for (size_t e = 0; e < c.size(); ++e) {
        x[var] = static_cast<int>(e);
        r = poly_add(r, poly_term_mul(c[e], x, 1));
        x[var] = 0;
    }
    return r;
}

inline int chief_degree(const std::vector<Polynomial>& c) {
    for (size_t i = c.size(); i-- > 0;)
        if (!c[i].is_zero()) return static_cast<int>(i);
    return -1;
}

inline void chief_trim(std::vector<Polynomial>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Pseudo-remainder: returns lc(b)^(deg a - deg b + 1) * a mod b, computed
// without fractions.
inline std::vector<Polynomial> chief_prem(std::vector<Polynomial> a,
                                          const std::vector<Polynomial>& b) {
    int db = chief_degree(b);
    const Polynomial& lb = b[db];
    int e = chief_degree(a) - db + 1;
    while (true) {
        chief_trim(a);
        int da = chief_degree(a);
        if (da < db) break;
        const Polynomial la = a.back();
        for (auto& c : a) c = poly_mul(c, lb);
        for (int i = 0; i <= db; ++i) {
            size_t k = static_cast<size_t>(da - db + i);
            a[k] = poly_sub(a[k], poly_mul(la, b[i]));
        }
        --e;
    }
    for (; e > 0; --e)
        for (auto& c : a) c = poly_mul(c, lb);
    return a;
}

}  // namespace detail

// Primitive gcd with positive leading coefficient; poly_gcd(0,0) = 0.
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return poly_primitive_part(b);
    if (b.is_zero()) return poly_primitive_part(a);
    const RingPtr& ring = a.ring();

    int chief = -1;
    for (int v = static_cast<int>(ring->n()) - 1; v >= 0; --v) {
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) {
            chief = v;
            break;
        }
    }
    if (chief < 0) return Polynomial::constant(ring, 1);  // both constants

    Polynomial pa = poly_primitive_part(a);
    Polynomial pb = poly_primitive_part(b);

    auto ca = detail::chief_coefficients(pa, chief);
    auto cb = detail::chief_coefficients(pb, chief);

    Polynomial cont_a = Polynomial::zero(ring);
    for (const auto& c : ca) cont_a = poly_gcd(cont_a, c);
    Polynomial cont_b = Polynomial::zero(ring);
    for (const auto& c : cb) cont_b = poly_gcd(cont_b, c);
    Polynomial cont = poly_gcd(cont_a, cont_b);

    for (auto& c : ca) c = poly_exact_div(c, cont_a);
    for (auto& c : cb) c = poly_exact_div(c, cont_b);
    detail::chief_trim(ca);
    detail::chief_trim(cb);
    if (detail::chief_degree(ca) < detail::chief_degree(cb)) std::swap(ca, cb);

    Polynomial g = Polynomial::constant(ring, 1);
    Polynomial h = Polynomial::constant(ring, 1);
    while (true) {
        int delta = detail::chief_degree(ca) - detail::chief_degree(cb);
        auto rem = detail::chief_prem(ca, cb);
        detail::chief_trim(rem);
        if (rem.empty()) break;
        if (detail::chief_degree(rem) == 0) {
            // A constant (in the chief variable) remainder: gcd of the
            // primitive parts is trivial in that variable.
            cb.assign(1, Polynomial::constant(ring, 1));
            break;
        }
        Polynomial divisor = poly_mul(g, poly_pow(h, delta));
        ca = std::move(cb);
        cb = std::move(rem);
        for (auto& c : cb) c = poly_exact_div(c, divisor);
        g = ca[detail::chief_degree(ca)];
        // h := h^(1-delta) * g^delta; delta can be 0 only on the first
        // round (equal degrees), where h is left untouched.
        if (delta >= 1) h = poly_exact_div(poly_pow(g, delta), poly_pow(h, delta - 1));
    }

    // Strip the PRS scaling: the remainder picks up content in the
    // coefficient ring (gcd of its chief coefficients), which is not part
    // of the gcd of two chief-primitive inputs. Divide it out, then
    // restore the content gcd split off at the start.
    Polynomial prs_content = Polynomial::zero(ring);
    for (const auto& c : cb) prs_content = poly_gcd(prs_content, c);
    for (auto& c : cb) c = poly_exact_div(c, prs_content);
    Polynomial prs = detail::from_chief(cb, chief, ring);
    Polynomial result = poly_mul(cont, poly_primitive_part(prs));
    return poly_primitive_part(result);
}

inline Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.ring());
    Polynomial g = poly_gcd(a, b);
    return poly_primitive_part(poly_exact_div(poly_mul(a, b), g));
}

inline Polynomial poly_gcd_many(const std::vector<Polynomial>& ps, const RingPtr& ring) {
    Polynomial g = Polynomial::zero(ring);
    for (const auto& p : ps) {
        g = poly_gcd(g, p);
        if (g.is_constant() && !g.is_zero()) return Polynomial::constant(ring, 1);
    }
    return g;
}

}  // namespace noethops
