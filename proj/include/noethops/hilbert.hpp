// Hilbert series numerators of monomial ideals and degrees of homogeneous
// ideals and graded subquotients. The series of R/I is N(t)/(1-t)^n; the
// numerator is computed from the leading-term ideal by the usual
// one-generator splitting recursion.
#pragma once

#include "noethops/ideal.hpp"

namespace noethops {

namespace detail {

// Coefficient vector of a polynomial in t, trailing zeros trimmed.
using TPoly = std::vector<mpz_class>;

inline void tp_trim(TPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline TPoly tp_sub(const TPoly& a, const TPoly& b) {
    TPoly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    tp_trim(out);
    return out;
}

inline TPoly tp_shift(const TPoly& a, int k) {
    if (a.empty()) return a;
    TPoly out(a.size() + k, 0);
    for (size_t i = 0; i < a.size(); ++i) out[i + k] = a[i];
    return out;
}

inline mpz_class tp_at_one(const TPoly& p) {
    mpz_class s = 0;
    for (const auto& c : p) s += c;
    return s;
}

// Exact quotient by (1 - t); requires p(1) = 0.
inline TPoly tp_div_one_minus_t(const TPoly& p) {
    TPoly out;
    mpz_class run = 0;
    for (size_t i = 0; i + 1 <= p.size(); ++i) {
        run += p[i];
        if (i + 1 < p.size()) out.push_back(run);
    }
    tp_trim(out);
    return out;
}

inline std::vector<Monomial> minimalize_monomials(std::vector<Monomial> ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<Monomial> out;
    for (size_t i = 0; i < ms.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < ms.size() && !redundant; ++j)
            if (i != j && monomial_divides(ms[j], ms[i]) && ms[i] != ms[j]) redundant = true;
        if (!redundant) out.push_back(ms[i]);
    }
    return out;
}

inline TPoly hilbert_numerator(std::vector<Monomial> gens) {
    gens = minimalize_monomials(std::move(gens));
    if (gens.empty()) return {1};
    for (const auto& m : gens)
        if (is_unit_monomial(m)) return {};
    // Split off the last generator m: N(M) = N(M') - t^deg(m) N(M' : m).
    Monomial m = gens.back();
    gens.pop_back();
    std::vector<Monomial> quot;
    for (const auto& g : gens) quot.push_back(monomial_div(g, monomial_gcd(g, m)));
    TPoly left = hilbert_numerator(gens);
    TPoly right = hilbert_numerator(std::move(quot));
    return tp_sub(left, tp_shift(right, total_degree(m)));
}

}  // namespace detail

inline bool is_homogeneous_ideal(const Ideal& I) {
    for (const auto& g : I.groebner().gens)
        if (!g.is_homogeneous()) return false;
    return true;
}

struct HilbertResult {
    std::vector<mpz_class> numerator;  // N(t) with series N(t)/(1-t)^n
    mpz_class degree;
};

// Degree of R/I for homogeneous I: strip (1-t) factors from the numerator
// and evaluate at 1. The unit ideal gets degree 0 (the zero ring).
inline HilbertResult hilbert_degree(const Ideal& I) {
    if (!is_homogeneous_ideal(I)) throw EngineError("hilbert degree needs a homogeneous ideal");
    std::vector<Monomial> lts;
    for (const auto& g : I.groebner().gens) lts.push_back(g.leading_monomial());
    detail::TPoly num = detail::hilbert_numerator(lts);
    HilbertResult out;
    out.numerator = num;
    if (num.empty()) {
        out.degree = 0;
        return out;
    }
    detail::TPoly q = num;
    while (detail::tp_at_one(q) == 0) q = detail::tp_div_one_minus_t(q);
    out.degree = detail::tp_at_one(q);
    return out;
}

// Degree of the graded module Isup/Isub (both homogeneous, Isub inside
// Isup), read off the top-dimensional part of the Hilbert series
// difference. Equal ideals give 0.
inline mpz_class module_degree_quotient(const Ideal& Isub, const Ideal& Isup) {
    if (!is_homogeneous_ideal(Isub) || !is_homogeneous_ideal(Isup))
        throw EngineError("module degree needs homogeneous ideals");
    if (!ideal_contains(Isup, Isub))
        throw EngineError("module degree needs nested ideals");
    auto lts = [](const Ideal& I) {
        std::vector<Monomial> ms;
        for (const auto& g : I.groebner().gens) ms.push_back(g.leading_monomial());
        return ms;
    };
    detail::TPoly diff =
        detail::tp_sub(detail::hilbert_numerator(lts(Isub)), detail::hilbert_numerator(lts(Isup)));
    if (diff.empty()) return 0;
    while (detail::tp_at_one(diff) == 0) diff = detail::tp_div_one_minus_t(diff);
    return detail::tp_at_one(diff);
}

}  // namespace noethops
