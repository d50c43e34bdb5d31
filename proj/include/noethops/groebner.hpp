// Multivariate division and Buchberger's algorithm.
//
// The pair queue uses the sugar selection strategy and Gebauer-Moeller
// elimination. Everything is deterministic: pair selection breaks ties by
// lcm order and then insertion index, reducers are tried in insertion
// order, and the final basis is the unique reduced Groebner basis sorted
// with decreasing leading terms.
#pragma once

#include <vector>

#include "noethops/parse.hpp"

namespace noethops {

struct GroebnerBasis {
    RingPtr ring;  // ring whose canonical order is the basis order
    MonomialOrder order;
    std::vector<Polynomial> gens;
    bool reduced = false;

    bool is_trivial() const {  // the unit ideal
        return gens.size() == 1 && gens[0].is_constant() && !gens[0].is_zero();
    }
};

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

namespace detail {

inline void require_order_match(const Polynomial& f, const GroebnerBasis& g) {
    if (!f.ring() || !same_variables(*f.ring(), *g.ring) ||
        !(f.ring()->order == g.order))
        throw EngineError("normal_form: polynomial and basis disagree on ring or order");
}

}  // namespace detail

// Full multivariate division: f = sum(quotients[i] * divisors[i]) + r and
// no term of r is divisible by any divisor's leading term.
inline DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors) {
    const RingPtr& ring = f.ring();
    const MonomialOrder& order = ring->order;
    DivisionResult out{std::vector<Polynomial>(divisors.size(), Polynomial::zero(ring)),
                       Polynomial::zero(ring)};
    Polynomial p = f;
    std::vector<Term> rem;
    while (!p.is_zero()) {
        const Term lt = p.terms().front();
        bool hit = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            const Polynomial& g = divisors[i];
            if (g.is_zero() || !monomial_divides(g.leading_monomial(), lt.mono)) continue;
            Monomial m = monomial_div(lt.mono, g.leading_monomial());
            mpq_class c = lt.coef / g.leading_coefficient();
            out.quotients[i] = poly_add(out.quotients[i], Polynomial::term(ring, m, c));
            p = poly_sub(p, poly_term_mul(g, m, c));
            hit = true;
            break;
        }
        if (!hit) {
            rem.push_back(lt);
            p = poly_sub(p, Polynomial::term(ring, lt.mono, lt.coef));
        }
    }
    std::sort(rem.begin(), rem.end(), [&](const Term& a, const Term& b) {
        return cmp_monomials(order, a.mono, b.mono) > 0;
    });
    out.remainder = Polynomial(ring, std::move(rem));
    return out;
}

inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& divisors) {
    return divide(f, divisors).remainder;
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g) {
    detail::require_order_match(f, g);
    return divide(f, g.gens).remainder;
}

namespace detail {

struct SPair {
    int i, j;
    Monomial lcm;
    int sugar;
};

// Normal form that also tracks the sugar degree of the result.
inline std::pair<Polynomial, int> reduce_sugared(Polynomial p, int sugar,
                                                 const std::vector<Polynomial>& basis,
                                                 const std::vector<int>& sugars) {
    const RingPtr& ring = p.ring();
    std::vector<Term> rem;
    while (!p.is_zero()) {
        const Term lt = p.terms().front();
        bool hit = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (!monomial_divides(basis[i].leading_monomial(), lt.mono)) continue;
            Monomial m = monomial_div(lt.mono, basis[i].leading_monomial());
            sugar = std::max(sugar, sugars[i] + total_degree(m));
            p = poly_sub(p, poly_term_mul(basis[i], m, lt.coef));
            hit = true;
            break;
        }
        if (!hit) {
            rem.push_back(lt);
            p = poly_sub(p, Polynomial::term(ring, lt.mono, lt.coef));
        }
    }
    std::sort(rem.begin(), rem.end(), [&](const Term& a, const Term& b) {
        return cmp_monomials(ring->order, a.mono, b.mono) > 0;
    });
    return {Polynomial(ring, std::move(rem)), sugar};
}

// Gebauer-Moeller update: prunes the pending pair list against a new basis
// element and generates the surviving new pairs.
inline void gm_update(std::vector<SPair>& pairs, const std::vector<Polynomial>& basis,
                      const std::vector<int>& sugars, int k, const MonomialOrder& order) {
    const Monomial& ltk = basis[k].leading_monomial();
    std::vector<SPair> fresh;
    std::vector<bool> dropped(k, false);

    auto lcm_with = [&](int i) { return monomial_lcm(basis[i].leading_monomial(), ltk); };

    std::vector<Monomial> lcms(k);
    for (int i = 0; i < k; ++i) lcms[i] = lcm_with(i);
    // Buchberger's coprime criterion: a coprime pair is redundant, and so
    // is every other new pair sharing its lcm.
    for (int i = 0; i < k; ++i) {
        if (!monomials_coprime(basis[i].leading_monomial(), ltk)) continue;
        for (int j = 0; j < k; ++j)
            if (lcms[j] == lcms[i]) dropped[j] = true;
    }
    // Among the survivors, a pair whose lcm is a proper multiple of another
    // new pair's lcm is redundant; equal lcms keep the smallest index.
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k && !dropped[i]; ++j) {
            if (i == j || dropped[j]) continue;
            if (lcms[j] == lcms[i]) {
                if (j < i) dropped[i] = true;
            } else if (monomial_divides(lcms[j], lcms[i])) {
                dropped[i] = true;
            }
        }
    }
    for (int i = 0; i < k; ++i) {
        if (dropped[i]) continue;
        int sug = std::max(sugars[i] + total_degree(lcms[i]) -
                               total_degree(basis[i].leading_monomial()),
                           sugars[k] + total_degree(lcms[i]) - total_degree(ltk));
        fresh.push_back({i, k, lcms[i], sug});
    }

    // Prune old pairs strictly dominated by the new element.
    std::vector<SPair> kept;
    for (auto& pr : pairs) {
        const Monomial& l = pr.lcm;
        bool drop = monomial_divides(ltk, l) && lcm_with(pr.i) != l && lcm_with(pr.j) != l;
        if (!drop) kept.push_back(std::move(pr));
    }
    kept.insert(kept.end(), fresh.begin(), fresh.end());
    pairs = std::move(kept);
}

inline Polynomial spoly(const Polynomial& a, const Polynomial& b, const Monomial& lcm) {
    Monomial ma = monomial_div(lcm, a.leading_monomial());
    Monomial mb = monomial_div(lcm, b.leading_monomial());
    return poly_sub(poly_term_mul(a, ma, 1 / a.leading_coefficient()),
                    poly_term_mul(b, mb, 1 / b.leading_coefficient()));
}

}  // namespace detail

// Reduced Groebner basis of the ideal generated by `gens` under `order`.
// Zero generators are ignored; the zero ideal yields an empty basis.
inline GroebnerBasis buchberger(const RingPtr& ring_in, const std::vector<Polynomial>& gens,
                                const MonomialOrder& order) {
    RingPtr ring = (ring_in->order == order) ? ring_in : with_order(ring_in, order);
    std::vector<Polynomial> basis;
    std::vector<int> sugars;
    std::vector<detail::SPair> pairs;

    auto insert = [&](Polynomial h, int sugar) {
        basis.push_back(poly_monic(std::move(h)));
        sugars.push_back(sugar);
        detail::gm_update(pairs, basis, sugars, static_cast<int>(basis.size()) - 1,
                          ring->order);
    };

    for (const auto& g0 : gens) {
        if (g0.is_zero()) continue;
        Polynomial g = poly_convert(g0, ring);
        auto [nf, sug] = detail::reduce_sugared(g, g.degree(), basis, sugars);
        if (!nf.is_zero()) insert(std::move(nf), sug);
    }

    while (!pairs.empty()) {
        // Sugar strategy: smallest sugar, then smallest lcm, then indices.
        size_t best = 0;
        for (size_t i = 1; i < pairs.size(); ++i) {
            const auto& a = pairs[i];
            const auto& b = pairs[best];
            int c = (a.sugar != b.sugar) ? (a.sugar < b.sugar ? -1 : 1)
                                         : cmp_monomials(ring->order, a.lcm, b.lcm);
            if (c < 0 || (c == 0 && (a.i < b.i || (a.i == b.i && a.j < b.j)))) best = i;
        }
        detail::SPair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));

        Polynomial s = detail::spoly(basis[pr.i], basis[pr.j], pr.lcm);
        auto [nf, sug] = detail::reduce_sugared(std::move(s), pr.sugar, basis, sugars);
        if (!nf.is_zero()) insert(std::move(nf), sug);
    }

    // Minimalize: drop elements whose leading term another element divides.
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lj = basis[j].leading_monomial();
            const Monomial& li = basis[i].leading_monomial();
            if (monomial_divides(lj, li) && (li != lj || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Interreduce to the unique reduced basis.
    std::vector<Polynomial> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial nf = normal_form(minimal[i], others);
        if (!nf.is_zero()) reduced.push_back(poly_monic(nf));
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) > 0; });

    GroebnerBasis out;
    out.ring = ring;
    out.order = order;
    out.gens = std::move(reduced);
    out.reduced = true;
    return out;
}

inline GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens) {
    return buchberger(ring, gens, ring->order);
}

// Generators of the intersection of the input ideal with the subring on
// the variables outside `drop`: Groebner basis under a block order with
// the dropped variables leading, filtered to the kept variables. Results
// are returned in the ambient ring's own order.
inline std::vector<Polynomial> eliminate(const RingPtr& ring,
                                         const std::vector<Polynomial>& gens,
                                         std::vector<int> drop) {
    std::sort(drop.begin(), drop.end());
    GroebnerBasis gb = buchberger(ring, gens, MonomialOrder::block_order(drop));
    std::vector<Polynomial> kept;
    for (const auto& g : gb.gens) {
        bool uses_dropped = false;
        for (int v : drop)
            if (g.uses_variable(v)) { uses_dropped = true; break; }
        if (!uses_dropped) kept.push_back(poly_convert(g, ring));
    }
    std::sort(kept.begin(), kept.end(),
              [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) > 0; });
    return kept;
}

}  // namespace noethops
