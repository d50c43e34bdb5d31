// Associated primes and primary decomposition. Three engines: a splitting
// engine for monomial ideals, a zero-dimensional engine working over QQ or
// QQ(S), and a positive-dimensional reduction that contracts from QQ(U)
// and recurses. Standard pairs of monomial ideals provide an independent
// multiplicity count.
#pragma once

#include <random>

#include "noethops/factor.hpp"
#include "noethops/fraction_field.hpp"
#include "noethops/hilbert.hpp"
#include "noethops/ideal.hpp"
#include "noethops/linalg.hpp"

namespace noethops {

enum class DecompositionSource { monomial_engine, zerodim_engine, gtz_engine, supplied };

inline std::string to_string(DecompositionSource s) {
    switch (s) {
        case DecompositionSource::monomial_engine: return "monomial-engine";
        case DecompositionSource::zerodim_engine: return "zerodim-engine";
        case DecompositionSource::gtz_engine: return "gtz-engine";
        case DecompositionSource::supplied: return "supplied";
    }
    return "unknown";
}

struct PrimaryComponent {
    Ideal primary;
    Ideal prime;
};

struct StandardPair {
    Monomial monomial;
    Ideal prime;
};

struct DecompositionOutput {
    std::vector<PrimaryComponent> components;
    DecompositionSource source = DecompositionSource::gtz_engine;
};

// ---------------------------------------------------------------------------
// Prime ordering: strict containment must imply an earlier index, so sort
// by dimension of the quotient descending; ties break on the reduced
// generator lists compared termwise.

namespace detail {

inline int ideal_cmp(const Ideal& a, const Ideal& b) {
    const auto& ga = a.groebner().gens;
    const auto& gb = b.groebner().gens;
    size_t k = std::min(ga.size(), gb.size());
    for (size_t i = 0; i < k; ++i) {
        int c = poly_cmp(ga[i], gb[i]);
        if (c != 0) return c;
    }
    if (ga.size() != gb.size()) return ga.size() < gb.size() ? -1 : 1;
    return 0;
}

inline int ideal_dim_for_order(const Ideal& I) {
    if (I.is_zero_ideal()) return static_cast<int>(I.ring()->n()) + 1;
    return dimension(I).dim;
}

}  // namespace detail

inline bool prime_before(const Ideal& a, const Ideal& b) {
    int da = detail::ideal_dim_for_order(a), db = detail::ideal_dim_for_order(b);
    if (da != db) return da > db;
    return detail::ideal_cmp(a, b) < 0;
}

inline void order_primes(std::vector<Ideal>& primes) {
    std::sort(primes.begin(), primes.end(), prime_before);
}

inline void order_components(std::vector<PrimaryComponent>& cs) {
    std::sort(cs.begin(), cs.end(), [](const PrimaryComponent& a, const PrimaryComponent& b) {
        return prime_before(a.prime, b.prime);
    });
}

// ---------------------------------------------------------------------------
// Monomial engine.

namespace detail {

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::max(m[i], b[i]);
    return m;
}

inline bool mono_member(const Monomial& m, const std::vector<Monomial>& gens) {
    for (const auto& g : gens)
        if (mono_divides(g, m)) return true;
    return false;
}

// gens(inner) each in outer.
inline bool mono_ideal_contains(const std::vector<Monomial>& outer,
                                const std::vector<Monomial>& inner) {
    for (const auto& m : inner)
        if (!mono_member(m, outer)) return false;
    return true;
}

inline std::vector<Monomial> mono_ideal_intersect(const std::vector<Monomial>& a,
                                                  const std::vector<Monomial>& b) {
    std::vector<Monomial> out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(mono_lcm(x, y));
    return minimalize_monomials(out);
}

inline bool mono_ideal_equal(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
    return mono_ideal_contains(a, b) && mono_ideal_contains(b, a);
}

inline void irreducible_split(std::vector<Monomial> gens, std::vector<std::vector<Monomial>>& out) {
    gens = minimalize_monomials(gens);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        const Monomial& g = gens[gi];
        int vars_used = 0;
        for (int e : g) vars_used += (e > 0);
        if (vars_used < 2) continue;
        int v = 0;
        while (g[v] == 0) ++v;
        Monomial pure(g.size(), 0), rest = g;
        pure[v] = g[v];
        rest[v] = 0;
        std::vector<Monomial> left = gens, right = gens;
        left.push_back(pure);
        right.push_back(rest);
        irreducible_split(std::move(left), out);
        irreducible_split(std::move(right), out);
        return;
    }
    out.push_back(std::move(gens));
}

inline std::vector<Monomial> monomial_generators(const Ideal& I) {
    std::vector<Monomial> out;
    for (const auto& g : I.gens()) {
        if (g.terms().size() != 1)
            throw EngineError("monomial engine needs monomial generators");
        out.push_back(g.terms().front().mono);
    }
    return minimalize_monomials(out);
}

inline Ideal ideal_from_monomials(const RingPtr& ring, std::vector<Monomial> mons) {
    MonomialOrder grevlex = MonomialOrder::grevlex_order();
    std::sort(mons.begin(), mons.end(), [&](const Monomial& a, const Monomial& b) {
        return cmp_monomials(grevlex, a, b) > 0;
    });
    std::vector<Polynomial> gens;
    for (const auto& m : mons) gens.push_back(Polynomial::term(ring, m, 1));
    return Ideal(ring, gens);
}

inline Ideal support_prime(const RingPtr& ring, const std::vector<Monomial>& mons) {
    std::vector<bool> used(ring->n(), false);
    for (const auto& m : mons)
        for (size_t v = 0; v < m.size(); ++v)
            if (m[v] > 0) used[v] = true;
    std::vector<Polynomial> gens;
    for (size_t v = 0; v < used.size(); ++v)
        if (used[v]) gens.push_back(Polynomial::variable(ring, static_cast<int>(v)));
    return Ideal(ring, gens);
}

// Drop components containing the intersection of the others, first one
// first, until the list is irredundant.
inline void minimize_mono_components(std::vector<std::vector<Monomial>>& comps) {
    bool changed = true;
    while (changed && comps.size() > 1) {
        changed = false;
        for (size_t i = 0; i < comps.size(); ++i) {
            std::vector<Monomial> rest;
            bool first = true;
            for (size_t j = 0; j < comps.size(); ++j) {
                if (j == i) continue;
                rest = first ? comps[j] : mono_ideal_intersect(rest, comps[j]);
                first = false;
            }
            if (mono_ideal_contains(comps[i], rest)) {
                comps.erase(comps.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
}

}  // namespace detail

// Complete irredundant primary decomposition of a monomial ideal by
// splitting mixed-support generators and aggregating irreducible pieces
// with equal radical.
inline DecompositionOutput monomial_decompose(const Ideal& I) {
    auto mons = detail::monomial_generators(I);
    if (mons.empty()) throw EngineError("monomial engine needs a nonzero ideal");
    if (detail::mono_member(Monomial(I.ring()->n(), 0), mons))
        throw EngineError("monomial engine needs a proper ideal");

    std::vector<std::vector<Monomial>> irr;
    detail::irreducible_split(mons, irr);
    std::sort(irr.begin(), irr.end());
    irr.erase(std::unique(irr.begin(), irr.end(),
                          [](const auto& a, const auto& b) {
                              return detail::mono_ideal_equal(a, b);
                          }),
              irr.end());
    detail::minimize_mono_components(irr);

    // Aggregate by radical (the support set).
    std::vector<std::pair<std::vector<int>, std::vector<Monomial>>> groups;
    for (const auto& c : irr) {
        std::vector<int> supp;
        std::vector<bool> used(I.ring()->n(), false);
        for (const auto& m : c)
            for (size_t v = 0; v < m.size(); ++v)
                if (m[v] > 0) used[v] = true;
        for (size_t v = 0; v < used.size(); ++v)
            if (used[v]) supp.push_back(static_cast<int>(v));
        bool merged = false;
        for (auto& [gs, gm] : groups)
            if (gs == supp) {
                gm = detail::mono_ideal_intersect(gm, c);
                merged = true;
                break;
            }
        if (!merged) groups.push_back({supp, c});
    }
    std::vector<std::vector<Monomial>> prims;
    for (auto& [s, g] : groups) prims.push_back(g);
    detail::minimize_mono_components(prims);

    DecompositionOutput out;
    out.source = DecompositionSource::monomial_engine;
    for (const auto& g : prims)
        out.components.push_back({detail::ideal_from_monomials(I.ring(), g),
                                  detail::support_prime(I.ring(), g)});
    order_components(out.components);
    return out;
}

inline std::pair<std::vector<Ideal>, std::vector<PrimaryComponent>> monomial_ass_and_decompose(
    const Ideal& I) {
    DecompositionOutput d = monomial_decompose(I);
    std::vector<Ideal> primes;
    for (const auto& c : d.components) primes.push_back(c.prime);
    return {primes, d.components};
}

// ---------------------------------------------------------------------------
// Standard pairs of a monomial ideal: pairs (u, Z) with u supported off Z
// such that u * K[Z] lies in the standard monomials, maximal under cone
// inclusion. The associated prime of a pair is generated by the variables
// outside Z; the pair count equals the arithmetic multiplicity.

inline std::vector<StandardPair> standard_pairs(const Ideal& I) {
    auto gens = detail::monomial_generators(I);
    if (gens.empty()) throw EngineError("standard pairs need a nonzero monomial ideal");
    size_t n = I.ring()->n();
    if (detail::mono_member(Monomial(n, 0), gens))
        throw EngineError("standard pairs need a proper ideal");

    std::vector<int> bound(n, 0);
    for (const auto& g : gens)
        for (size_t v = 0; v < n; ++v) bound[v] = std::max(bound[v], g[v]);
    for (auto& b : bound) b = std::max(b - 1, 0);

    struct Pair {
        Monomial u;
        unsigned z;
    };
    std::vector<Pair> admissible;
    for (unsigned z = 0; z < (1u << n); ++z) {
        // Enumerate u with u_v in [0, bound_v], u_v = 0 on Z.
        Monomial u(n, 0);
        while (true) {
            bool ok = true;
            for (const auto& g : gens) {
                bool div = true;
                for (size_t v = 0; v < n; ++v) {
                    int e = (z >> v) & 1 ? 0 : g[v];
                    if (e > u[v]) { div = false; break; }
                }
                if (div) { ok = false; break; }
            }
            if (ok) admissible.push_back({u, z});
            size_t v = 0;
            while (v < n && ((z >> v) & 1 || u[v] == bound[v])) {
                if (!((z >> v) & 1)) u[v] = 0;
                ++v;
            }
            if (v == n) break;
            ++u[v];
        }
    }

    std::vector<StandardPair> out;
    for (const auto& a : admissible) {
        bool dominated = false;
        for (const auto& b : admissible) {
            if (a.u == b.u && a.z == b.z) continue;
            if ((a.z & b.z) != a.z) continue;
            bool sub = true;
            for (size_t v = 0; v < n; ++v)
                if (!((b.z >> v) & 1) && a.u[v] != b.u[v]) { sub = false; break; }
            if (sub) { dominated = true; break; }
        }
        if (dominated) continue;
        std::vector<Polynomial> pg;
        for (size_t v = 0; v < n; ++v)
            if (!((a.z >> v) & 1)) pg.push_back(Polynomial::variable(I.ring(), static_cast<int>(v)));
        out.push_back({a.u, Ideal(I.ring(), pg)});
    }
    MonomialOrder grevlex = MonomialOrder::grevlex_order();
    std::sort(out.begin(), out.end(), [&](const StandardPair& a, const StandardPair& b) {
        if (!ideal_equal(a.prime, b.prime)) return prime_before(a.prime, b.prime);
        return cmp_monomials(grevlex, a.monomial, b.monomial) < 0;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Zero-dimensional engine over QQ(S), S possibly empty. Components are
// emitted as generator-level ideals over the full polynomial ring; when S
// is nonempty they carry QQ(S)-semantics and the caller contracts them.

namespace detail {

inline std::vector<RationalFunction> fp_coords_on(const FieldPoly& p,
                                                  const std::vector<Monomial>& stds,
                                                  const RingPtr& block_ring) {
    std::vector<RationalFunction> out(stds.size(), RationalFunction::scalar(block_ring, 0));
    const MonomialOrder& order = block_ring->order;
    for (const auto& t : p.terms()) {
        auto it = std::lower_bound(stds.begin(), stds.end(), t.mono,
                                   [&](const Monomial& a, const Monomial& b) {
                                       return cmp_monomials(order, a, b) < 0;
                                   });
        if (it == stds.end() || !(*it == t.mono))
            throw DataIntegrityError("normal form left a non-standard monomial");
        out[static_cast<size_t>(it - stds.begin())] = t.coef;
    }
    return out;
}

// Monic minimal polynomial of elem in QQ(S)[deps]/I, as dense coefficients
// c_0..c_d over the block ring, c_d = 1.
inline std::vector<RationalFunction> min_poly_coords(const Polynomial& elem,
                                                     const FractionFieldBasis& basis,
                                                     const std::vector<Monomial>& stds) {
    const RingPtr& br = basis.block_ring;
    RationalFunctionField F{br};
    FieldPoly t = fp_normal_form(field_poly_from(poly_convert(elem, br), br, basis.basis_vars),
                                 basis.gens);
    std::vector<std::vector<RationalFunction>> powers;
    FieldPoly cur = field_poly_from(Polynomial::constant(br, 1), br, basis.basis_vars);
    powers.push_back(fp_coords_on(cur, stds, br));
    for (size_t k = 1; k <= stds.size(); ++k) {
        cur = fp_normal_form(fp_mul(cur, t), basis.gens);
        std::vector<RationalFunction> target = fp_coords_on(cur, stds, br);
        // Express target in the span of the previous powers.
        std::vector<std::vector<RationalFunction>> m(stds.size(),
                                                     std::vector<RationalFunction>(k, F.zero()));
        for (size_t i = 0; i < stds.size(); ++i)
            for (size_t j = 0; j < k; ++j) m[i][j] = powers[j][i];
        auto sol = linear_solve(m, target, F);
        if (sol) {
            std::vector<RationalFunction> coeffs(k + 1, F.zero());
            for (size_t j = 0; j < k; ++j) coeffs[j] = rf_neg((*sol)[j]);
            coeffs[k] = F.one();
            return coeffs;
        }
        powers.push_back(std::move(target));
    }
    throw DataIntegrityError("no minimal polynomial within the algebra dimension");
}

inline RationalFunction rf_convert_ring(const RationalFunction& a, const RingPtr& ring) {
    if (a.is_zero()) return RationalFunction::scalar(ring, 0);
    return RationalFunction(poly_convert(a.num(), ring), poly_convert(a.den(), ring));
}

// Clear denominators into a polynomial in the ring extended by a fresh
// variable holding the element.
inline Polynomial min_poly_cleared(const std::vector<RationalFunction>& coeffs,
                                   const RingPtr& ext, int tvar, const RingPtr& plain) {
    Polynomial L = Polynomial::constant(plain, 1);
    std::vector<RationalFunction> cs;
    for (const auto& c : coeffs) {
        RationalFunction r = rf_convert_ring(c, plain);
        cs.push_back(r);
        if (!r.is_zero()) L = poly_lcm(L, r.den());
    }
    Polynomial out = Polynomial::zero(ext);
    for (size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        Polynomial coef = poly_mul(cs[k].num(), poly_exact_div(L, cs[k].den()));
        Monomial tm(ext->n(), 0);
        tm[tvar] = static_cast<int>(k);
        out = poly_add(out, poly_mul(extend_poly(coef, ext),
                                     Polynomial::term(ext, tm, 1)));
    }
    return poly_primitive_part(out);
}

struct ElementFactorization {
    std::vector<std::pair<Polynomial, int>> factors;  // substituted back, in the plain ring
    Polynomial squarefree_part;                       // product of distinct factors at the element
};

// Factor the minimal polynomial of elem and substitute the element back in.
inline ElementFactorization factor_min_poly(const Polynomial& elem,
                                            const FractionFieldBasis& basis,
                                            const std::vector<Monomial>& stds, unsigned seed,
                                            int degree_budget) {
    const RingPtr& plain = basis.ring;
    auto coeffs = min_poly_coords(elem, basis, stds);
    auto [ext, tvar] = extend_ring(plain);
    Polynomial cleared = min_poly_cleared(coeffs, ext, tvar, plain);
    std::vector<int> params;
    for (int v : basis.basis_vars) params.push_back(v);
    UnivariateFactors fac = factor_univariate(cleared, tvar, params, seed, degree_budget);

    ElementFactorization out;
    out.squarefree_part = Polynomial::constant(plain, 1);
    Polynomial elem_ext = extend_poly(elem, ext);
    for (const auto& [f, mult] : fac.factors) {
        Polynomial sub = restrict_poly(poly_substitute(f, tvar, elem_ext), plain);
        sub = poly_primitive_part(sub);
        out.factors.push_back({sub, mult});
        out.squarefree_part = poly_mul(out.squarefree_part, sub);
    }
    return out;
}

inline int min_poly_degree(const Polynomial& elem, const FractionFieldBasis& basis,
                           const std::vector<Monomial>& stds) {
    return static_cast<int>(min_poly_coords(elem, basis, stds).size()) - 1;
}

inline void zero_dim_rec(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const std::vector<int>& basis_vars, unsigned seed, int degree_budget,
                         std::vector<PrimaryComponent>& out) {
    FractionFieldBasis basis = gb_over_fraction_field(ring, gens, basis_vars);
    if (basis.is_trivial()) throw EngineError("zero-dimensional engine needs a proper ideal");
    std::vector<Monomial> stds = standard_monomials(basis);

    // Cheap per-variable splits first, collecting squarefree parts for the
    // radical along the way.
    std::vector<Polynomial> rad_gens = gens;
    for (int v : basis.dep_vars) {
        Polynomial xv = Polynomial::variable(ring, v);
        ElementFactorization fac = factor_min_poly(xv, basis, stds, seed, degree_budget);
        if (fac.factors.size() >= 2) {
            for (const auto& [f, mult] : fac.factors) {
                std::vector<Polynomial> sub = gens;
                sub.push_back(poly_pow(f, mult));
                zero_dim_rec(ring, sub, basis_vars, seed, degree_budget, out);
            }
            return;
        }
        if (fac.factors.size() == 1 && fac.factors[0].second > 1)
            rad_gens.push_back(fac.factors[0].first);
    }

    FractionFieldBasis rad_basis = gb_over_fraction_field(ring, rad_gens, basis_vars);
    std::vector<Monomial> rad_stds = standard_monomials(rad_basis);
    int Drad = static_cast<int>(rad_stds.size());

    // Separating element: single variables first, then seeded random
    // integer combinations of the dependent variables.
    std::mt19937 rng(seed * 7919u + 17u);
    std::uniform_int_distribution<int> pick(-9, 9);
    Polynomial sep = Polynomial::zero(ring);
    bool found = false;
    for (int v : basis.dep_vars) {
        Polynomial xv = Polynomial::variable(ring, v);
        if (min_poly_degree(xv, rad_basis, rad_stds) == Drad) {
            sep = xv;
            found = true;
            break;
        }
    }
    for (int tries = 0; !found && tries < 20; ++tries) {
        Polynomial cand = Polynomial::zero(ring);
        for (int v : basis.dep_vars)
            cand = poly_add(cand, poly_scale(Polynomial::variable(ring, v), pick(rng)));
        if (cand.is_zero()) continue;
        if (min_poly_degree(cand, rad_basis, rad_stds) == Drad) {
            sep = cand;
            found = true;
        }
    }
    if (!found)
        throw EngineError("no separating linear form found for the zero-dimensional engine");

    ElementFactorization fac = factor_min_poly(sep, basis, stds, seed, degree_budget);
    if (fac.factors.size() == 1 && fac.factors[0].second == 1) {
        // I is already prime: its radical equals it and the minimal
        // polynomial of the separating element is irreducible of full degree.
        out.push_back({Ideal(ring, gens), Ideal(ring, rad_gens)});
        return;
    }
    for (const auto& [f, mult] : fac.factors) {
        std::vector<Polynomial> qg = gens, pg = rad_gens;
        qg.push_back(poly_pow(f, mult));
        pg.push_back(f);
        out.push_back({Ideal(ring, qg), Ideal(ring, pg)});
    }
}

}  // namespace detail

// Decompose an ideal that is zero-dimensional over QQ(basis_vars). With an
// empty basis set this is a complete primary decomposition over QQ; with
// parameters the components generate the localized components and the
// caller contracts them back.
inline std::vector<PrimaryComponent> zero_dim_decompose(const Ideal& I,
                                                        std::vector<int> basis_vars = {},
                                                        unsigned seed = 0,
                                                        int degree_budget =
                                                            config::default_factor_degree_budget) {
    std::sort(basis_vars.begin(), basis_vars.end());
    std::vector<PrimaryComponent> out;
    detail::zero_dim_rec(I.ring(), I.gens(), basis_vars, seed, degree_budget, out);
    order_components(out);
    return out;
}

// ---------------------------------------------------------------------------
// General engine.

namespace detail {

// Contract an ideal given by generators with QQ(U)-semantics back to the
// polynomial ring: saturate at the product of the QQ[U] leading
// coefficients of its basis over QQ(U).
inline Ideal contract_from_fraction_field(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                          const std::vector<int>& basis_vars) {
    Ideal I(ring, gens);
    if (basis_vars.empty()) return I;
    FractionFieldBasis fb = gb_over_fraction_field(ring, gens, basis_vars);
    Polynomial h = Polynomial::constant(ring, 1);
    for (const auto& c : fb.lead_coefficients) h = poly_mul(h, c);
    if (h.is_constant()) return I;
    return saturate(I, h).ideal;
}

inline void gtz_rec(const Ideal& I, unsigned seed, int degree_budget,
                    std::vector<PrimaryComponent>& out) {
    DimensionResult dim = dimension(I);
    if (dim.dim == 0) {
        auto comps = zero_dim_decompose(I, {}, seed, degree_budget);
        out.insert(out.end(), comps.begin(), comps.end());
        return;
    }
    std::vector<int> U = dim.witnesses.front();
    FractionFieldBasis fb = gb_over_fraction_field(I.ring(), I.gens(), U);
    Polynomial h = Polynomial::constant(I.ring(), 1);
    for (const auto& c : fb.lead_coefficients) h = poly_mul(h, c);

    auto raw = zero_dim_decompose(I, U, seed, degree_budget);
    for (const auto& c : raw)
        out.push_back({contract_from_fraction_field(I.ring(), c.primary.gens(), U),
                       contract_from_fraction_field(I.ring(), c.prime.gens(), U)});

    if (h.is_constant()) return;
    SaturationResult sat = saturate(I, h);
    if (sat.exponent == 0) return;
    Ideal rest = ideal_sum(I, Ideal(I.ring(), {poly_pow(h, sat.exponent)}));
    if (rest.is_unit()) return;
    gtz_rec(rest, seed, degree_budget, out);
}

inline Ideal intersect_all(const std::vector<PrimaryComponent>& cs, const RingPtr& ring) {
    if (cs.empty()) return unit_ideal(ring);
    Ideal acc = cs.front().primary;
    for (size_t i = 1; i < cs.size(); ++i) acc = intersect(acc, cs[i].primary);
    return acc;
}

// Merge equal primes, then drop components containing the intersection of
// the others until the decomposition is irredundant.
inline void consolidate_components(std::vector<PrimaryComponent>& cs, const RingPtr& ring) {
    std::vector<PrimaryComponent> merged;
    for (auto& c : cs) {
        bool done = false;
        for (auto& m : merged)
            if (ideal_equal(m.prime, c.prime)) {
                m.primary = intersect(m.primary, c.primary);
                done = true;
                break;
            }
        if (!done) merged.push_back(c);
    }
    cs = std::move(merged);
    order_components(cs);
    bool changed = true;
    while (changed && cs.size() > 1) {
        changed = false;
        for (size_t i = 0; i < cs.size(); ++i) {
            std::vector<PrimaryComponent> rest;
            for (size_t j = 0; j < cs.size(); ++j)
                if (j != i) rest.push_back(cs[j]);
            if (ideal_contains(cs[i].primary, intersect_all(rest, ring))) {
                cs.erase(cs.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
}

inline bool all_generators_monomial(const Ideal& I) {
    if (I.gens().empty()) return false;
    for (const auto& g : I.gens())
        if (g.terms().size() != 1) return false;
    return true;
}

}  // namespace detail

// Minimal primary decomposition of a proper ideal. The zero ideal yields
// itself as its single prime component.
inline DecompositionOutput primary_decomposition(const Ideal& I, unsigned seed = 0,
                                                 int degree_budget =
                                                     config::default_factor_degree_budget) {
    DecompositionOutput out;
    if (I.is_zero_ideal()) {
        Ideal z(I.ring(), {});
        out.components.push_back({z, z});
        out.source = DecompositionSource::gtz_engine;
        return out;
    }
    if (I.is_unit()) throw EngineError("the unit ideal has no primary decomposition");

    if (detail::all_generators_monomial(I)) return monomial_decompose(I);

    if (dimension(I).dim == 0) {
        out.components = zero_dim_decompose(I, {}, seed, degree_budget);
        out.source = DecompositionSource::zerodim_engine;
    } else {
        detail::gtz_rec(I, seed, degree_budget, out.components);
        out.source = DecompositionSource::gtz_engine;
    }
    detail::consolidate_components(out.components, I.ring());
    if (!ideal_equal(detail::intersect_all(out.components, I.ring()), I))
        throw DataIntegrityError("intersection of the computed components misses the ideal");
    order_components(out.components);
    return out;
}

inline std::vector<Ideal> associated_primes(const Ideal& I, unsigned seed = 0,
                                            int degree_budget =
                                                config::default_factor_degree_budget) {
    DecompositionOutput d = primary_decomposition(I, seed, degree_budget);
    std::vector<Ideal> primes;
    for (const auto& c : d.components) primes.push_back(c.prime);
    return primes;
}

// Sanity checks for an externally supplied associated-prime list: each
// prime proper and containing the ideal. Primality itself is trusted.
inline std::vector<Ideal> supplied_primes_check(const Ideal& I, std::vector<Ideal> primes) {
    if (primes.empty()) throw DataIntegrityError("supplied prime list is empty");
    for (const auto& p : primes) {
        if (p.is_unit()) throw DataIntegrityError("supplied prime is the unit ideal");
        if (!ideal_contains(p, I))
            throw DataIntegrityError("supplied prime does not contain the ideal");
    }
    std::vector<Ideal> dedup;
    for (const auto& p : primes) {
        bool seen = false;
        for (const auto& q : dedup)
            if (ideal_equal(p, q)) seen = true;
        if (!seen) dedup.push_back(p);
    }
    order_primes(dedup);
    return dedup;
}

}  // namespace noethops
