// Polynomials over the coefficient field QQ(S) and Groebner bases relative
// to an independent variable set S.
//
// The computation itself happens over QQ: a Groebner basis under a block
// order with the dependent variables leading is also a Groebner basis of
// the extended ideal over QQ(S). This file converts such a basis into the
// reduced monic basis with rational-function coefficients, records the
// denominators met on the way, and provides division and standard-monomial
// enumeration over QQ(S).
#pragma once

#include <deque>
#include <set>

#include "noethops/groebner.hpp"
#include "noethops/linalg.hpp"

namespace noethops {

struct FTerm {
    Monomial mono;  // supported on the dependent variables only
    RationalFunction coef;
};

// Polynomial in the dependent variables with QQ(S) coefficients. The ring
// pointer carries the block order (dependent variables leading) used for
// term sorting.
class FieldPoly {
public:
    FieldPoly() = default;
    FieldPoly(RingPtr block_ring, std::vector<FTerm> sorted_terms)
        : ring_(std::move(block_ring)), terms_(std::move(sorted_terms)) {}

    static FieldPoly zero(const RingPtr& block_ring) { return FieldPoly(block_ring, {}); }

    const RingPtr& ring() const { return ring_; }
    const std::vector<FTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw EngineError("leading term of zero");
        return terms_.front().mono;
    }
    const RationalFunction& leading_coefficient() const {
        if (terms_.empty()) throw EngineError("leading term of zero");
        return terms_.front().coef;
    }

private:
    RingPtr ring_;
    std::vector<FTerm> terms_;
};

namespace detail {

inline std::vector<FTerm> merge_fterms(const RingPtr& ring, std::vector<FTerm> ts) {
    std::sort(ts.begin(), ts.end(), [&](const FTerm& a, const FTerm& b) {
        return cmp_monomials(ring->order, a.mono, b.mono) > 0;
    });
    std::vector<FTerm> out;
    for (auto& t : ts) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coef = rf_add(out.back().coef, t.coef);
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const FTerm& t) { return t.coef.is_zero(); });
    return out;
}

}  // namespace detail

// Splits an ordinary polynomial into dependent monomials with QQ(S)
// coefficients (the S-variable parts join the coefficients).
inline FieldPoly field_poly_from(const Polynomial& p, const RingPtr& block_ring,
                                 const std::vector<int>& basis_vars) {
    std::vector<FTerm> ts;
    std::map<Monomial, Polynomial> groups;
    for (const auto& t : p.terms()) {
        Monomial dep = t.mono, base(t.mono.size(), 0);
        for (int v : basis_vars) {
            base[v] = dep[v];
            dep[v] = 0;
        }
        auto it = groups.find(dep);
        Polynomial piece = Polynomial::term(block_ring, base, t.coef);
        if (it == groups.end())
            groups.emplace(dep, piece);
        else
            it->second = poly_add(it->second, piece);
    }
    for (auto& [mono, coefpoly] : groups) {
        if (coefpoly.is_zero()) continue;
        ts.push_back({mono, RationalFunction::from_poly(coefpoly)});
    }
    return FieldPoly(block_ring, detail::merge_fterms(block_ring, std::move(ts)));
}

inline FieldPoly fp_add(const FieldPoly& a, const FieldPoly& b) {
    std::vector<FTerm> ts = a.terms();
    ts.insert(ts.end(), b.terms().begin(), b.terms().end());
    return FieldPoly(a.ring(), detail::merge_fterms(a.ring(), std::move(ts)));
}

inline FieldPoly fp_scale(const FieldPoly& a, const RationalFunction& c) {
    if (c.is_zero()) return FieldPoly::zero(a.ring());
    std::vector<FTerm> ts = a.terms();
    for (auto& t : ts) t.coef = rf_mul(t.coef, c);
    return FieldPoly(a.ring(), std::move(ts));
}

inline FieldPoly fp_term_mul(const FieldPoly& a, const Monomial& m, const RationalFunction& c) {
    if (c.is_zero()) return FieldPoly::zero(a.ring());
    std::vector<FTerm> ts = a.terms();
    for (auto& t : ts) {
        t.mono = monomial_mul(t.mono, m);
        t.coef = rf_mul(t.coef, c);
    }
    return FieldPoly(a.ring(), std::move(ts));
}

inline FieldPoly fp_sub(const FieldPoly& a, const FieldPoly& b) {
    return fp_add(a, fp_scale(b, RationalFunction::scalar(a.ring(), -1)));
}

inline FieldPoly fp_mul(const FieldPoly& a, const FieldPoly& b) {
    std::vector<FTerm> ts;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            ts.push_back({monomial_mul(ta.mono, tb.mono), rf_mul(ta.coef, tb.coef)});
    return FieldPoly(a.ring(), detail::merge_fterms(a.ring(), std::move(ts)));
}

inline FieldPoly fp_monic(const FieldPoly& a) {
    if (a.is_zero()) return a;
    return fp_scale(a, rf_invert(a.leading_coefficient()));
}

// Full normal form against a list of (monic) divisors over QQ(S).
inline FieldPoly fp_normal_form(FieldPoly p, const std::vector<FieldPoly>& divisors) {
    std::vector<FTerm> rem;
    while (!p.is_zero()) {
        const FTerm lt = p.terms().front();
        bool hit = false;
        for (const auto& g : divisors) {
            if (g.is_zero() || !monomial_divides(g.leading_monomial(), lt.mono)) continue;
            Monomial m = monomial_div(lt.mono, g.leading_monomial());
            RationalFunction c = rf_div(lt.coef, g.leading_coefficient());
            p = fp_sub(p, fp_term_mul(g, m, c));
            hit = true;
            break;
        }
        if (!hit) {
            rem.push_back(lt);
            p = fp_sub(p, FieldPoly(p.ring(), {lt}));
        }
    }
    return FieldPoly(p.ring(), detail::merge_fterms(p.ring(), std::move(rem)));
}

// Clears denominators: returns (g, d) with g in QQ[x], d in QQ[S], and
// g = d * (the input) as elements over QQ(S).
inline std::pair<Polynomial, Polynomial> fp_clear_denominators(const FieldPoly& a,
                                                               const RingPtr& plain_ring) {
    Polynomial den = Polynomial::constant(plain_ring, 1);
    for (const auto& t : a.terms()) {
        RationalFunction r = t.coef.reduced();
        den = poly_lcm(den, poly_convert(r.den(), plain_ring));
    }
    Polynomial out = Polynomial::zero(plain_ring);
    for (const auto& t : a.terms()) {
        RationalFunction r = t.coef.reduced();
        Polynomial c = poly_mul(poly_convert(r.num(), plain_ring),
                                poly_exact_div(den, poly_convert(r.den(), plain_ring)));
        out = poly_add(out, poly_term_mul(c, t.mono, 1));
    }
    return {out, den};
}

struct FractionFieldBasis {
    RingPtr ring;        // the ambient ring, original order
    RingPtr block_ring;  // same variables, dependent-block order
    std::vector<int> basis_vars;
    std::vector<int> dep_vars;
    std::vector<FieldPoly> gens;                // reduced, monic, decreasing leading terms
    std::vector<Polynomial> denominators;       // QQ[S] denominators, {1} when none
    std::vector<Polynomial> lead_coefficients;  // QQ[S] leading coefficients before monic
    GroebnerBasis block_gb;                     // the underlying QQ basis

    bool is_trivial() const { return gens.size() == 1 && is_unit_monomial(gens[0].leading_monomial()); }
};

// Reduced Groebner basis of <gens> over QQ(S) in the dependent variables.
// Throws when S is not independent for the ideal (a leading term lies in
// QQ[S], or the ideal is the unit ideal). `allow_unit` relaxes that for
// internal callers that handle the unit ideal themselves.
inline FractionFieldBasis gb_over_fraction_field(const RingPtr& ring,
                                                 const std::vector<Polynomial>& gens,
                                                 std::vector<int> basis_vars,
                                                 OrderKind dep_kind = OrderKind::grevlex,
                                                 bool allow_unit = false) {
    std::sort(basis_vars.begin(), basis_vars.end());
    std::vector<int> dep_vars;
    for (int v = 0; v < static_cast<int>(ring->n()); ++v)
        if (!std::binary_search(basis_vars.begin(), basis_vars.end(), v))
            dep_vars.push_back(v);

    MonomialOrder block = MonomialOrder::block_order(dep_vars, dep_kind);
    GroebnerBasis qq = buchberger(ring, gens, block);
    RingPtr block_ring = qq.ring;

    FractionFieldBasis out;
    out.ring = ring;
    out.block_ring = block_ring;
    out.basis_vars = basis_vars;
    out.dep_vars = dep_vars;
    out.block_gb = qq;

    for (const auto& g : qq.gens) {
        bool lead_in_s = true;
        for (int v : dep_vars)
            if (g.leading_monomial()[v] > 0) { lead_in_s = false; break; }
        if (lead_in_s && !allow_unit)
            throw EngineError("variable set is not independent for the ideal");
        if (lead_in_s) {
            // Unit ideal over QQ(S): some element lies in QQ[S] \ {0}.
            out.gens = {field_poly_from(Polynomial::constant(block_ring, 1), block_ring,
                                        basis_vars)};
            out.denominators = {Polynomial::constant(ring, 1)};
            out.lead_coefficients = {poly_convert(poly_primitive_part(g), ring)};
            return out;
        }
    }

    std::vector<FieldPoly> fps;
    for (const auto& g : qq.gens) fps.push_back(field_poly_from(g, block_ring, basis_vars));

    // Minimal generators over QQ(S): keep those whose dependent leading
    // monomial no other element divides.
    std::vector<FieldPoly> minimal;
    for (size_t i = 0; i < fps.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < fps.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& li = fps[i].leading_monomial();
            const Monomial& lj = fps[j].leading_monomial();
            if (monomial_divides(lj, li) && (li != lj || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(fps[i]);
    }

    for (const auto& g : minimal) {
        RationalFunction lc = g.leading_coefficient().reduced();
        Polynomial lead = poly_primitive_part(
            poly_convert(poly_mul(lc.num(), lc.den()), ring));
        if (!lead.is_constant()) out.lead_coefficients.push_back(lead);
    }

    // Interreduce and normalize to the unique reduced monic basis.
    std::vector<FieldPoly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<FieldPoly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        FieldPoly nf = fp_normal_form(minimal[i], others);
        if (!nf.is_zero()) reduced.push_back(fp_monic(nf));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const FieldPoly& a, const FieldPoly& b) {
        return cmp_monomials(block_ring->order, a.leading_monomial(), b.leading_monomial()) > 0;
    });
    out.gens = std::move(reduced);

    std::vector<Polynomial> dens;
    for (const auto& g : out.gens)
        for (const auto& t : g.terms()) {
            RationalFunction r = t.coef.reduced();
            if (!r.den().is_constant()) dens.push_back(poly_convert(r.den(), ring));
        }
    std::sort(dens.begin(), dens.end(),
              [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) < 0; });
    dens.erase(std::unique(dens.begin(), dens.end(),
                           [](const Polynomial& a, const Polynomial& b) { return a == b; }),
               dens.end());
    if (dens.empty()) dens.push_back(Polynomial::constant(ring, 1));
    out.denominators = std::move(dens);

    std::sort(out.lead_coefficients.begin(), out.lead_coefficients.end(),
              [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) < 0; });
    out.lead_coefficients.erase(
        std::unique(out.lead_coefficients.begin(), out.lead_coefficients.end(),
                    [](const Polynomial& a, const Polynomial& b) { return a == b; }),
        out.lead_coefficients.end());

    return out;
}

// Normal form of an ordinary polynomial against the fraction-field basis.
inline FieldPoly fp_reduce(const Polynomial& f, const FractionFieldBasis& basis) {
    FieldPoly p = field_poly_from(poly_convert(f, basis.block_ring), basis.block_ring,
                                  basis.basis_vars);
    return fp_normal_form(std::move(p), basis.gens);
}

// Monomials in the dependent variables outside the leading-term ideal,
// listed in increasing order; throws when the count exceeds `cap` (the
// extension is then not zero-dimensional over QQ(S)).
inline std::vector<Monomial> standard_monomials(const FractionFieldBasis& basis,
                                                size_t cap = 200000) {
    std::vector<Monomial> lts;
    for (const auto& g : basis.gens) lts.push_back(g.leading_monomial());

    auto blocked = [&](const Monomial& m) {
        for (const auto& lt : lts)
            if (monomial_divides(lt, m)) return true;
        return false;
    };

    size_t n = basis.ring->n();
    std::set<Monomial> seen;
    std::deque<Monomial> queue;
    Monomial unit(n, 0);
    if (!blocked(unit)) {
        seen.insert(unit);
        queue.push_back(unit);
    }
    while (!queue.empty()) {
        Monomial m = queue.front();
        queue.pop_front();
        for (int v : basis.dep_vars) {
            Monomial next = m;
            next[v] += 1;
            if (blocked(next) || seen.count(next)) continue;
            seen.insert(next);
            if (seen.size() > cap)
                throw EngineError("ideal is not zero-dimensional over QQ(S)");
            queue.push_back(next);
        }
    }
    std::vector<Monomial> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        return cmp_monomials(basis.block_ring->order, a, b) < 0;
    });
    return out;
}

}  // namespace noethops
