// The residue field F = k(p) of a prime ideal, realized as
// QQ(S)[dependent variables]/p for a maximal independent set S. Elements
// are stored as coordinate vectors over QQ(S) on the standard monomials,
// which makes Gaussian elimination over F direct.
#pragma once

#include "noethops/fraction_field.hpp"
#include "noethops/ideal.hpp"
#include "noethops/linalg.hpp"

namespace noethops {

struct ResidueFieldContext {
    Ideal prime;
    std::vector<int> basis_vars;  // S, sorted
    FractionFieldBasis gb;        // reduced basis of p over QQ(S)
    std::vector<Monomial> std_monomials;  // increasing, the unit monomial first

    size_t D() const { return std_monomials.size(); }

    int monomial_index(const Monomial& m) const {
        auto it = std::lower_bound(std_monomials.begin(), std_monomials.end(), m,
                                   [&](const Monomial& a, const Monomial& b) {
                                       return cmp_monomials(gb.block_ring->order, a, b) < 0;
                                   });
        if (it == std_monomials.end() || !(*it == m)) return -1;
        return static_cast<int>(it - std_monomials.begin());
    }
};

inline ResidueFieldContext make_context(const Ideal& p, std::vector<int> basis_vars) {
    std::sort(basis_vars.begin(), basis_vars.end());
    ResidueFieldContext ctx;
    ctx.prime = p;
    ctx.basis_vars = basis_vars;
    try {
        ctx.gb = gb_over_fraction_field(p.ring(), p.gens(), basis_vars);
        ctx.std_monomials = standard_monomials(ctx.gb);
    } catch (const EngineError& e) {
        throw EngineError(std::string("variable set is not a basis modulo the prime: ") +
                          e.what());
    }
    return ctx;
}

// Coordinates over QQ(S) on the context's standard monomials.
struct ResidueElement {
    const ResidueFieldContext* ctx = nullptr;
    std::vector<RationalFunction> coords;

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }
};

namespace detail {

inline RationalFunction rf_convert(const RationalFunction& a, const RingPtr& ring) {
    if (a.is_zero()) return RationalFunction::scalar(ring, 0);
    return RationalFunction(poly_convert(a.num(), ring), poly_convert(a.den(), ring));
}

// Coordinates are reported over the caller's ring, not the internal block
// order, so downstream arithmetic and printing stay in the ambient ring.
inline ResidueElement coords_from_fieldpoly(const ResidueFieldContext& ctx, const FieldPoly& p) {
    ResidueElement out;
    out.ctx = &ctx;
    out.coords.assign(ctx.D(), RationalFunction::scalar(ctx.prime.ring(), 0));
    for (const auto& t : p.terms()) {
        int idx = ctx.monomial_index(t.mono);
        if (idx < 0) throw DataIntegrityError("normal form left a non-standard monomial");
        out.coords[idx] = rf_convert(t.coef, ctx.prime.ring());
    }
    return out;
}

inline FieldPoly fieldpoly_from_coords(const ResidueFieldContext& ctx,
                                       const std::vector<RationalFunction>& coords) {
    std::vector<FTerm> ts;
    for (size_t i = coords.size(); i-- > 0;) {
        if (coords[i].is_zero()) continue;
        ts.push_back({ctx.std_monomials[i], rf_convert(coords[i], ctx.gb.block_ring)});
    }
    // std_monomials are increasing, so the reversed walk is decreasing.
    return FieldPoly(ctx.gb.block_ring, std::move(ts));
}

}  // namespace detail

// Normal-form coordinates of f modulo the prime.
inline ResidueElement rf_reduce(const Polynomial& f, const ResidueFieldContext& ctx) {
    return detail::coords_from_fieldpoly(ctx, fp_reduce(f, ctx.gb));
}

inline ResidueElement re_zero(const ResidueFieldContext& ctx) {
    ResidueElement out;
    out.ctx = &ctx;
    out.coords.assign(ctx.D(), RationalFunction::scalar(ctx.prime.ring(), 0));
    return out;
}

inline ResidueElement re_one(const ResidueFieldContext& ctx) {
    ResidueElement out = re_zero(ctx);
    out.coords[0] = RationalFunction::scalar(ctx.prime.ring(), 1);
    return out;
}

namespace detail {
inline void require_same_context(const ResidueElement& a, const ResidueElement& b) {
    if (a.ctx == nullptr || a.ctx != b.ctx)
        throw EngineError("residue elements belong to different contexts");
}
}  // namespace detail

inline ResidueElement re_add(const ResidueElement& a, const ResidueElement& b) {
    detail::require_same_context(a, b);
    ResidueElement out = a;
    for (size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] = rf_add(out.coords[i], b.coords[i]);
    return out;
}

inline ResidueElement re_sub(const ResidueElement& a, const ResidueElement& b) {
    detail::require_same_context(a, b);
    ResidueElement out = a;
    for (size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] = rf_sub(out.coords[i], b.coords[i]);
    return out;
}

inline ResidueElement re_scale(const ResidueElement& a, const RationalFunction& c) {
    ResidueElement out = a;
    for (auto& x : out.coords) x = rf_mul(x, c);
    return out;
}

inline ResidueElement re_mul(const ResidueElement& a, const ResidueElement& b) {
    detail::require_same_context(a, b);
    FieldPoly prod = fp_mul(detail::fieldpoly_from_coords(*a.ctx, a.coords),
                            detail::fieldpoly_from_coords(*b.ctx, b.coords));
    return detail::coords_from_fieldpoly(*a.ctx, fp_normal_form(std::move(prod), a.ctx->gb.gens));
}

inline bool re_equal(const ResidueElement& a, const ResidueElement& b) {
    detail::require_same_context(a, b);
    for (size_t i = 0; i < a.coords.size(); ++i)
        if (!(a.coords[i] == b.coords[i])) return false;
    return true;
}

// Inverse in F, by solving the D x D multiplication-by-a system over
// QQ(S). A singular system means the residue ring is not a field, i.e. the
// claimed prime is not prime.
inline ResidueElement rf_invert(const ResidueElement& a) {
    if (a.ctx == nullptr) throw EngineError("residue element without context");
    if (a.is_zero()) throw EngineError("inverting zero in the residue field");
    const ResidueFieldContext& ctx = *a.ctx;
    size_t D = ctx.D();
    RationalFunctionField F{ctx.prime.ring()};

    FieldPoly av = detail::fieldpoly_from_coords(ctx, a.coords);
    std::vector<std::vector<RationalFunction>> M(D, std::vector<RationalFunction>(D, F.zero()));
    for (size_t j = 0; j < D; ++j) {
        FieldPoly col = fp_normal_form(
            fp_term_mul(av, ctx.std_monomials[j], RationalFunction::scalar(ctx.gb.block_ring, 1)),
            ctx.gb.gens);
        ResidueElement cj = detail::coords_from_fieldpoly(ctx, col);
        for (size_t i = 0; i < D; ++i) M[i][j] = cj.coords[i];
    }
    std::vector<RationalFunction> rhs(D, F.zero());
    rhs[0] = F.one();
    auto sol = linear_solve(M, rhs, F);
    if (!sol)
        throw DataIntegrityError(
            "residue ring is not a field; the supplied ideal is not prime");
    ResidueElement out;
    out.ctx = &ctx;
    out.coords = *sol;
    return out;
}

// Smallest polynomial representative: coordinates with denominators
// cleared. num/den equals the element as a fraction over QQ(S).
struct ClearedElement {
    Polynomial num;
    Polynomial den;  // in QQ[S]
};

inline ClearedElement re_lift(const ResidueElement& a) {
    const ResidueFieldContext& ctx = *a.ctx;
    auto [num, den] =
        fp_clear_denominators(detail::fieldpoly_from_coords(ctx, a.coords), ctx.prime.ring());
    return {num, den};
}

// A vector over QQ(S) rescaled to polynomial entries of unit content; the
// reported scale satisfies entries = scale * original.
struct ClearedRow {
    std::vector<Polynomial> entries;
    RationalFunction scale;
};

inline ClearedRow clear_row(const std::vector<RationalFunction>& v, const RingPtr& ring) {
    Polynomial L = Polynomial::constant(ring, 1);
    std::vector<RationalFunction> reduced;
    for (const auto& e : v) {
        RationalFunction r = e.reduced();
        reduced.push_back(r);
        if (!r.is_zero()) L = poly_lcm(L, r.den());
    }
    std::vector<Polynomial> w;
    for (const auto& r : reduced) {
        if (r.is_zero())
            w.push_back(Polynomial::zero(ring));
        else
            w.push_back(poly_mul(r.num(), poly_exact_div(L, r.den())));
    }
    std::vector<Polynomial> nonzero;
    for (const auto& p : w)
        if (!p.is_zero()) nonzero.push_back(p);
    if (nonzero.empty()) return {w, RationalFunction::scalar(ring, 1)};

    Polynomial g = poly_gcd_many(nonzero, ring);
    mpq_class rc = 0;
    for (auto& p : w) {
        if (p.is_zero()) continue;
        p = poly_exact_div(p, g);
        mpq_class c = poly_rational_content(p);
        if (rc == 0)
            rc = c;
        else
            rc = mpq_class(mpz_gcd_of(rc.get_num(), c.get_num()),
                           mpz_lcm_of(rc.get_den(), c.get_den()));
    }
    int sign = 1;
    for (const auto& p : w)
        if (!p.is_zero()) {
            if (p.leading_coefficient() < 0) sign = -1;
            break;
        }
    mpq_class factor = mpq_class(sign) / rc;
    for (auto& p : w) p = poly_scale(p, factor);
    return {w, RationalFunction(poly_scale(L, factor), g)};
}

// Row reduction over QQ(S) with pivots chosen leftmost first, breaking
// ties by smallest denominator degree. Cleared forms accompany the exact
// rows for downstream operator lifting.
struct RFRowReduceResult {
    int rank = 0;
    std::vector<std::vector<RationalFunction>> rows;
    std::vector<int> pivots;
    std::vector<std::vector<RationalFunction>> kernel;
    std::vector<ClearedRow> cleared_rows;
    std::vector<ClearedRow> cleared_kernel;
};

inline RFRowReduceResult rf_row_reduce(const std::vector<std::vector<RationalFunction>>& m,
                                       const RingPtr& ring) {
    RationalFunctionField F{ring};
    auto rr = row_reduce(m, F, true);
    RFRowReduceResult out;
    out.rank = rr.rank;
    out.rows = rr.rows;
    out.pivots = rr.pivots;
    out.kernel = rr.kernel;
    for (auto& k : out.kernel) {
        for (const auto& e : k) {
            if (e.is_zero()) continue;
            RationalFunction inv = rf_invert(e);
            for (auto& x : k) x = rf_mul(x, inv);
            break;
        }
    }
    for (const auto& r : out.rows) out.cleared_rows.push_back(clear_row(r, ring));
    for (const auto& k : out.kernel) out.cleared_kernel.push_back(clear_row(k, ring));
    return out;
}

}  // namespace noethops
