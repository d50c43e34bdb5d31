// Differential primary decomposition. For each associated prime p of an
// ideal I the pipeline localizes I at p, compares the truncated dual
// spaces of the local and strict components over the residue field k(p),
// and lifts a complement basis to Noetherian operators: polynomials
// f belong to I exactly when every emitted operator maps f into its
// prime. The reverse direction reconstructs the ideal from the operator
// data alone.
//
// Dual spaces hold rows of residue-field elements that point back at the
// ResidueFieldContext they were created from; keep the context alive for
// as long as the dual space or its rows are in use.
#pragma once

#include <deque>
#include <map>
#include <optional>

#include "noethops/decompose.hpp"
#include "noethops/residue_field.hpp"
#include "noethops/weyl.hpp"

namespace noethops {

namespace config {
inline constexpr int default_max_order = 50;
inline constexpr int default_stabilization_window = 2;
inline constexpr int default_verification_retries = 2;
}  // namespace config

// Field adapter so Gauss-Jordan elimination runs directly over F = k(p).
// Pivot weight prefers sparse elements with small numerators and
// denominators, which keeps the coefficient swell of rf_invert down.
struct ResidueFieldOps {
    using value_type = ResidueElement;
    const ResidueFieldContext* ctx;

    value_type zero() const { return re_zero(*ctx); }
    value_type one() const { return re_one(*ctx); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    value_type add(const value_type& a, const value_type& b) const { return re_add(a, b); }
    value_type sub(const value_type& a, const value_type& b) const { return re_sub(a, b); }
    value_type mul(const value_type& a, const value_type& b) const { return re_mul(a, b); }
    value_type neg(const value_type& a) const {
        return re_scale(a, RationalFunction::scalar(ctx->prime.ring(), -1));
    }
    value_type inv(const value_type& a) const { return rf_invert(a); }
    long pivot_weight(const value_type& a) const {
        long w = 0;
        for (const auto& c : a.coords) {
            if (c.is_zero()) continue;
            w += 1 + c.num().degree() + c.den().degree();
        }
        return w;
    }
};

namespace detail {

// Monomials supported on `support` with total degree <= bound, sorted
// increasingly in grevlex. Shared by dual-space columns, dual-space
// multiplier sets, closure sets, and verification.
inline std::vector<Monomial> bounded_monomials(size_t n, const std::vector<int>& support,
                                               int bound) {
    std::vector<Monomial> out;
    Monomial cur(n, 0);
    auto rec = [&](auto&& self, size_t pos, int left) -> void {
        if (pos == support.size()) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[support[pos]] = e;
            self(self, pos + 1, left - e);
        }
        cur[support[pos]] = 0;
    };
    if (bound >= 0) rec(rec, 0, bound);
    MonomialOrder grevlex = MonomialOrder::grevlex_order();
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        return cmp_monomials(grevlex, a, b) < 0;
    });
    return out;
}

}  // namespace detail

// The space of operators sum c_beta d^beta over the dependent variables,
// |beta| <= m-1 and c_beta in k(p), that map every multiple x^alpha * g
// (g a defining generator, alpha a dependent monomial with |alpha| <= m-1)
// into the prime. Rows are a reduced row-echelon basis over k(p) with
// columns ordered by increasing partial monomial.
struct DualSpace {
    const ResidueFieldContext* ctx = nullptr;
    int m = 0;
    std::vector<Polynomial> defining_gens;
    std::vector<Monomial> partials;  // column monomials, graded increasing
    std::vector<std::vector<ResidueElement>> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

inline DualSpace dual_space(const std::vector<Polynomial>& gens, const ResidueFieldContext& ctx,
                            int m) {
    if (m < 1) throw EngineError("dual space truncation order must be at least 1");
    const RingPtr& ring = ctx.prime.ring();
    DualSpace out;
    out.ctx = &ctx;
    out.m = m;
    out.defining_gens = gens;
    out.partials = detail::bounded_monomials(ring->n(), ctx.gb.dep_vars, m - 1);
    const size_t cols = out.partials.size();

    std::map<Monomial, size_t> index;
    for (size_t j = 0; j < cols; ++j) index.emplace(out.partials[j], j);

    ResidueFieldOps F{&ctx};
    std::vector<std::vector<ResidueElement>> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const auto& alpha : out.partials) {
            Polynomial f = poly_term_mul(g, alpha, 1);
            // Derivatives in increasing order reuse the one-lower parent.
            std::vector<Polynomial> derivs(cols, Polynomial::zero(ring));
            std::vector<ResidueElement> row;
            row.reserve(cols);
            bool any = false;
            for (size_t j = 0; j < cols; ++j) {
                const Monomial& beta = out.partials[j];
                if (total_degree(beta) == 0) {
                    derivs[j] = f;
                } else {
                    int v = 0;
                    while (beta[v] == 0) ++v;
                    Monomial parent = beta;
                    parent[v] -= 1;
                    derivs[j] = poly_derivative(derivs[index.at(parent)], v);
                }
                row.push_back(rf_reduce(derivs[j], ctx));
                any = any || !row.back().is_zero();
            }
            if (any) rows.push_back(std::move(row));
        }
    }

    if (rows.empty()) {
        // No conditions: every truncated operator belongs to the space.
        for (size_t j = 0; j < cols; ++j) {
            std::vector<ResidueElement> row(cols, re_zero(ctx));
            row[j] = re_one(ctx);
            out.basis.push_back(std::move(row));
        }
        return out;
    }

    auto rr = row_reduce(std::move(rows), F, true);
    if (!rr.kernel.empty()) out.basis = row_reduce(rr.kernel, F).rows;
    return out;
}

// Orders m = hint, hint+1, ... until the gap dim E_m - dim H_m repeats a
// positive value `window` times in a row; the returned spaces belong to
// the first order of that run. H is computed from J's reduced basis, so a
// unit J yields the zero space and the gap is all of E.
struct StabilizationResult {
    int m = 0;
    DualSpace E;
    DualSpace H;
    int multiplicity = 0;
};

inline StabilizationResult find_stabilization(const Ideal& local_ideal, const Ideal& strict_ideal,
                                              const ResidueFieldContext& ctx, int hint,
                                              int window = config::default_stabilization_window,
                                              int max_order = config::default_max_order) {
    if (window < 2) window = 2;
    const std::vector<Polynomial>& egens = local_ideal.groebner().gens;
    const std::vector<Polynomial>& hgens = strict_ideal.groebner().gens;

    std::deque<StabilizationResult> history;
    int prev_gap = 0;
    for (int m = std::max(1, hint); m <= max_order; ++m) {
        StabilizationResult step;
        step.m = m;
        step.E = dual_space(egens, ctx, m);
        step.H = dual_space(hgens, ctx, m);
        step.multiplicity = step.E.dim() - step.H.dim();
        if (step.multiplicity < prev_gap)
            throw DataIntegrityError("dual space dimension gap decreased from order " +
                                     std::to_string(m - 1) + " to " + std::to_string(m));
        if (step.multiplicity > prev_gap) history.clear();
        prev_gap = step.multiplicity;

        history.push_back(std::move(step));
        if (history.size() > static_cast<size_t>(window)) history.pop_front();
        if (history.size() == static_cast<size_t>(window) && history.front().multiplicity >= 1)
            return history.front();
    }
    throw EngineError("dual space dimensions did not stabilize below truncation order " +
                      std::to_string(max_order));
}

// Rows of E's echelon basis whose pivots do not occur in H; together with
// H they span E, so their count is dim E - dim H.
inline std::vector<std::vector<ResidueElement>> noetherian_complement(const DualSpace& E,
                                                                      const DualSpace& H) {
    if (E.ctx != H.ctx || E.m != H.m)
        throw EngineError("dual spaces come from different contexts or truncations");
    auto pivot_of = [](const std::vector<ResidueElement>& row) {
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) return static_cast<int>(j);
        return -1;
    };
    if (!H.basis.empty()) {
        ResidueFieldOps F{E.ctx};
        std::vector<std::vector<ResidueElement>> stacked = E.basis;
        stacked.insert(stacked.end(), H.basis.begin(), H.basis.end());
        if (row_reduce(stacked, F).rank != E.dim())
            throw DataIntegrityError("strict dual space is not contained in the local one");
    }
    std::vector<bool> taken;
    for (const auto& row : H.basis) {
        int p = pivot_of(row);
        if (p >= static_cast<int>(taken.size())) taken.resize(p + 1, false);
        if (p >= 0) taken[p] = true;
    }
    std::vector<std::vector<ResidueElement>> out;
    for (const auto& row : E.basis) {
        int p = pivot_of(row);
        if (p < 0) continue;
        if (p < static_cast<int>(taken.size()) && taken[p]) continue;
        out.push_back(row);
    }
    if (static_cast<int>(out.size()) != E.dim() - H.dim())
        throw DataIntegrityError("complement size disagrees with the dual dimension gap");
    return out;
}

// Turn echelon rows over k(p) into operators in the relative Weyl algebra:
// write each coefficient on the standard monomials, clear the common
// QQ[S]-denominator of the whole row, and strip content.
inline OperatorSet lift_operators(const std::vector<std::vector<ResidueElement>>& rows,
                                  const std::vector<Monomial>& partials,
                                  const ResidueFieldContext& ctx) {
    const RingPtr& ring = ctx.prime.ring();
    const size_t D = ctx.D();
    OperatorSet out{ring, ctx.basis_vars, {}};
    for (const auto& row : rows) {
        if (row.size() != partials.size())
            throw EngineError("operator row length does not match the column monomials");
        std::vector<RationalFunction> flat;
        flat.reserve(row.size() * D);
        for (const auto& e : row)
            for (size_t k = 0; k < D; ++k) flat.push_back(e.coords[k]);
        ClearedRow cr = clear_row(flat, ring);
        std::vector<DiffTerm> terms;
        for (size_t j = 0; j < partials.size(); ++j)
            for (size_t k = 0; k < D; ++k) {
                const Polynomial& w = cr.entries[j * D + k];
                if (w.is_zero()) continue;
                terms.push_back({poly_term_mul(w, ctx.std_monomials[k], 1), partials[j]});
            }
        DiffOperator op = make_operator(ring, ctx.basis_vars, terms);
        if (!op.is_zero()) out.ops.push_back(std::move(op));
    }
    return out;
}

// I localized at p and contracted back: I : s^infinity for a separator s
// that lies in every associated prime not below p but outside p itself.
inline Ideal local_component(const Ideal& I, const Ideal& p, const std::vector<Ideal>& all_primes) {
    Polynomial s = Polynomial::constant(I.ring(), 1);
    for (const auto& q : all_primes) {
        if (ideal_contains(p, q)) continue;
        Polynomial pick = Polynomial::zero(I.ring());
        for (const auto& g : q.groebner().gens)
            if (!ideal_member(g, p)) {
                pick = g;
                break;
            }
        if (pick.is_zero())
            throw DataIntegrityError("no separator found; the prime list is inconsistent");
        s = poly_mul(s, pick);
    }
    return saturate(I, s).ideal;
}

// The intersection of the primary components whose radical is strictly
// inside p; the unit ideal when p is minimal.
inline Ideal strict_component(const Ideal& local_ideal, const Ideal& p) {
    return saturate(local_ideal, p).ideal;
}

struct DifferentialComponent {
    Ideal prime;
    std::vector<int> basis_vars;
    OperatorSet operators;
    int multiplicity = 0;
    int stabilization_order = 0;
};

struct DifferentialPrimaryDecomposition {
    Ideal ideal;
    std::vector<DifferentialComponent> components;
    DecompositionSource source = DecompositionSource::supplied;
    int amult = 0;
};

namespace detail {

inline DiffOperator right_monomial_mul(const DiffOperator& op, const Monomial& beta) {
    DiffOperator acc = op;
    for (size_t v = 0; v < beta.size(); ++v)
        for (int k = 0; k < beta[v]; ++k)
            acc = multiply_by_variable(acc, static_cast<int>(v), MulSide::right);
    return acc;
}

// Close an operator set under right multiplication by dependent monomials
// up to each operator's order. The solutions of the closed set form an
// ideal, which is what reconstruction needs; a plain kernel of the
// original set only cuts out a QQ[S]-module.
inline std::vector<DiffOperator> right_closure(const std::vector<DiffOperator>& ops,
                                               const std::vector<int>& dep_vars, size_t n) {
    std::vector<DiffOperator> out;
    for (const auto& op : ops) {
        int order = operator_order(op);
        for (const auto& beta : bounded_monomials(n, dep_vars, order)) {
            DiffOperator closed = right_monomial_mul(op, beta);
            if (!closed.is_zero()) out.push_back(std::move(closed));
        }
    }
    return out;
}

}  // namespace detail

// Reconstruct the ideal cut out by the component operators: for each
// component, the classes of p^(m+1)-standard monomials killed by the
// closed operator set generate the component modulo p^(m+1); contracting
// from QQ(S) and intersecting over the components recovers the ideal.
inline Ideal get_pde(const std::vector<DifferentialComponent>& components) {
    if (components.empty()) throw EngineError("reconstruction needs at least one component");
    const RingPtr& ring = components.front().prime.ring();
    Ideal out = unit_ideal(ring);
    for (const auto& comp : components) {
        if (comp.prime.ring() != ring)
            throw EngineError("components live in different rings");
        if (comp.operators.ops.empty()) throw EngineError("component has no operators");
        for (const auto& op : comp.operators.ops) {
            if (op.is_zero()) throw EngineError("component contains the zero operator");
            for (const auto& t : op.terms)
                if (detail::on_basis(t.dexp, comp.basis_vars))
                    throw EngineError("operator differentiates a basis variable");
        }
        int m = 0;
        for (const auto& op : comp.operators.ops) m = std::max(m, operator_order(op));

        ResidueFieldContext ctx = make_context(comp.prime, comp.basis_vars);
        std::vector<DiffOperator> closed =
            detail::right_closure(comp.operators.ops, ctx.gb.dep_vars, ring->n());

        Ideal power = ideal_power(comp.prime, m + 1);
        FractionFieldBasis fb = gb_over_fraction_field(ring, power.gens(), ctx.basis_vars);
        std::vector<Monomial> stds = standard_monomials(fb);

        RationalFunctionField F{ring};
        const size_t D = ctx.D();
        std::vector<std::vector<RationalFunction>> rows;
        for (const auto& op : closed) {
            std::vector<std::vector<RationalFunction>> block(
                D, std::vector<RationalFunction>(stds.size(), F.zero()));
            for (size_t b = 0; b < stds.size(); ++b) {
                ResidueElement e =
                    rf_reduce(apply_operator(op, Polynomial::term(ring, stds[b], 1)), ctx);
                for (size_t k = 0; k < D; ++k) block[k][b] = e.coords[k];
            }
            for (auto& r : block) rows.push_back(std::move(r));
        }

        std::vector<Polynomial> gens = power.gens();
        for (const auto& vec : row_reduce(std::move(rows), F, true).kernel) {
            ClearedRow cr = clear_row(vec, ring);
            Polynomial lift = Polynomial::zero(ring);
            for (size_t b = 0; b < stds.size(); ++b) {
                if (cr.entries[b].is_zero()) continue;
                lift = poly_add(lift, poly_term_mul(cr.entries[b], stds[b], 1));
            }
            if (!lift.is_zero()) gens.push_back(std::move(lift));
        }
        out = intersect(out,
                        detail::contract_from_fraction_field(ring, gens, ctx.basis_vars));
    }
    return out;
}

struct ComponentCheck {
    bool annihilation_ok = true;
    std::optional<Polynomial> witness;  // multiple of a generator that survived
    int witness_operator = -1;
    int size = 0;
    int recomputed_multiplicity = -1;  // -1 when sizes were not rechecked
    bool size_ok = true;
    std::string note;
};

struct VerificationReport {
    bool roundtrip_equal = false;
    std::vector<ComponentCheck> components;
    std::optional<Polynomial> counterexample;
    std::string note;

    bool pass() const {
        if (!roundtrip_equal) return false;
        for (const auto& c : components)
            if (!c.annihilation_ok || !c.size_ok) return false;
        return true;
    }
};

struct VerifyOptions {
    bool check_sizes = true;
    int window = config::default_stabilization_window;
    int max_order = config::default_max_order;
};

namespace detail {

inline StabilizationResult stabilize_at_prime(const Ideal& I, const Ideal& p,
                                              const std::vector<Ideal>& all_primes,
                                              const ResidueFieldContext& ctx, int window,
                                              int max_order) {
    Ideal loc = local_component(I, p, all_primes);
    SaturationResult sat = saturate(loc, p);
    return find_stabilization(loc, sat.ideal, ctx, sat.exponent, window, max_order);
}

}  // namespace detail

// Checks, in order: every operator kills every generator times every
// dependent monomial up to the operator's order; reconstruction returns
// the ideal; operator counts match independently recomputed
// multiplicities. Failures land in the report, never in exceptions.
inline VerificationReport verify_decomposition(const Ideal& I,
                                               const std::vector<DifferentialComponent>& components,
                                               const VerifyOptions& opt = {}) {
    VerificationReport rep;
    std::vector<Ideal> primes;
    for (const auto& comp : components) primes.push_back(comp.prime);

    for (const auto& comp : components) {
        ComponentCheck ck;
        ck.size = static_cast<int>(comp.operators.ops.size());
        try {
            ResidueFieldContext ctx = make_context(comp.prime, comp.basis_vars);
            for (size_t oi = 0; oi < comp.operators.ops.size() && ck.annihilation_ok; ++oi) {
                const DiffOperator& op = comp.operators.ops[oi];
                int order = operator_order(op);
                auto multipliers =
                    detail::bounded_monomials(I.ring()->n(), ctx.gb.dep_vars, order);
                for (const auto& g : I.gens()) {
                    if (g.is_zero()) continue;
                    for (const auto& alpha : multipliers) {
                        Polynomial f = poly_term_mul(g, alpha, 1);
                        if (!rf_reduce(apply_operator(op, f), ctx).is_zero()) {
                            ck.annihilation_ok = false;
                            ck.witness = f;
                            ck.witness_operator = static_cast<int>(oi);
                            break;
                        }
                    }
                    if (!ck.annihilation_ok) break;
                }
            }
            if (opt.check_sizes) {
                StabilizationResult st = detail::stabilize_at_prime(I, comp.prime, primes, ctx,
                                                                    opt.window, opt.max_order);
                ck.recomputed_multiplicity = st.multiplicity;
                ck.size_ok = (ck.size == st.multiplicity);
            }
        } catch (const Error& e) {
            ck.annihilation_ok = false;
            ck.size_ok = false;
            ck.note = e.what();
        }
        rep.components.push_back(std::move(ck));
    }

    try {
        Ideal back = get_pde(components);
        rep.roundtrip_equal = ideal_equal(back, I);
        if (!rep.roundtrip_equal) {
            for (const auto& g : back.groebner().gens)
                if (!ideal_member(g, I)) {
                    rep.counterexample = g;
                    break;
                }
            if (!rep.counterexample)
                for (const auto& g : I.groebner().gens)
                    if (!ideal_member(g, back)) {
                        rep.counterexample = g;
                        break;
                    }
        }
    } catch (const Error& e) {
        rep.roundtrip_equal = false;
        rep.note = e.what();
    }
    return rep;
}

struct SolveOptions {
    int max_order = config::default_max_order;
    int window = config::default_stabilization_window;
    int retries = config::default_verification_retries;
    bool verify = true;
    unsigned seed = 0;
    int degree_budget = config::default_factor_degree_budget;
};

namespace detail {

inline DifferentialComponent component_pipeline(const Ideal& I, const Ideal& p,
                                                const std::vector<Ideal>& all_primes, int window,
                                                int max_order) {
    std::vector<int> basis_vars = smallest_independent_set(p);
    ResidueFieldContext ctx = make_context(p, basis_vars);
    StabilizationResult st = stabilize_at_prime(I, p, all_primes, ctx, window, max_order);
    auto rows = noetherian_complement(st.E, st.H);
    OperatorSet ops = lift_operators(rows, st.E.partials, ctx);
    if (static_cast<int>(ops.ops.size()) != st.multiplicity)
        throw DataIntegrityError("lifted operator count disagrees with the multiplicity");
    DifferentialComponent comp;
    comp.prime = p;
    comp.basis_vars = std::move(basis_vars);
    comp.operators = std::move(ops);
    comp.multiplicity = st.multiplicity;
    comp.stabilization_order = st.m;
    return comp;
}

inline std::string verification_failure_summary(const VerificationReport& rep) {
    std::string msg;
    if (!rep.roundtrip_equal) {
        msg += "reconstruction differs from the input";
        if (rep.counterexample) msg += " (witness " + format_poly(*rep.counterexample) + ")";
        if (!rep.note.empty()) msg += " [" + rep.note + "]";
    }
    for (size_t i = 0; i < rep.components.size(); ++i) {
        const ComponentCheck& c = rep.components[i];
        if (!c.annihilation_ok) {
            msg += (msg.empty() ? "" : "; ");
            msg += "component " + std::to_string(i) + " fails annihilation";
            if (c.witness) msg += " on " + format_poly(*c.witness);
            if (!c.note.empty()) msg += " [" + c.note + "]";
        }
        if (!c.size_ok) {
            msg += (msg.empty() ? "" : "; ");
            msg += "component " + std::to_string(i) + " has " + std::to_string(c.size) +
                   " operators for multiplicity " + std::to_string(c.recomputed_multiplicity);
        }
    }
    return msg;
}

}  // namespace detail

// The full pipeline: associated primes (computed or supplied), one
// component per prime, mandatory verification with escalating truncation
// caps on failure.
inline DifferentialPrimaryDecomposition solve_pde(
    const Ideal& I, const std::optional<std::vector<Ideal>>& supplied_primes = std::nullopt,
    const SolveOptions& opt = {}) {
    if (I.is_unit())
        throw EngineError("the unit ideal has no differential primary decomposition");

    std::vector<Ideal> primes;
    DecompositionSource source;
    if (supplied_primes) {
        primes = supplied_primes_check(I, *supplied_primes);
        source = DecompositionSource::supplied;
    } else {
        DecompositionOutput dec = primary_decomposition(I, opt.seed, opt.degree_budget);
        for (const auto& c : dec.components) primes.push_back(c.prime);
        source = dec.source;
    }

    std::string failure;
    for (int attempt = 0;; ++attempt) {
        int window = opt.window << attempt;
        int max_order = opt.max_order << attempt;

        DifferentialPrimaryDecomposition out;
        out.ideal = I;
        out.source = source;
        for (const auto& p : primes) {
            out.components.push_back(
                detail::component_pipeline(I, p, primes, window, max_order));
            out.amult += out.components.back().multiplicity;
        }
        if (!opt.verify) return out;

        // Sizes come straight from the stabilization that built the
        // components, so only the annihilation and roundtrip checks can
        // add information here.
        VerifyOptions vo;
        vo.check_sizes = false;
        vo.window = window;
        vo.max_order = max_order;
        VerificationReport rep = verify_decomposition(I, out.components, vo);
        if (rep.pass()) return out;

        failure = detail::verification_failure_summary(rep);
        if (attempt >= opt.retries)
            throw VerificationError("differential primary decomposition failed verification: " +
                                    failure);
    }
}

inline int amult(const Ideal& I, const SolveOptions& opt = {}) {
    return solve_pde(I, std::nullopt, opt).amult;
}

}  // namespace noethops
