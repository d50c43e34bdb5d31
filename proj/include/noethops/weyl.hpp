// The relative Weyl algebra D_n(S): differential operators with polynomial
// coefficients whose partials act only on variables outside the basis set
// S. Operators are kept in standard form, coefficients to the left of the
// partial monomials.
#pragma once

#include "noethops/parse.hpp"
#include "noethops/polynomial.hpp"

namespace noethops {

struct DiffTerm {
    Polynomial coef;  // in all variables
    Monomial dexp;    // partial exponents; zero on basis variables
};

struct DiffOperator {
    RingPtr ring;
    std::vector<int> basis_vars;  // sorted
    std::vector<DiffTerm> terms;  // merged, decreasing partial monomial

    bool is_zero() const { return terms.empty(); }
};

namespace detail {

inline bool on_basis(const Monomial& dexp, const std::vector<int>& basis_vars) {
    for (int v : basis_vars)
        if (dexp[v] != 0) return true;
    return false;
}

}  // namespace detail

inline DiffOperator make_operator(const RingPtr& ring, std::vector<int> basis_vars,
                                  const std::vector<DiffTerm>& raw) {
    std::sort(basis_vars.begin(), basis_vars.end());
    MonomialOrder grevlex = MonomialOrder::grevlex_order();
    std::map<Monomial, Polynomial, detail::MonoGreater> acc{detail::MonoGreater{&grevlex}};
    for (const auto& t : raw) {
        if (t.dexp.size() != ring->vars.size())
            throw EngineError("partial exponent length does not match the ring");
        if (detail::on_basis(t.dexp, basis_vars))
            throw EngineError("operator differentiates a basis variable");
        detail::require_same_ring(t.coef, Polynomial::zero(ring));
        auto it = acc.find(t.dexp);
        if (it == acc.end())
            acc.emplace(t.dexp, t.coef);
        else
            it->second = poly_add(it->second, t.coef);
    }
    DiffOperator out;
    out.ring = ring;
    out.basis_vars = std::move(basis_vars);
    for (auto& [dexp, coef] : acc) {
        if (coef.is_zero()) continue;
        out.terms.push_back({coef, dexp});
    }
    return out;
}

inline DiffOperator identity_operator(const RingPtr& ring, std::vector<int> basis_vars) {
    return make_operator(ring, std::move(basis_vars),
                         {{Polynomial::constant(ring, 1), Monomial(ring->vars.size(), 0)}});
}

// Maximal total partial degree. The zero operator has no order.
inline int operator_order(const DiffOperator& op) {
    if (op.is_zero()) throw EngineError("the zero operator has no order");
    int best = 0;
    for (const auto& t : op.terms) best = std::max(best, total_degree(t.dexp));
    return best;
}

inline Polynomial apply_operator(const DiffOperator& op, const Polynomial& f) {
    detail::require_same_ring(f, Polynomial::zero(op.ring));
    Polynomial out = Polynomial::zero(op.ring);
    for (const auto& t : op.terms) {
        Polynomial d = f;
        for (size_t v = 0; v < t.dexp.size() && !d.is_zero(); ++v)
            for (int k = 0; k < t.dexp[v]; ++k) d = poly_derivative(d, static_cast<int>(v));
        out = poly_add(out, poly_mul(t.coef, d));
    }
    return out;
}

enum class MulSide { left, right };

// Left multiplication scales coefficients. Right multiplication rewrites
// op * x_v into standard form with the commutator term:
// d^b * x_v = x_v * d^b + b_v * d^(b - e_v).
inline DiffOperator multiply_by_variable(const DiffOperator& op, int var, MulSide side) {
    if (var < 0 || var >= static_cast<int>(op.ring->vars.size()))
        throw EngineError("variable index out of range");
    Polynomial xv = Polynomial::variable(op.ring, var);
    std::vector<DiffTerm> ts;
    for (const auto& t : op.terms) {
        ts.push_back({poly_mul(t.coef, xv), t.dexp});
        if (side == MulSide::right && t.dexp[var] > 0) {
            Monomial lower = t.dexp;
            lower[var] -= 1;
            ts.push_back({poly_scale(t.coef, t.dexp[var]), lower});
        }
    }
    return make_operator(op.ring, op.basis_vars, ts);
}

inline DiffOperator op_add(const DiffOperator& a, const DiffOperator& b) {
    if (a.ring != b.ring || a.basis_vars != b.basis_vars)
        throw EngineError("operator operands live in different algebras");
    std::vector<DiffTerm> ts = a.terms;
    ts.insert(ts.end(), b.terms.begin(), b.terms.end());
    return make_operator(a.ring, a.basis_vars, ts);
}

inline DiffOperator op_scale(const DiffOperator& a, const mpq_class& c) {
    std::vector<DiffTerm> ts;
    for (const auto& t : a.terms) ts.push_back({poly_scale(t.coef, c), t.dexp});
    return make_operator(a.ring, a.basis_vars, ts);
}

struct OperatorSet {
    RingPtr ring;
    std::vector<int> basis_vars;
    std::vector<DiffOperator> ops;
};

inline std::string format_partial_monomial(const Monomial& dexp, const RingSpec& ring) {
    std::string s;
    for (size_t i = 0; i < dexp.size(); ++i) {
        if (dexp[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "d" + ring.vars[i];
        if (dexp[i] > 1) s += "^" + std::to_string(dexp[i]);
    }
    return s;
}

inline std::string format_operator(const DiffOperator& op) {
    if (op.is_zero()) return "0";
    std::string out;
    for (const auto& t : op.terms) {
        std::string dpart = format_partial_monomial(t.dexp, *op.ring);
        std::string piece;
        if (dpart.empty()) {
            piece = format_poly(t.coef);
        } else if (t.coef.terms().size() > 1) {
            piece = "(" + format_poly(t.coef) + ")*" + dpart;
        } else if (poly_cmp(t.coef, Polynomial::constant(op.ring, 1)) == 0) {
            piece = dpart;
        } else if (poly_cmp(t.coef, Polynomial::constant(op.ring, -1)) == 0) {
            piece = "-" + dpart;
        } else {
            piece = format_poly(t.coef) + "*" + dpart;
        }
        if (out.empty()) {
            out = piece;
        } else if (piece.size() > 1 && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

// Parse the operator grammar: the polynomial grammar plus d<varname>
// symbols. The text is read commutatively and normalized to standard form.
// When some ring variable is itself named d<other variable>, the exact
// variable match wins and that partial cannot be written textually.
inline DiffOperator parse_operator(const std::string& text, const RingPtr& ring,
                                   std::vector<int> basis_vars) {
    std::sort(basis_vars.begin(), basis_vars.end());
    size_t n = ring->vars.size();
    std::vector<std::string> names = ring->vars;
    std::vector<int> dsym_var;  // extended index -> differentiated variable
    for (size_t v = 0; v < n; ++v) {
        std::string dn = "d" + ring->vars[v];
        bool taken = false;
        for (const auto& existing : names)
            if (existing == dn) taken = true;
        if (taken) continue;
        names.push_back(dn);
        dsym_var.push_back(static_cast<int>(v));
    }
    RingPtr ext = make_ring(names);
    Polynomial raw = parse_poly(text, ext);

    std::vector<DiffTerm> ts;
    for (const auto& t : raw.terms()) {
        Monomial base(n, 0), dexp(n, 0);
        for (size_t i = 0; i < n; ++i) base[i] = t.mono[i];
        for (size_t i = n; i < t.mono.size(); ++i) {
            int v = dsym_var[i - n];
            dexp[v] = t.mono[i];
            if (t.mono[i] > 0) {
                bool basis = false;
                for (int b : basis_vars)
                    if (b == v) basis = true;
                if (basis)
                    throw ParseError("operator differentiates basis variable '" + ring->vars[v] +
                                     "'");
            }
        }
        ts.push_back({Polynomial::term(ring, base, t.coef), dexp});
    }
    return make_operator(ring, basis_vars, ts);
}

}  // namespace noethops
