// Variable sets, monomials, and monomial orders.
//
// A monomial is a dense exponent vector over the ring's variables. Orders
// are total, multiplicative, and have 1 as the minimal element; the three
// kinds provided (lex, grevlex, block) are the ones every downstream
// Groebner computation relies on.
#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "noethops/errors.hpp"

namespace noethops {

using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

inline bool is_unit_monomial(const Monomial& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

inline bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Quotient b / a; caller guarantees divisibility.
inline Monomial monomial_div(const Monomial& b, const Monomial& a) {
    Monomial r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
    return r;
}

inline Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

inline bool monomials_coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

enum class OrderKind { lex, grevlex, block };

// A monomial order. `perm` lists variable indices from most to least
// significant; when empty, the declared variable order is used. For
// kind == block, `elim` holds the indices of the leading block and the two
// blocks are compared with the `inner` kind (elim side first).
struct MonomialOrder {
    OrderKind kind = OrderKind::grevlex;
    std::vector<int> perm;
    std::vector<int> elim;
    OrderKind inner = OrderKind::grevlex;

    static MonomialOrder lex_order() { return {OrderKind::lex, {}, {}, OrderKind::lex}; }
    static MonomialOrder grevlex_order() { return {}; }
    static MonomialOrder block_order(std::vector<int> elim_vars,
                                     OrderKind inner_kind = OrderKind::grevlex) {
        MonomialOrder o;
        o.kind = OrderKind::block;
        o.elim = std::move(elim_vars);
        o.inner = inner_kind;
        std::sort(o.elim.begin(), o.elim.end());
        return o;
    }

    bool operator==(const MonomialOrder& other) const {
        return kind == other.kind && perm == other.perm && elim == other.elim &&
               (kind != OrderKind::block || inner == other.inner);
    }

    // Stable textual key, used to index cached Groebner bases.
    std::string key() const {
        std::string s;
        switch (kind) {
            case OrderKind::lex: s = "lex"; break;
            case OrderKind::grevlex: s = "grevlex"; break;
            case OrderKind::block: s = "block"; break;
        }
        if (!perm.empty()) {
            s += ":p";
            for (int v : perm) s += std::to_string(v) + ",";
        }
        if (kind == OrderKind::block) {
            s += ":e";
            for (int v : elim) s += std::to_string(v) + ",";
            s += (inner == OrderKind::lex) ? ":lex" : ":grevlex";
        }
        return s;
    }
};

namespace detail {

// Sequence of variable indices from most to least significant.
inline std::vector<int> significance(const MonomialOrder& o, size_t n) {
    if (!o.perm.empty()) return o.perm;
    std::vector<int> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    return seq;
}

inline int cmp_lex(const std::vector<int>& seq, const Monomial& a, const Monomial& b) {
    for (int v : seq) {
        if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
    }
    return 0;
}

inline int cmp_grevlex(const std::vector<int>& seq, const Monomial& a, const Monomial& b) {
    int da = 0, db = 0;
    for (int v : seq) { da += a[v]; db += b[v]; }
    if (da != db) return da < db ? -1 : 1;
    // Ties: scanning from the least significant variable, the monomial with
    // the smaller exponent at the first difference is the larger one.
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
    }
    return 0;
}

inline int cmp_kind(OrderKind k, const std::vector<int>& seq, const Monomial& a,
                    const Monomial& b) {
    return k == OrderKind::lex ? cmp_lex(seq, a, b) : cmp_grevlex(seq, a, b);
}

}  // namespace detail

// Three-way comparison: -1 if a < b, 0 if equal, +1 if a > b.
inline int cmp_monomials(const MonomialOrder& order, const Monomial& a, const Monomial& b) {
    if (a.size() != b.size())
        throw EngineError("cmp_monomials: exponent vectors of different length");
    if (order.kind != OrderKind::block) {
        return detail::cmp_kind(order.kind, detail::significance(order, a.size()), a, b);
    }
    std::vector<int> lead, tail;
    std::vector<int> seq = detail::significance(order, a.size());
    for (int v : seq) {
        if (std::binary_search(order.elim.begin(), order.elim.end(), v))
            lead.push_back(v);
        else
            tail.push_back(v);
    }
    if (int c = detail::cmp_kind(order.inner, lead, a, b)) return c;
    return detail::cmp_kind(order.inner, tail, a, b);
}

// The coefficient ring together with the variable list and canonical order.
// When `fraction_vars` is nonempty the coefficient domain is the field of
// rational functions in those variables; otherwise it is the rationals.
struct RingSpec {
    std::vector<std::string> vars;
    MonomialOrder order;
    std::vector<int> fraction_vars;

    size_t n() const { return vars.size(); }

    int var_index(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline RingPtr make_ring(std::vector<std::string> vars,
                         MonomialOrder order = MonomialOrder::grevlex_order(),
                         std::vector<int> fraction_vars = {}) {
    if (vars.empty()) throw EngineError("make_ring: a ring needs at least one variable");
    for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].empty()) throw EngineError("make_ring: empty variable name");
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw EngineError("make_ring: duplicate variable name '" + vars[i] + "'");
    }
    std::sort(fraction_vars.begin(), fraction_vars.end());
    for (int v : fraction_vars)
        if (v < 0 || v >= static_cast<int>(vars.size()))
            throw EngineError("make_ring: fraction variable index out of range");
    auto r = std::make_shared<RingSpec>();
    r->vars = std::move(vars);
    r->order = std::move(order);
    r->fraction_vars = std::move(fraction_vars);
    return r;
}

// Same variables, different canonical order.
inline RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
    auto r = std::make_shared<RingSpec>(*ring);
    r->order = std::move(order);
    return r;
}

inline bool same_variables(const RingSpec& a, const RingSpec& b) {
    return a.vars == b.vars;
}

}  // namespace noethops
