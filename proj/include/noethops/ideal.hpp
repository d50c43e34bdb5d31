// Ideals of QQ[x1..xn] with cached Groebner bases, and the classical ideal
// operations: sum, product, power, intersection, colon, saturation,
// membership, radical membership, and dimension via independent sets.
#pragma once

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "noethops/groebner.hpp"

namespace noethops {

// Value type; copies share the (write-once) Groebner cache.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Polynomial> gens)
        : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
        for (auto& g : gens) {
            if (g.is_zero()) continue;
            if (!g.ring() || !same_variables(*g.ring(), *ring_) ||
                !(g.ring()->order == ring_->order))
                throw EngineError("ideal generator lives in a different ring");
            gens_.push_back(std::move(g));
        }
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& gens() const { return gens_; }
    bool is_zero_ideal() const { return gens_.empty(); }

    // Reduced basis under `order`, computed once per order and shared
    // between copies of this ideal.
    const GroebnerBasis& groebner(const MonomialOrder& order) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        std::string key = order.key();
        auto it = cache_->bases.find(key);
        if (it == cache_->bases.end()) {
            auto gb = std::make_shared<GroebnerBasis>(buchberger(ring_, gens_, order));
            it = cache_->bases.emplace(key, std::move(gb)).first;
        }
        return *it->second;
    }
    const GroebnerBasis& groebner() const { return groebner(ring_->order); }

    bool is_unit() const { return groebner().is_trivial(); }

private:
    struct Cache {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const GroebnerBasis>> bases;
    };
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline Ideal unit_ideal(const RingPtr& ring) {
    return Ideal(ring, {Polynomial::constant(ring, 1)});
}

inline bool ideal_member(const Polynomial& f, const Ideal& I) {
    if (f.is_zero()) return true;
    if (I.is_zero_ideal()) return false;
    return normal_form(f, I.groebner()).is_zero();
}

inline bool ideal_contains(const Ideal& outer, const Ideal& inner) {
    for (const auto& g : inner.gens())
        if (!ideal_member(g, outer)) return false;
    return true;
}

// Reduced bases are unique per order, so two ideals over the same ring are
// equal exactly when their reduced generator lists coincide.
inline bool ideal_equal(const Ideal& a, const Ideal& b) {
    const auto& ga = a.groebner().gens;
    const auto& gb = b.groebner().gens;
    if (ga.size() != gb.size()) return false;
    for (size_t i = 0; i < ga.size(); ++i)
        if (!(ga[i] == gb[i])) return false;
    return true;
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
    std::vector<Polynomial> gens = a.gens();
    gens.insert(gens.end(), b.gens().begin(), b.gens().end());
    return Ideal(a.ring(), std::move(gens));
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
    std::vector<Polynomial> gens;
    for (const auto& f : a.gens())
        for (const auto& g : b.gens()) gens.push_back(poly_mul(f, g));
    return Ideal(a.ring(), std::move(gens));
}

// Generated by all products of k generators with repetition.
inline Ideal ideal_power(const Ideal& I, int k) {
    if (k < 0) throw EngineError("negative ideal power");
    if (k == 0) return unit_ideal(I.ring());
    if (I.is_zero_ideal()) return I;
    std::vector<Polynomial> out;
    std::vector<int> idx(k, 0);
    const auto& g = I.gens();
    while (true) {
        Polynomial p = g[idx[0]];
        for (int i = 1; i < k; ++i) p = poly_mul(p, g[idx[i]]);
        out.push_back(std::move(p));
        // next non-decreasing index tuple
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(g.size()) - 1) --pos;
        if (pos < 0) break;
        int v = idx[pos] + 1;
        for (int i = pos; i < k; ++i) idx[i] = v;
    }
    return Ideal(I.ring(), std::move(out));
}

namespace detail {

// Same variables plus one fresh elimination variable appended at the end;
// the name avoids every existing variable name.
inline std::pair<RingPtr, int> extend_ring(const RingPtr& ring) {
    std::string name = "t";
    for (int i = 0; ring->var_index(name) >= 0; ++i) name = "t" + std::to_string(i);
    std::vector<std::string> vars = ring->vars;
    vars.push_back(name);
    return {make_ring(vars, MonomialOrder::grevlex_order()), static_cast<int>(ring->n())};
}

inline Polynomial extend_poly(const Polynomial& p, const RingPtr& big) {
    std::map<Monomial, mpq_class, MonoGreater> acc{MonoGreater{&big->order}};
    for (const auto& t : p.terms()) {
        Monomial m = t.mono;
        m.push_back(0);
        acc[std::move(m)] = t.coef;
    }
    return from_map(big, acc);
}

inline Polynomial restrict_poly(const Polynomial& p, const RingPtr& small) {
    std::map<Monomial, mpq_class, MonoGreater> acc{MonoGreater{&small->order}};
    for (const auto& t : p.terms()) {
        Monomial m = t.mono;
        if (m.back() != 0) throw EngineError("polynomial still uses the eliminated variable");
        m.pop_back();
        acc[std::move(m)] = t.coef;
    }
    return from_map(small, acc);
}

}  // namespace detail

// I cap J through the elimination trick: eliminate t from t*I + (1-t)*J.
inline Ideal intersect(const Ideal& a, const Ideal& b) {
    if (a.is_zero_ideal() || b.is_zero_ideal()) return Ideal(a.ring(), {});
    auto [big, tvar] = detail::extend_ring(a.ring());
    Polynomial t = Polynomial::variable(big, tvar);
    Polynomial one_minus_t = poly_sub(Polynomial::constant(big, 1), t);
    std::vector<Polynomial> gens;
    for (const auto& f : a.gens()) gens.push_back(poly_mul(t, detail::extend_poly(f, big)));
    for (const auto& g : b.gens())
        gens.push_back(poly_mul(one_minus_t, detail::extend_poly(g, big)));
    std::vector<Polynomial> elim = eliminate(big, gens, {tvar});
    std::vector<Polynomial> out;
    for (const auto& p : elim) out.push_back(detail::restrict_poly(p, a.ring()));
    return Ideal(a.ring(), std::move(out));
}

// I : f, computed as (1/f) * (I cap <f>).
inline Ideal colon(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw EngineError("colon by the zero polynomial");
    if (f.is_constant()) return I;
    if (I.is_zero_ideal()) return I;
    Ideal inter = intersect(I, Ideal(I.ring(), {f}));
    std::vector<Polynomial> out;
    for (const auto& g : inter.gens()) out.push_back(poly_exact_div(g, f));
    return Ideal(I.ring(), std::move(out));
}

// I : J over the generators of J; I : <0> is the unit ideal.
inline Ideal colon(const Ideal& I, const Ideal& J) {
    if (J.is_zero_ideal()) return unit_ideal(I.ring());
    std::optional<Ideal> acc;
    for (const auto& f : J.gens()) {
        Ideal c = colon(I, f);
        acc = acc ? intersect(*acc, c) : c;
    }
    return *acc;
}

struct SaturationResult {
    Ideal ideal;
    int exponent;  // smallest k with I : f^k = I : f^(k+1)
};

inline SaturationResult saturate(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw EngineError("saturation by the zero polynomial");
    if (f.is_constant() || I.is_zero_ideal()) return {I, 0};
    Ideal cur = I;
    int k = 0;
    while (true) {
        Ideal next = colon(cur, f);
        if (ideal_equal(next, cur)) return {cur, k};
        cur = next;
        ++k;
    }
}

inline SaturationResult saturate(const Ideal& I, const Ideal& J) {
    if (J.is_zero_ideal()) return {unit_ideal(I.ring()), 0};
    Ideal cur = I;
    int k = 0;
    while (true) {
        Ideal next = colon(cur, J);
        if (ideal_equal(next, cur)) return {cur, k};
        cur = next;
        ++k;
    }
}

// f in rad(I), by the trick of adjoining 1 - t*f and testing the unit ideal.
inline bool radical_member(const Polynomial& f, const Ideal& I) {
    if (f.is_zero()) return true;
    auto [big, tvar] = detail::extend_ring(I.ring());
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(detail::extend_poly(g, big));
    Polynomial t = Polynomial::variable(big, tvar);
    gens.push_back(poly_sub(Polynomial::constant(big, 1),
                            poly_mul(t, detail::extend_poly(f, big))));
    return buchberger(big, gens, big->order).is_trivial();
}

struct DimensionResult {
    int dim;
    // Every independent set of maximum size, each sorted ascending; the
    // list itself is in increasing lexicographic order.
    std::vector<std::vector<int>> witnesses;
};

// Krull dimension of R/I via independent sets modulo the leading-term
// ideal: S is independent when no leading monomial is supported on S alone.
inline DimensionResult dimension(const Ideal& I) {
    const GroebnerBasis& gb = I.groebner();
    if (gb.is_trivial()) throw EngineError("dimension of the unit ideal");
    size_t n = I.ring()->n();
    if (n > 20) throw EngineError("too many variables for independent-set enumeration");

    std::vector<Monomial> lts;
    for (const auto& g : gb.gens) lts.push_back(g.leading_monomial());

    auto independent = [&](unsigned mask) {
        for (const auto& m : lts) {
            bool supported = true;
            for (size_t v = 0; v < n; ++v)
                if (m[v] > 0 && !(mask & (1u << v))) { supported = false; break; }
            if (supported) return false;
        }
        return true;
    };

    DimensionResult out{0, {}};
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (!independent(mask)) continue;
        int size = std::popcount(mask);
        if (size > out.dim) {
            out.dim = size;
            out.witnesses.clear();
        }
        if (size == out.dim) {
            std::vector<int> vars;
            for (size_t v = 0; v < n; ++v)
                if (mask & (1u << v)) vars.push_back(static_cast<int>(v));
            out.witnesses.push_back(std::move(vars));
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

inline std::vector<int> smallest_independent_set(const Ideal& I) {
    return dimension(I).witnesses.front();
}

}  // namespace noethops
