// Rational functions: quotients of polynomials, used as the coefficient
// field QQ(S) for computations relative to an independent variable set S.
//
// Values are kept with a sign-normalized denominator (positive leading
// coefficient). Full gcd reduction is lazy: it runs only when numerator or
// denominator exceed a term-count threshold, because the multivariate gcd
// is far more expensive than letting desk-scale operands grow a little.
#pragma once

#include <string>

#include "noethops/multigcd.hpp"
#include "noethops/parse.hpp"

namespace noethops {

namespace config {
// Term count past which rational functions are gcd-reduced eagerly.
inline int rf_reduce_threshold = 64;
}  // namespace config

class RationalFunction {
public:
    RationalFunction() = default;

    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw EngineError("rational function with zero denominator");
        normalize();
        maybe_reduce();
    }

    static RationalFunction from_poly(Polynomial p) {
        Polynomial one = Polynomial::constant(p.ring(), 1);
        return RationalFunction(std::move(p), std::move(one));
    }

    static RationalFunction scalar(const RingPtr& ring, const mpq_class& c) {
        return from_poly(Polynomial::constant(ring, c));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const RingPtr& ring() const { return num_.ring(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    bool den_is_one() const { return den_.is_constant() && den_.constant_value() == 1; }

    // Decidable without reduction: cross-multiplied comparison.
    bool operator==(const RationalFunction& other) const {
        return poly_mul(num_, other.den_) == poly_mul(other.num_, den_);
    }
    bool operator!=(const RationalFunction& other) const { return !(*this == other); }

    RationalFunction reduced() const {
        RationalFunction r = *this;
        r.reduce();
        return r;
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(den_.ring(), 1);
            return;
        }
        // Make the denominator integer-primitive with a positive leading
        // coefficient, folding the correction into the numerator.
        mpq_class c = poly_rational_content(den_);
        if (den_.leading_coefficient() < 0) c = -c;
        if (c != 1) {
            den_ = poly_scale(den_, 1 / c);
            num_ = poly_scale(num_, 1 / c);
        }
    }

    void maybe_reduce() {
        if (static_cast<int>(num_.term_count()) > config::rf_reduce_threshold ||
            static_cast<int>(den_.term_count()) > config::rf_reduce_threshold)
            reduce();
    }

    void reduce() {
        if (num_.is_zero() || den_is_one()) return;
        Polynomial g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = poly_exact_div(num_, g);
            den_ = poly_exact_div(den_, g);
        }
        normalize();
    }

    Polynomial num_, den_;

    friend RationalFunction rf_add(const RationalFunction&, const RationalFunction&);
    friend RationalFunction rf_mul(const RationalFunction&, const RationalFunction&);
};

inline RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_)
        return RationalFunction(poly_add(a.num_, b.num_), a.den_);
    return RationalFunction(
        poly_add(poly_mul(a.num_, b.den_), poly_mul(b.num_, a.den_)),
        poly_mul(a.den_, b.den_));
}

inline RationalFunction rf_neg(const RationalFunction& a) {
    if (a.is_zero()) return a;
    return RationalFunction(poly_neg(a.num()), a.den());
}

inline RationalFunction rf_sub(const RationalFunction& a, const RationalFunction& b) {
    return rf_add(a, rf_neg(b));
}

inline RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    return RationalFunction(poly_mul(a.num_, b.num_), poly_mul(a.den_, b.den_));
}

inline RationalFunction rf_invert(const RationalFunction& a) {
    if (a.is_zero()) throw EngineError("inverting the zero rational function");
    return RationalFunction(a.den(), a.num());
}

inline RationalFunction rf_div(const RationalFunction& a, const RationalFunction& b) {
    return rf_mul(a, rf_invert(b));
}

inline RationalFunction rf_scale(const RationalFunction& a, const mpq_class& c) {
    if (c == 0) return RationalFunction::scalar(a.ring(), 0);
    return RationalFunction(poly_scale(a.num(), c), a.den());
}

inline std::string format_rational_function(const RationalFunction& a) {
    RationalFunction r = a.reduced();
    if (r.den_is_one()) return format_poly(r.num());
    std::string n = format_poly(r.num());
    std::string d = format_poly(r.den());
    if (r.num().term_count() > 1) n = "(" + n + ")";
    if (r.den().term_count() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace noethops
