// Univariate factorization over QQ and over fraction fields QQ(S).
//
// Over QQ: Yun squarefree decomposition, then Zassenhaus on the monic
// transform: Berlekamp modulo the smallest good prime >= 13, linear Hensel
// lifting past the divisor coefficient bound, subset recombination with
// exact trial division.
//
// Over QQ(S): the S-variables are evaluated one at a time at a seeded
// random integer point, the specialization is factored recursively, and the
// factors are lifted back (u - a)-adically, each order-raising step being a
// linear solve against the base factorization; candidates are verified by
// exact trial division. Budget: at most two S-variables and bounded total
// degree; beyond that the caller is asked for externally supplied primes.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>

#include "noethops/multigcd.hpp"
#include "noethops/rational_function.hpp"

namespace noethops {

namespace detail {

// ----- dense integer univariate polynomials -----

using ZPoly = std::vector<mpz_class>;

inline void z_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int z_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    z_trim(out);
    return out;
}

inline ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    z_trim(out);
    return out;
}

inline mpz_class sym_mod(const mpz_class& x, const mpz_class& m) {
    mpz_class r = x % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

inline void z_mod_sym(ZPoly& a, const mpz_class& m) {
    for (auto& c : a) c = sym_mod(c, m);
    z_trim(a);
}

// Exact division by a monic divisor; nullopt when the remainder is nonzero.
inline std::optional<ZPoly> z_divide_monic(const ZPoly& a, const ZPoly& b) {
    if (b.empty() || b.back() != 1) throw EngineError("divisor is not monic");
    if (z_deg(a) < z_deg(b)) return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    ZPoly work = a, q(a.size() - b.size() + 1, 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        mpz_class c = work[i + z_deg(b)];
        q[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) work[i + j] -= c * b[j];
    }
    z_trim(work);
    if (!work.empty()) return std::nullopt;
    z_trim(q);
    return q;
}

// ----- arithmetic modulo a small prime -----

struct Fp {
    int64_t p;
    int64_t norm(int64_t a) const {
        a %= p;
        return a < 0 ? a + p : a;
    }
    int64_t mul(int64_t a, int64_t b) const { return (a * b) % p; }
    int64_t pow(int64_t a, int64_t e) const {
        int64_t r = 1;
        a = norm(a);
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    int64_t inv(int64_t a) const { return pow(a, p - 2); }
};

using FpPoly = std::vector<int64_t>;

inline void fpp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int fpp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

inline FpPoly fpp_from_z(const ZPoly& a, const Fp& F) {
    FpPoly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        mpz_class r = a[i] % F.p;
        if (r < 0) r += F.p;
        out[i] = r.get_si();
    }
    fpp_trim(out);
    return out;
}

inline FpPoly fpp_mul(const FpPoly& a, const FpPoly& b, const Fp& F) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % F.p;
    fpp_trim(out);
    return out;
}

inline FpPoly fpp_sub(const FpPoly& a, const FpPoly& b, const Fp& F) {
    FpPoly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] = F.norm(out[i] - b[i]);
    fpp_trim(out);
    return out;
}

inline FpPoly fpp_scale(const FpPoly& a, int64_t c, const Fp& F) {
    FpPoly out = a;
    for (auto& x : out) x = F.mul(x, F.norm(c));
    fpp_trim(out);
    return out;
}

inline std::pair<FpPoly, FpPoly> fpp_divmod(const FpPoly& a, const FpPoly& b, const Fp& F) {
    if (b.empty()) throw EngineError("division by zero modulo p");
    FpPoly r = a, q;
    if (fpp_deg(a) >= fpp_deg(b)) q.assign(a.size() - b.size() + 1, 0);
    int64_t lcinv = F.inv(b.back());
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        if (static_cast<size_t>(i + fpp_deg(b)) >= r.size()) continue;
        int64_t c = F.mul(r[i + fpp_deg(b)], lcinv);
        q[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.norm(r[i + j] - c * b[j] % F.p);
    }
    fpp_trim(q);
    fpp_trim(r);
    return {q, r};
}

inline FpPoly fpp_mod(const FpPoly& a, const FpPoly& b, const Fp& F) {
    return fpp_divmod(a, b, F).second;
}

inline FpPoly fpp_monic(const FpPoly& a, const Fp& F) {
    if (a.empty()) return a;
    return fpp_scale(a, F.inv(a.back()), F);
}

inline FpPoly fpp_gcd(FpPoly a, FpPoly b, const Fp& F) {
    while (!b.empty()) {
        FpPoly r = fpp_mod(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return fpp_monic(a, F);
}

inline FpPoly fpp_derivative(const FpPoly& a, const Fp& F) {
    FpPoly out;
    for (size_t i = 1; i < a.size(); ++i) out.push_back(F.norm(a[i] * static_cast<int64_t>(i % F.p)));
    fpp_trim(out);
    return out;
}

// Inverse of a modulo h (coprime), by the extended Euclidean algorithm.
inline FpPoly fpp_inv_mod(const FpPoly& a, const FpPoly& h, const Fp& F) {
    FpPoly r0 = h, r1 = fpp_mod(a, h, F);
    FpPoly t0, t1 = {1};
    while (fpp_deg(r1) > 0) {
        auto [q, r] = fpp_divmod(r0, r1, F);
        FpPoly t2 = fpp_sub(t0, fpp_mul(q, t1, F), F);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r1.empty()) throw EngineError("elements are not coprime modulo p");
    return fpp_mod(fpp_scale(t1, F.inv(r1[0]), F), h, F);
}

// Monic irreducible factors of a monic squarefree polynomial modulo p.
inline std::vector<FpPoly> berlekamp(const FpPoly& f, const Fp& F) {
    int d = fpp_deg(f);
    if (d <= 1) return {f};

    // Rows of the Frobenius matrix: x^(i*p) mod f.
    FpPoly x = {0, 1};
    FpPoly xp = {1};
    {
        int64_t e = F.p;
        FpPoly base = fpp_mod(x, f, F);
        while (e > 0) {
            if (e & 1) xp = fpp_mod(fpp_mul(xp, base, F), f, F);
            base = fpp_mod(fpp_mul(base, base, F), f, F);
            e >>= 1;
        }
    }
    std::vector<FpPoly> rows(d);
    rows[0] = {1};
    for (int i = 1; i < d; ++i) rows[i] = fpp_mod(fpp_mul(rows[i - 1], xp, F), f, F);

    // Null space of (Q - I)^T gives the Berlekamp subalgebra.
    std::vector<std::vector<int64_t>> A(d, std::vector<int64_t>(d, 0));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            int64_t q = (c < static_cast<int>(rows[r].size())) ? rows[r][c] : 0;
            A[c][r] = F.norm(q - (r == c ? 1 : 0));
        }
    std::vector<int> pivot_col(d, -1);
    int rank = 0;
    for (int col = 0; col < d && rank < d; ++col) {
        int sel = -1;
        for (int row = rank; row < d; ++row)
            if (A[row][col] != 0) { sel = row; break; }
        if (sel < 0) continue;
        std::swap(A[rank], A[sel]);
        int64_t inv = F.inv(A[rank][col]);
        for (int c = 0; c < d; ++c) A[rank][c] = F.mul(A[rank][c], inv);
        for (int row = 0; row < d; ++row) {
            if (row == rank || A[row][col] == 0) continue;
            int64_t c0 = A[row][col];
            for (int c = 0; c < d; ++c) A[row][c] = F.norm(A[row][c] - c0 * A[rank][c] % F.p);
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<FpPoly> basis;
    for (int col = 0; col < d; ++col) {
        bool is_pivot = false;
        for (int r = 0; r < rank; ++r)
            if (pivot_col[r] == col) { is_pivot = true; break; }
        if (is_pivot) continue;
        FpPoly v(d, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.norm(-A[r][col]);
        fpp_trim(v);
        basis.push_back(std::move(v));
    }
    size_t r_factors = d - rank;  // nullity = number of irreducible factors

    std::vector<FpPoly> factors = {fpp_monic(f, F)};
    while (factors.size() < r_factors) {
        bool progress = false;
        for (const auto& v : basis) {
            if (fpp_deg(v) < 1) continue;
            for (int64_t s = 0; s < F.p && factors.size() < r_factors; ++s) {
                FpPoly vs = v;
                if (vs.empty()) vs = {0};
                vs[0] = F.norm(vs[0] - s);
                fpp_trim(vs);
                for (size_t i = 0; i < factors.size(); ++i) {
                    if (fpp_deg(factors[i]) <= 1) continue;
                    FpPoly g = fpp_gcd(factors[i], vs, F);
                    if (fpp_deg(g) > 0 && fpp_deg(g) < fpp_deg(factors[i])) {
                        FpPoly rest = fpp_divmod(factors[i], g, F).first;
                        factors[i] = fpp_monic(g, F);
                        factors.push_back(fpp_monic(rest, F));
                        progress = true;
                    }
                }
            }
        }
        if (!progress) break;
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

inline bool is_prime_int(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest prime >= 13 modulo which M stays squarefree.
inline int64_t good_prime(const ZPoly& M) {
    for (int64_t p = 13;; ++p) {
        if (!is_prime_int(p)) continue;
        Fp F{p};
        FpPoly m = fpp_from_z(M, F);
        if (fpp_deg(m) != z_deg(M)) continue;
        if (fpp_deg(fpp_gcd(m, fpp_derivative(m, F), F)) == 0) return p;
        if (p > 100000) throw EngineError("no good prime found");
    }
}

// Monic irreducible integer factors of a monic squarefree integer
// polynomial, by Berlekamp + Hensel + subset recombination.
inline std::vector<ZPoly> zassenhaus_monic(const ZPoly& M) {
    int d = z_deg(M);
    if (d <= 1) return {M};

    int64_t p = good_prime(M);
    Fp F{p};
    std::vector<FpPoly> base = berlekamp(fpp_from_z(M, F), F);
    if (base.size() == 1) return {M};

    // Divisor coefficient bound: any monic divisor has |coeff| <= 2^d * ||M||_2.
    mpz_class norm2 = 0;
    for (const auto& c : M) norm2 += c * c;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), norm2.get_mpz_t());
    if (s * s < norm2) s += 1;
    mpz_class bound = (mpz_class(1) << d) * s;
    mpz_class needed = 2 * bound + 1;

    // Bezout data modulo p for the linear Hensel step.
    size_t r = base.size();
    std::vector<FpPoly> cofactor_inv(r);
    for (size_t j = 0; j < r; ++j) {
        FpPoly prod = {1};
        for (size_t l = 0; l < r; ++l)
            if (l != j) prod = fpp_mod(fpp_mul(prod, base[l], F), base[j], F);
        cofactor_inv[j] = fpp_inv_mod(prod, base[j], F);
    }

    std::vector<ZPoly> lifted(r);
    for (size_t j = 0; j < r; ++j) {
        lifted[j].assign(base[j].begin(), base[j].end());
        z_mod_sym(lifted[j], mpz_class(p));
    }
    mpz_class modulus = p;
    while (modulus < needed) {
        ZPoly prod = {1};
        for (const auto& g : lifted) prod = z_mul(prod, g);
        ZPoly err = z_sub(M, prod);
        FpPoly ebar;
        {
            ZPoly scaled = err;
            for (auto& c : scaled) c /= modulus;
            ebar = fpp_from_z(scaled, F);
        }
        mpz_class next = modulus * p;
        if (!ebar.empty()) {
            for (size_t j = 0; j < r; ++j) {
                FpPoly delta = fpp_mod(fpp_mul(ebar, cofactor_inv[j], F), base[j], F);
                for (size_t i = 0; i < delta.size(); ++i) {
                    mpz_class add = sym_mod(mpz_class(delta[i]), mpz_class(p)) * modulus;
                    if (i >= lifted[j].size()) lifted[j].resize(i + 1, 0);
                    lifted[j][i] += add;
                }
                z_mod_sym(lifted[j], next);
            }
        }
        modulus = next;
    }

    // Recombination: smallest subsets first, verified by exact division.
    std::vector<size_t> pool(r);
    for (size_t i = 0; i < r; ++i) pool[i] = i;
    std::vector<ZPoly> out;
    ZPoly rem = M;
    size_t c = 1;
    while (c <= pool.size() / 2) {
        std::vector<size_t> comb(c);
        for (size_t i = 0; i < c; ++i) comb[i] = i;
        bool found = false;
        while (true) {
            ZPoly cand = {1};
            for (size_t i : comb) cand = z_mul(cand, lifted[pool[i]]);
            z_mod_sym(cand, modulus);
            if (auto q = z_divide_monic(rem, cand)) {
                out.push_back(cand);
                rem = *q;
                std::vector<size_t> next_pool;
                for (size_t i = 0; i < pool.size(); ++i)
                    if (std::find(comb.begin(), comb.end(), i) == comb.end())
                        next_pool.push_back(pool[i]);
                pool = std::move(next_pool);
                found = true;
                break;
            }
            // next combination
            int pos = static_cast<int>(c) - 1;
            while (pos >= 0 && comb[pos] == pool.size() - c + pos) --pos;
            if (pos < 0) break;
            ++comb[pos];
            for (size_t i = pos + 1; i < c; ++i) comb[i] = comb[i - 1] + 1;
        }
        if (!found) ++c;
    }
    if (z_deg(rem) > 0) out.push_back(rem);
    std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

// ----- bridging dense vectors and Polynomial -----

inline ZPoly integer_coeffs(const Polynomial& f, int var) {
    auto cs = chief_coefficients(f, var);
    ZPoly out;
    for (const auto& c : cs) {
        if (!c.is_zero() && !c.is_constant())
            throw EngineError("polynomial is not univariate");
        mpq_class v = c.is_zero() ? mpq_class(0) : c.constant_value();
        if (v.get_den() != 1) throw EngineError("polynomial has non-integer coefficients");
        out.push_back(v.get_num());
    }
    z_trim(out);
    return out;
}

inline Polynomial poly_from_dense(const ZPoly& a, int var, const RingPtr& ring) {
    Polynomial out = Polynomial::zero(ring);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Monomial m(ring->n(), 0);
        m[var] = static_cast<int>(i);
        out = poly_add(out, Polynomial::term(ring, m, mpq_class(a[i])));
    }
    return out;
}

// Irreducible primitive factors of a primitive squarefree integer
// polynomial with positive leading coefficient.
inline std::vector<Polynomial> factor_squarefree_integer(const Polynomial& f, int var) {
    const RingPtr& ring = f.ring();
    ZPoly a = integer_coeffs(f, var);
    int d = z_deg(a);
    if (d <= 1) return {f};
    mpz_class b = a.back();

    // Monic transform M(x) = b^(d-1) f(x/b).
    ZPoly M(a.size());
    mpz_class pw = 1;
    for (int i = d; i >= 0; --i) {
        M[i] = a[i] * pw;
        if (i > 0) pw *= b;
    }
    std::vector<ZPoly> Gs = zassenhaus_monic(M);
    std::vector<Polynomial> out;
    for (const auto& G : Gs) {
        // Map back: primitive part of G(b*x).
        ZPoly Fz(G.size());
        mpz_class q = 1;
        for (size_t i = 0; i < G.size(); ++i) {
            Fz[i] = G[i] * q;
            q *= b;
        }
        mpz_class content = 0;
        for (const auto& cz : Fz) content = mpz_gcd_of(content, cz);
        for (auto& cz : Fz) cz /= content;
        out.push_back(poly_from_dense(Fz, var, ring));
    }
    return out;
}

}  // namespace detail

namespace detail {

// ----- dense univariate machinery over K = QQ(rest variables) -----

using KPoly = std::vector<RationalFunction>;  // index = power of the main variable

struct ParamCtx {
    RingPtr ring;
    RationalFunction rf0, rf1;
    explicit ParamCtx(RingPtr r)
        : ring(r), rf0(RationalFunction::scalar(r, 0)), rf1(RationalFunction::scalar(r, 1)) {}
};

inline void kp_trim(KPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline int kp_deg(const KPoly& a) { return static_cast<int>(a.size()) - 1; }

inline KPoly kp_mul(const KPoly& a, const KPoly& b, const ParamCtx& cx) {
    if (a.empty() || b.empty()) return {};
    KPoly out(a.size() + b.size() - 1, cx.rf0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = rf_add(out[i + j], rf_mul(a[i], b[j]));
    kp_trim(out);
    return out;
}

inline KPoly kp_sub(const KPoly& a, const KPoly& b, const ParamCtx& cx) {
    KPoly out(std::max(a.size(), b.size()), cx.rf0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] = rf_sub(out[i], b[i]);
    kp_trim(out);
    return out;
}

inline KPoly kp_scale(const KPoly& a, const RationalFunction& c) {
    KPoly out = a;
    for (auto& x : out) x = rf_mul(x, c);
    kp_trim(out);
    return out;
}

inline std::pair<KPoly, KPoly> kp_divmod(const KPoly& a, const KPoly& b, const ParamCtx& cx) {
    if (b.empty()) throw EngineError("division by zero over the fraction field");
    KPoly r = a, q;
    if (kp_deg(a) >= kp_deg(b)) q.assign(a.size() - b.size() + 1, cx.rf0);
    RationalFunction lcinv = rf_invert(b.back());
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        if (static_cast<size_t>(i + kp_deg(b)) >= r.size()) continue;
        RationalFunction c = rf_mul(r[i + kp_deg(b)], lcinv);
        q[i] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = rf_sub(r[i + j], rf_mul(c, b[j]));
    }
    kp_trim(q);
    kp_trim(r);
    return {q, r};
}

inline KPoly kp_mod(const KPoly& a, const KPoly& b, const ParamCtx& cx) {
    return kp_divmod(a, b, cx).second;
}

inline KPoly kp_inv_mod(const KPoly& a, const KPoly& h, const ParamCtx& cx) {
    KPoly r0 = h, r1 = kp_mod(a, h, cx);
    KPoly t0, t1 = {cx.rf1};
    while (kp_deg(r1) > 0) {
        auto [q, r] = kp_divmod(r0, r1, cx);
        KPoly t2 = kp_sub(t0, kp_mul(q, t1, cx), cx);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r1.empty()) throw EngineError("elements are not coprime over the fraction field");
    return kp_mod(kp_scale(t1, rf_invert(r1[0])), h, cx);
}

inline bool kp_equal(const KPoly& a, const KPoly& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

// Truncated power series in u over K; index = power of u.
using USeries = std::vector<RationalFunction>;

inline void us_trim(USeries& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline USeries us_add(const USeries& a, const USeries& b) {
    USeries out(std::max(a.size(), b.size()));
    for (size_t i = 0; i < out.size(); ++i) {
        if (i < a.size() && i < b.size())
            out[i] = rf_add(a[i], b[i]);
        else if (i < a.size())
            out[i] = a[i];
        else
            out[i] = b[i];
    }
    us_trim(out);
    return out;
}

inline USeries us_sub(const USeries& a, const USeries& b) {
    USeries out = a;
    for (size_t i = 0; i < b.size(); ++i) {
        if (i < out.size())
            out[i] = rf_sub(out[i], b[i]);
        else
            out.push_back(rf_neg(b[i]));
    }
    us_trim(out);
    return out;
}

inline USeries us_mul(const USeries& a, const USeries& b, const ParamCtx& cx, int ucap = -1) {
    if (a.empty() || b.empty()) return {};
    size_t n = a.size() + b.size() - 1;
    if (ucap >= 0) n = std::min(n, static_cast<size_t>(ucap));
    USeries out(n, cx.rf0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            if (i + j >= n) continue;
            out[i + j] = rf_add(out[i + j], rf_mul(a[i], b[j]));
        }
    us_trim(out);
    return out;
}

inline USeries us_pow(const USeries& a, int e, const ParamCtx& cx, int ucap = -1) {
    USeries out = {cx.rf1};
    for (int i = 0; i < e; ++i) out = us_mul(out, a, cx, ucap);
    return out;
}

// Element of K[u][y]: outer index = power of y.
using UP = std::vector<USeries>;

inline UP up_mul(const UP& a, const UP& b, const ParamCtx& cx, int ucap = -1) {
    if (a.empty() || b.empty()) return {};
    UP out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = us_add(out[i + j], us_mul(a[i], b[j], cx, ucap));
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

inline UP up_sub(const UP& a, const UP& b) {
    UP out(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] = us_sub(out[i], b[i]);
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

inline KPoly up_layer(const UP& p, size_t k, const ParamCtx& cx) {
    KPoly out(p.size(), cx.rf0);
    for (size_t i = 0; i < p.size(); ++i)
        if (k < p[i].size()) out[i] = p[i][k];
    kp_trim(out);
    return out;
}

inline void up_add_layer(UP& p, size_t k, const KPoly& v) {
    if (v.size() > p.size()) p.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (p[i].size() <= k) p[i].resize(k + 1, RationalFunction::scalar(v[i].ring(), 0));
        p[i][k] = rf_add(p[i][k], v[i]);
    }
}

inline int up_udeg(const UP& p) {
    int d = -1;
    for (const auto& s : p) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

inline UP poly_to_up(const Polynomial& f, int y, int u, const ParamCtx& cx) {
    std::map<std::pair<int, int>, Polynomial> cells;
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        int iy = m[y], iu = m[u];
        m[y] = 0;
        m[u] = 0;
        Polynomial piece = Polynomial::term(cx.ring, m, t.coef);
        auto key = std::make_pair(iy, iu);
        auto it = cells.find(key);
        if (it == cells.end())
            cells.emplace(key, piece);
        else
            it->second = poly_add(it->second, piece);
    }
    UP out;
    for (const auto& [key, p] : cells) {
        auto [iy, iu] = key;
        if (p.is_zero()) continue;
        if (static_cast<size_t>(iy) >= out.size()) out.resize(iy + 1);
        if (out[iy].size() <= static_cast<size_t>(iu)) out[iy].resize(iu + 1, cx.rf0);
        out[iy][iu] = RationalFunction::from_poly(p);
    }
    return out;
}

inline Polynomial up_to_poly(const UP& p, int y, int u, const ParamCtx& cx) {
    Polynomial den = Polynomial::constant(cx.ring, 1);
    for (const auto& s : p)
        for (const auto& c : s) {
            RationalFunction r = c.reduced();
            if (!r.is_zero()) den = poly_lcm(den, r.den());
        }
    Polynomial out = Polynomial::zero(cx.ring);
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t k = 0; k < p[i].size(); ++k) {
            RationalFunction r = p[i][k].reduced();
            if (r.is_zero()) continue;
            Polynomial c = poly_mul(r.num(), poly_exact_div(den, r.den()));
            Monomial m(cx.ring->n(), 0);
            m[y] = static_cast<int>(i);
            m[u] = static_cast<int>(k);
            out = poly_add(out, poly_term_mul(c, m, 1));
        }
    return out;
}

// Exact division in K[u][y] by a divisor monic in y; nullopt on remainder.
inline std::optional<UP> up_divide_exact(const UP& a, const UP& b, const ParamCtx& cx) {
    if (b.empty() || b.back().size() != 1 || !(b.back()[0] == cx.rf1))
        throw EngineError("divisor is not monic in the main variable");
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < db) return std::nullopt;
    UP work = a, q(da - db + 1);
    for (int i = da - db; i >= 0; --i) {
        USeries c = (static_cast<size_t>(i + db) < work.size()) ? work[i + db] : USeries{};
        q[i] = c;
        if (c.empty()) continue;
        for (int j = 0; j <= db; ++j)
            work[i + j] = us_sub(work[i + j], us_mul(b[j], c, cx));
    }
    for (int j = 0; j < db; ++j)
        if (!work[j].empty()) return std::nullopt;
    return q;
}

inline RationalFunction rf_pow(const RationalFunction& a, int e) {
    RationalFunction out = RationalFunction::scalar(a.ring(), 1);
    for (int i = 0; i < e; ++i) out = rf_mul(out, a);
    return out;
}

// Divides out the gcd of the main-variable coefficients.
inline Polynomial strip_outer_content(const Polynomial& f, int y) {
    auto cs = chief_coefficients(f, y);
    std::vector<Polynomial> nonzero;
    for (const auto& c : cs)
        if (!c.is_zero()) nonzero.push_back(c);
    if (nonzero.empty()) return f;
    Polynomial g = poly_gcd_many(nonzero, f.ring());
    if (g.is_constant()) return f;
    return poly_exact_div(f, g);
}

inline Polynomial normalize_factor(const Polynomial& f, int y) {
    return poly_primitive_part(strip_outer_content(f, y));
}

inline std::vector<Polynomial> factor_param_squarefree(const Polynomial& g, int y,
                                                       std::vector<int> params,
                                                       std::mt19937& rng);

// Lifts the factorization of a specialization back along u, by linear
// order-raising steps against the base factors, then recombines.
inline std::vector<Polynomial> hensel_in_parameter(const Polynomial& g, int y, int u, int point,
                                                   const std::vector<Polynomial>& base_factors) {
    const RingPtr& ring = g.ring();
    ParamCtx cx(ring);
    int d = g.degree_in(y);

    Polynomial shift = poly_substitute(
        g, u, poly_add(Polynomial::variable(ring, u), Polynomial::constant(ring, point)));
    UP G = poly_to_up(shift, y, u, cx);

    // Monic transform M(y) = b^(d-1) * shifted(y/b) with b = lc_y(shifted).
    USeries b_series = G[d];
    UP M(d + 1);
    M[d] = {cx.rf1};
    for (int i = 0; i < d; ++i) M[i] = us_mul(G[i], us_pow(b_series, d - 1 - i, cx), cx);
    int U = up_udeg(M);
    int prec = U + 1;

    // Base factors of M at u = 0, made monic over K.
    RationalFunction b0 = b_series.empty() ? cx.rf0 : b_series[0];
    std::vector<KPoly> h;
    for (const auto& fj : base_factors) {
        auto cs = chief_coefficients(fj, y);
        int dj = chief_degree(cs);
        KPoly hj(dj + 1, cx.rf0);
        RationalFunction denom = RationalFunction::from_poly(cs[dj]);
        for (int i = 0; i <= dj; ++i) {
            if (cs[i].is_zero()) continue;
            hj[i] = rf_div(rf_mul(RationalFunction::from_poly(cs[i]), rf_pow(b0, dj - i)), denom);
        }
        h.push_back(std::move(hj));
    }
    {
        KPoly prod = {cx.rf1};
        for (const auto& hj : h) prod = kp_mul(prod, hj, cx);
        if (!kp_equal(prod, up_layer(M, 0, cx)))
            throw EngineError("base factorization does not match the specialization");
    }

    size_t r = h.size();
    std::vector<KPoly> cofactor_inv(r);
    for (size_t j = 0; j < r; ++j) {
        KPoly prod = {cx.rf1};
        for (size_t l = 0; l < r; ++l)
            if (l != j) prod = kp_mod(kp_mul(prod, h[l], cx), h[j], cx);
        cofactor_inv[j] = kp_inv_mod(prod, h[j], cx);
    }

    std::vector<UP> lifted(r);
    for (size_t j = 0; j < r; ++j) {
        lifted[j].resize(h[j].size());
        for (size_t i = 0; i < h[j].size(); ++i)
            if (!h[j][i].is_zero()) lifted[j][i] = {h[j][i]};
    }
    for (int k = 1; k < prec; ++k) {
        UP prod = lifted[0];
        for (size_t j = 1; j < r; ++j) prod = up_mul(prod, lifted[j], cx, prec);
        UP err = up_sub(M, prod);
        KPoly layer = up_layer(err, k, cx);
        if (layer.empty()) continue;
        for (size_t j = 0; j < r; ++j) {
            KPoly delta = kp_mod(kp_mul(layer, cofactor_inv[j], cx), h[j], cx);
            up_add_layer(lifted[j], k, delta);
        }
    }

    // Recombination with exact trial division in K[u][y].
    std::vector<size_t> pool(r);
    for (size_t i = 0; i < r; ++i) pool[i] = i;
    std::vector<UP> found;
    UP rem = M;
    size_t c = 1;
    while (c <= pool.size() / 2) {
        std::vector<size_t> comb(c);
        for (size_t i = 0; i < c; ++i) comb[i] = i;
        bool hit = false;
        while (true) {
            UP cand = lifted[pool[comb[0]]];
            for (size_t i = 1; i < c; ++i) cand = up_mul(cand, lifted[pool[comb[i]]], cx, prec);
            if (auto q = up_divide_exact(rem, cand, cx)) {
                found.push_back(cand);
                rem = *q;
                std::vector<size_t> next_pool;
                for (size_t i = 0; i < pool.size(); ++i)
                    if (std::find(comb.begin(), comb.end(), i) == comb.end())
                        next_pool.push_back(pool[i]);
                pool = std::move(next_pool);
                hit = true;
                break;
            }
            int pos = static_cast<int>(c) - 1;
            while (pos >= 0 && comb[pos] == pool.size() - c + pos) --pos;
            if (pos < 0) break;
            ++comb[pos];
            for (size_t i = pos + 1; i < c; ++i) comb[i] = comb[i - 1] + 1;
        }
        if (!hit) ++c;
    }
    if (static_cast<int>(rem.size()) - 1 > 0) found.push_back(rem);

    // Map back: factor of shifted = C(b*y) up to content, then unshift u.
    std::vector<Polynomial> out;
    for (const auto& C : found) {
        UP Fj = C;
        for (size_t i = 0; i < Fj.size(); ++i)
            Fj[i] = us_mul(Fj[i], us_pow(b_series, static_cast<int>(i), cx), cx);
        Polynomial p = up_to_poly(Fj, y, u, cx);
        p = poly_substitute(p, u, poly_sub(Polynomial::variable(ring, u),
                                           Polynomial::constant(ring, point)));
        out.push_back(normalize_factor(p, y));
    }
    std::sort(out.begin(), out.end(),
              [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) < 0; });
    return out;
}

// Irreducible factors over QQ(params) of a squarefree primitive g.
inline std::vector<Polynomial> factor_param_squarefree(const Polynomial& g, int y,
                                                       std::vector<int> params,
                                                       std::mt19937& rng) {
    if (params.empty()) return factor_squarefree_integer(poly_primitive_part(g), y);
    int d = g.degree_in(y);
    if (d == 1) return {g};

    const RingPtr& ring = g.ring();
    int u = params.back();
    std::vector<int> rest(params.begin(), params.end() - 1);

    int point = 0;
    Polynomial g_eval = Polynomial::zero(ring);
    bool ok = false;
    std::uniform_int_distribution<int> dist(-40, 40);
    for (int tries = 0; tries < 200; ++tries) {
        int a = dist(rng);
        Polynomial cand = poly_substitute(g, u, Polynomial::constant(ring, a));
        if (cand.degree_in(y) != d) continue;
        Polynomial sq = poly_gcd(cand, poly_derivative(cand, y));
        if (sq.degree_in(y) != 0) continue;
        point = a;
        g_eval = cand;
        ok = true;
        break;
    }
    if (!ok) throw EngineError("no good evaluation point for factorization");

    std::vector<Polynomial> base =
        factor_param_squarefree(normalize_factor(g_eval, y), y, rest, rng);
    if (base.size() == 1) return {normalize_factor(g, y)};
    return hensel_in_parameter(g, y, u, point, base);
}

// Yun squarefree decomposition in the main variable; parts are primitive
// with positive leading coefficient, and multiplicities are exact.
inline std::vector<std::pair<Polynomial, int>> squarefree_parts(const Polynomial& f, int y) {
    Polynomial fp = normalize_factor(f, y);
    Polynomial df = poly_derivative(fp, y);
    Polynomial a = poly_gcd(fp, df);
    std::vector<std::pair<Polynomial, int>> out;
    if (a.is_constant()) {
        out.push_back({fp, 1});
        return out;
    }
    Polynomial b = poly_exact_div(fp, a);
    Polynomial c = poly_exact_div(df, a);
    Polynomial dd = poly_sub(c, poly_derivative(b, y));
    int i = 1;
    while (b.degree_in(y) > 0) {
        Polynomial g = poly_gcd(b, dd);
        if (!g.is_constant()) out.push_back({poly_primitive_part(g), i});
        b = poly_exact_div(b, g);
        c = poly_exact_div(dd, g);
        dd = poly_sub(c, poly_derivative(b, y));
        ++i;
    }
    return out;
}

}  // namespace detail

struct UnivariateFactors {
    RationalFunction unit;  // in QQ(params); product of factor powers times unit = input
    std::vector<std::pair<Polynomial, int>> factors;  // irreducible, primitive, positive lc
};

namespace config {
inline constexpr int default_factor_degree_budget = 12;
inline constexpr int max_factor_parameters = 2;
}  // namespace config

// Factors f, univariate in main_var over QQ(param_vars). The budget bounds
// the parameter count and (for nonempty parameter sets) the total degree;
// exceeding it raises an engine error asking for supplied primes.
inline UnivariateFactors factor_univariate(const Polynomial& f, int main_var,
                                           const std::vector<int>& param_vars,
                                           unsigned seed = 0,
                                           int max_total_degree = config::default_factor_degree_budget) {
    if (f.is_zero()) throw EngineError("factorization of the zero polynomial");
    const RingPtr& ring = f.ring();
    std::vector<int> used_params;
    for (int v = 0; v < static_cast<int>(ring->n()); ++v) {
        if (!f.uses_variable(v)) continue;
        if (v == main_var) continue;
        if (std::find(param_vars.begin(), param_vars.end(), v) == param_vars.end())
            throw EngineError("polynomial is not univariate over the given parameters");
        used_params.push_back(v);
    }
    if (static_cast<int>(used_params.size()) > config::max_factor_parameters)
        throw EngineError(
            "factorization budget exceeded (too many fraction-field parameters); "
            "supply associated primes externally");
    if (!used_params.empty() && f.degree() > max_total_degree)
        throw EngineError(
            "factorization budget exceeded (total degree too large); "
            "supply associated primes externally");

    UnivariateFactors out{RationalFunction::scalar(ring, 1), {}};
    if (f.degree_in(main_var) == 0) {
        out.unit = RationalFunction::from_poly(f);
        return out;
    }

    std::mt19937 rng(seed);
    for (const auto& [part, mult] : detail::squarefree_parts(f, main_var)) {
        for (auto& g : detail::factor_param_squarefree(part, main_var, used_params, rng))
            out.factors.push_back({g, mult});
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_cmp(a.first, b.first) < 0; });

    Polynomial prod = Polynomial::constant(ring, 1);
    for (const auto& [g, m] : out.factors) prod = poly_mul(prod, poly_pow(g, m));
    out.unit = RationalFunction(f, prod).reduced();
    if (out.unit.num().degree_in(main_var) != 0 || out.unit.den().degree_in(main_var) != 0)
        throw EngineError("internal factorization consistency failure");
    return out;
}

// Factorization over QQ of a polynomial in a single variable.
inline UnivariateFactors factor_univariate_rational(const Polynomial& f) {
    if (f.is_zero()) throw EngineError("factorization of the zero polynomial");
    int var = -1;
    for (int v = 0; v < static_cast<int>(f.ring()->n()); ++v) {
        if (!f.uses_variable(v)) continue;
        if (var >= 0) throw EngineError("polynomial is not univariate");
        var = v;
    }
    if (var < 0) {
        return {RationalFunction::from_poly(f), {}};
    }
    return factor_univariate(f, var, {});
}

}  // namespace noethops
