// Exact Gauss-Jordan elimination over an arbitrary field, shared by the
// rational, rational-function, and residue-field layers.
//
// The Field parameter supplies arithmetic plus a pivot weight; among rows
// with a nonzero entry in the current column the smallest weight (then the
// smallest row index) wins, which keeps the elimination deterministic and
// lets fraction fields prefer pivots with small denominators.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "noethops/rational_function.hpp"

namespace noethops {

template <class Field>
struct RrefResult {
    using V = typename Field::value_type;
    std::vector<std::vector<V>> rows;  // nonzero rows in reduced echelon form
    std::vector<int> pivots;           // pivot column of each row, increasing
    int rank = 0;
    std::vector<std::vector<V>> kernel;  // right-kernel basis, one per free column
};

template <class Field>
RrefResult<Field> row_reduce(std::vector<std::vector<typename Field::value_type>> m,
                             const Field& F, bool want_kernel = false) {
    RrefResult<Field> out;
    if (m.empty()) return out;
    size_t cols = m[0].size();
    for (const auto& row : m)
        if (row.size() != cols) throw EngineError("row_reduce: ragged matrix");

    size_t r = 0;
    for (size_t col = 0; col < cols && r < m.size(); ++col) {
        // Pivot selection: smallest weight, then earliest row.
        size_t best = m.size();
        long best_w = 0;
        for (size_t i = r; i < m.size(); ++i) {
            if (F.is_zero(m[i][col])) continue;
            long w = F.pivot_weight(m[i][col]);
            if (best == m.size() || w < best_w) {
                best = i;
                best_w = w;
            }
        }
        if (best == m.size()) continue;
        std::swap(m[r], m[best]);

        auto inv = F.inv(m[r][col]);
        for (size_t j = col; j < cols; ++j) m[r][j] = F.mul(m[r][j], inv);
        m[r][col] = F.one();
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || F.is_zero(m[i][col])) continue;
            auto factor = m[i][col];
            for (size_t j = col; j < cols; ++j)
                m[i][j] = F.sub(m[i][j], F.mul(factor, m[r][j]));
            m[i][col] = F.zero();
        }
        out.pivots.push_back(static_cast<int>(col));
        ++r;
    }
    out.rank = static_cast<int>(r);
    out.rows.assign(m.begin(), m.begin() + r);

    if (want_kernel) {
        std::vector<bool> is_pivot(cols, false);
        for (int p : out.pivots) is_pivot[p] = true;
        for (size_t f = 0; f < cols; ++f) {
            if (is_pivot[f]) continue;
            std::vector<typename Field::value_type> v(cols, F.zero());
            v[f] = F.one();
            for (size_t i = 0; i < out.rows.size(); ++i)
                v[out.pivots[i]] = F.neg(out.rows[i][f]);
            out.kernel.push_back(std::move(v));
        }
    }
    return out;
}

// Solves A x = b; empty when the system is inconsistent. Free variables
// are set to zero.
template <class Field>
std::optional<std::vector<typename Field::value_type>> linear_solve(
    std::vector<std::vector<typename Field::value_type>> a,
    const std::vector<typename Field::value_type>& b, const Field& F) {
    if (a.size() != b.size()) throw EngineError("linear_solve: size mismatch");
    if (a.empty()) return std::vector<typename Field::value_type>{};
    size_t cols = a[0].size();
    for (size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    auto red = row_reduce(std::move(a), F);
    std::vector<typename Field::value_type> x(cols, F.zero());
    for (size_t i = 0; i < red.rows.size(); ++i) {
        if (red.pivots[i] == static_cast<int>(cols)) return std::nullopt;
        x[red.pivots[i]] = red.rows[i][cols];
    }
    return x;
}

struct RationalField {
    using value_type = mpq_class;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw EngineError("division by zero");
        return 1 / a;
    }
    long pivot_weight(const value_type&) const { return 0; }
};

struct RationalFunctionField {
    using value_type = RationalFunction;
    RingPtr ring;

    value_type zero() const { return RationalFunction::scalar(ring, 0); }
    value_type one() const { return RationalFunction::scalar(ring, 1); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    value_type add(const value_type& a, const value_type& b) const { return rf_add(a, b); }
    value_type sub(const value_type& a, const value_type& b) const { return rf_sub(a, b); }
    value_type mul(const value_type& a, const value_type& b) const { return rf_mul(a, b); }
    value_type neg(const value_type& a) const { return rf_neg(a); }
    value_type inv(const value_type& a) const { return rf_invert(a); }
    long pivot_weight(const value_type& a) const { return a.den().degree(); }
};

}  // namespace noethops
