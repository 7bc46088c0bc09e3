#pragma once

#include <cstddef>
#include <vector>

#include "vecmax/scalar.hpp"
#include "vecmax/vector.hpp"

namespace vecmax::detail {

/// Pivot threshold for Gaussian elimination: zero in exact mode.
template <class T>
T pivot_epsilon() {
    if constexpr (is_exact_v<T>) {
        return T(0);
    } else {
        return 1e-12;
    }
}

/// Basis of { v : <r, v> = 0 for every row r }, by reduced row echelon form.
template <class T>
std::vector<BasicVector<T>> nullspace(const std::vector<BasicVector<T>>& rows, std::size_t dim) {
    std::vector<std::vector<T>> m;
    m.reserve(rows.size());
    T scale(0);
    for (const auto& r : rows) {
        if (r.dim() != dim) throw DimensionMismatch(dim, r.dim());
        m.emplace_back(r.entries().begin(), r.entries().end());
        for (const auto& e : m.back()) scale = std::max(scale, abs_value(e));
    }
    const T eps = pivot_epsilon<T>() * (scale > T(0) ? scale : T(1));

    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < dim && row < m.size(); ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (abs_value(m[r][col]) > abs_value(m[best][col])) best = r;
        }
        if (abs_value(m[best][col]) <= eps) continue;
        std::swap(m[row], m[best]);
        const T p = m[row][col];
        for (auto& e : m[row]) e /= p;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == T(0)) continue;
            const T f = m[r][col];
            for (std::size_t c = 0; c < dim; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_cols.push_back(col);
        ++row;
    }

    std::vector<bool> is_pivot(dim, false);
    for (auto c : pivot_cols) is_pivot[c] = true;

    std::vector<BasicVector<T>> basis;
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free]) continue;
        BasicVector<T> v(dim);
        v[free] = T(1);
        for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -m[r][free];
        if constexpr (!is_exact_v<T>) {
            for (std::size_t c = 0; c < dim; ++c) {
                if (abs_value(v[c]) <= eps) v[c] = T(0);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
std::size_t rank(const std::vector<BasicVector<T>>& rows, std::size_t dim) {
    return dim - nullspace(rows, dim).size();
}

/// Scales v so that its largest-magnitude entry is +-1 (float) or its first nonzero entry is
/// +-1 (exact). Keeps generator lists canonical.
template <class T>
BasicVector<T> normalized(BasicVector<T> v) {
    T s(0);
    if constexpr (is_exact_v<T>) {
        for (std::size_t i = 0; i < v.dim() && s == T(0); ++i) s = abs_value(v[i]);
    } else {
        for (std::size_t i = 0; i < v.dim(); ++i) s = std::max(s, abs_value(v[i]));
    }
    if (s == T(0)) return v;
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] /= s;
    return v;
}

/// Calls `fn(subset)` for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        if (k == 0) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace vecmax::detail
