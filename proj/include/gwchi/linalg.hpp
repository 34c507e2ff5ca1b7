/*
   Copyright 2026 The gwchi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GWCHI_LINALG_HPP
#define GWCHI_LINALG_HPP

#include <optional>
#include <vector>

#include "error.hpp"

namespace gwchi::la {

template <class E>
using Vec = std::vector<E>;
template <class E>
using Mat = std::vector<std::vector<E>>;  // row major

template <class F>
auto zeros(const F& f, std::size_t rows, std::size_t cols) {
    using E = decltype(f.zero());
    return Mat<E>(rows, Vec<E>(cols, f.zero()));
}

template <class F>
auto identity(const F& f, std::size_t n) {
    auto m = zeros(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = f.one();
    return m;
}

template <class E, class F>
Mat<E> mul(const F& f, const Mat<E>& a, const Mat<E>& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat<E> r(n, Vec<E>(m, f.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

template <class E, class F>
Vec<E> apply(const F& f, const Mat<E>& a, const Vec<E>& x) {
    Vec<E> r(a.size(), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!x[j].is_zero()) r[i] += a[i][j] * x[j];
    return r;
}

template <class E, class F>
Mat<E> power(const F& f, Mat<E> a, unsigned e) {
    Mat<E> r = identity(f, a.size());
    while (e) {
        if (e & 1U) r = mul(f, r, a);
        e >>= 1U;
        if (e) a = mul(f, a, a);
    }
    return r;
}

template <class E>
bool is_zero_vec(const Vec<E>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class E>
std::vector<std::size_t> rref(Mat<E>& a) {
    std::vector<std::size_t> piv;
    if (a.empty()) return piv;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const E inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const E f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

template <class E>
std::size_t rank(Mat<E> a) {
    return rref(a).size();
}

/// Basis of {x : a x = 0}.
template <class E, class F>
std::vector<Vec<E>> nullspace(const F& f, Mat<E> a, std::size_t cols) {
    auto piv = rref(a);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec<E>> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        Vec<E> v(cols, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

/// Solves sum_k c_k cols[k] = b; nothing when b is not in the span.
template <class E, class F>
std::optional<Vec<E>> solve_columns(const F& f, const std::vector<Vec<E>>& cols, const Vec<E>& b) {
    const std::size_t n = b.size(), k = cols.size();
    Mat<E> a(n, Vec<E>(k + 1, f.zero()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = cols[j][i];
        a[i][k] = b[i];
    }
    auto piv = rref(a);
    if (!piv.empty() && piv.back() == k) return std::nullopt;
    Vec<E> x(k, f.zero());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][k];
    return x;
}

/// Linearly independent subset spanning the same space (greedy, in order).
template <class E, class F>
std::vector<Vec<E>> independent_subset(const F& f, const std::vector<Vec<E>>& vs) {
    std::vector<Vec<E>> out;
    for (const auto& v : vs) {
        if (is_zero_vec(v)) continue;
        if (out.empty() || !solve_columns(f, out, v)) out.push_back(v);
    }
    return out;
}

}  // namespace gwchi::la

#endif
