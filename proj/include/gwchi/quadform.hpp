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

#ifndef GWCHI_QUADFORM_HPP
#define GWCHI_QUADFORM_HPP

#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "factor.hpp"
#include "gw.hpp"
#include "tower.hpp"

namespace gwchi {

template <class E>
using Matrix = std::vector<std::vector<E>>;

template <class K>
Rational to_rational(const TowerElem<K>& x) {
    return to_rational(x.base_value());
}
template <class K>
FieldDescriptor descriptor_of(const Tower<K>& t) {
    return descriptor_of(t.base_field());
}

/// Symmetric bilinear form given by its Gram matrix.
template <class E>
class GramForm {
   public:
    using CoeffField = typename E::Field;

    GramForm(CoeffField f, Matrix<E> m) : f_(std::move(f)), m_(std::move(m)) {
        for (const auto& row : m_)
            if (row.size() != m_.size()) fail(ErrorKind::domain, "non-square-gram", "Gram matrix is not square");
        for (std::size_t i = 0; i < m_.size(); ++i)
            for (std::size_t j = i + 1; j < m_.size(); ++j)
                if (!(m_[i][j] == m_[j][i])) fail(ErrorKind::domain, "asymmetric-gram", "Gram matrix is not symmetric");
    }

    const CoeffField& field() const { return f_; }
    const Matrix<E>& matrix() const { return m_; }
    std::size_t dim() const { return m_.size(); }

    E determinant() const {
        Matrix<E> a = m_;
        const std::size_t n = a.size();
        E det = f_.one();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            while (piv < n && a[piv][k].is_zero()) ++piv;
            if (piv == n) return f_.zero();
            if (piv != k) {
                std::swap(a[piv], a[k]);
                det = -det;
            }
            det *= a[k][k];
            const E inv = a[k][k].inverse();
            for (std::size_t i = k + 1; i < n; ++i) {
                if (a[i][k].is_zero()) continue;
                const E f = a[i][k] * inv;
                for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            }
        }
        return det;
    }

    /// Congruence P^T G P.
    GramForm congruent(const Matrix<E>& p) const {
        const std::size_t n = dim();
        Matrix<E> gp(n, std::vector<E>(n, f_.zero())), r(n, std::vector<E>(n, f_.zero()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) gp[i][j] += m_[i][k] * p[k][j];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) r[i][j] += p[k][i] * gp[k][j];
        return GramForm(f_, std::move(r));
    }

    /// Diagonal entries after symmetric elimination. Pivot: first nonzero
    /// diagonal entry in index order; if the remaining block has zero
    /// diagonal, e_i is replaced by e_i + e_j for the first nonzero (i, j).
    std::vector<E> diagonal_entries() const {
        Matrix<E> a = m_;
        const std::size_t n = a.size();
        std::vector<bool> done(n, false);
        std::vector<E> out;
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t piv = n;
            for (std::size_t i = 0; i < n && piv == n; ++i)
                if (!done[i] && !a[i][i].is_zero()) piv = i;
            if (piv == n) {
                std::size_t pi = n, pj = n;
                for (std::size_t i = 0; i < n && pi == n; ++i) {
                    if (done[i]) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        if (!done[j] && j != i && !a[i][j].is_zero()) {
                            pi = i;
                            pj = j;
                            break;
                        }
                }
                if (pi == n) fail(ErrorKind::domain, "degenerate-form", "bilinear form is degenerate");
                for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
                for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
                piv = pi;
            }
            const E d = a[piv][piv];
            const E inv = d.inverse();
            out.push_back(d);
            done[piv] = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i] || a[i][piv].is_zero()) continue;
                const E f = a[i][piv] * inv;
                for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[piv][k];
                for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][piv];
            }
        }
        return out;
    }

    std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < m_.size(); ++i) {
            out += i ? ", [" : "[";
            for (std::size_t j = 0; j < m_.size(); ++j) out += (j ? ", " : "") + m_[i][j].to_string();
            out += "]";
        }
        return out + "]";
    }

   private:
    CoeffField f_;
    Matrix<E> m_;
};

/// Class in GW(k) of a form whose entries lie in the base field.
template <class E>
GWElement diagonalize(const GramForm<E>& g) {
    const FieldDescriptor k = descriptor_of(g.field());
    std::vector<Rational> d;
    for (const auto& x : g.diagonal_entries()) d.push_back(to_rational(x));
    return GWElement::from_diagonal(k, d);
}

namespace detail {
template <class K>
TowerElem<K> unit_vector(const Tower<K>& t, std::size_t i) {
    std::vector<K> c(t.degree(), t.base_field().zero());
    c[i] = t.base_field().one();
    return TowerElem<K>(t, std::move(c));
}
}  // namespace detail

/// Gram matrix of (x, y) -> Tr_{L/k}(b x y) on the product basis of the tower.
template <class K>
GramForm<K> trace_gram(const Tower<K>& L, const TowerElem<K>& b) {
    if (b.is_zero()) fail(ErrorKind::domain, "zero-multiplier", "trace form multiplier must be nonzero");
    const std::size_t D = L.degree();
    std::vector<TowerElem<K>> basis, scaled;
    for (std::size_t i = 0; i < D; ++i) {
        basis.push_back(detail::unit_vector(L, i));
        scaled.push_back(b * basis.back());
    }
    Matrix<K> m(D, std::vector<K>(D, L.base_field().zero()));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = i; j < D; ++j) m[i][j] = m[j][i] = L.trace_to_base(scaled[i] * basis[j]);
    return GramForm<K>(L.base_field(), std::move(m));
}

/// Tr_{L/k}(<b>) in GW(k).
template <class K>
GWElement trace_form(const Tower<K>& L, const TowerElem<K>& b) {
    return diagonalize(trace_gram(L, b));
}

/// Pushes a form over L down one stage: on L^r viewed over the parent with
/// basis v^i e_a, the pairing is Tr_{L/L'}(v^i v^j B_ab).
template <class K>
GramForm<TowerElem<K>> trace_down_one_stage(const GramForm<TowerElem<K>>& g) {
    const Tower<K>& L = g.field();
    if (L.depth() == 0) fail(ErrorKind::domain, "no-stage", "form already lives over the base field");
    const Tower<K> par = L.parent();
    const std::size_t d = L.stage_degree(), r = g.dim();
    std::vector<TowerElem<K>> pw{L.one()};
    for (std::size_t i = 1; i < 2 * d; ++i) pw.push_back(pw.back() * L.generator());
    Matrix<TowerElem<K>> m(r * d, std::vector<TowerElem<K>>(r * d, par.zero()));
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    m[a * d + i][b * d + j] = L.stage_trace(pw[i + j] * g.matrix()[a][b]);
    return GramForm<TowerElem<K>>(par, std::move(m));
}

/// Pushes a form over a tower all the way down to the base field.
template <class K>
GramForm<K> trace_to_base(GramForm<TowerElem<K>> g) {
    while (g.field().depth() > 0) g = trace_down_one_stage(g);
    Matrix<K> m;
    for (const auto& row : g.matrix()) {
        std::vector<K> r;
        for (const auto& x : row) r.push_back(x.base_value());
        m.push_back(std::move(r));
    }
    return GramForm<K>(g.field().base_field(), std::move(m));
}

/// Stage-by-stage variant of trace_form, used to check tower transitivity.
template <class K>
GWElement trace_form_by_stages(const Tower<K>& L, const TowerElem<K>& b) {
    if (b.is_zero()) fail(ErrorKind::domain, "zero-multiplier", "trace form multiplier must be nonzero");
    return diagonalize(trace_to_base(GramForm<TowerElem<K>>(L, {{b}})));
}

/// <n> + ((n-1)/2)H for n odd, <n> + <ns> + ((n-2)/2)H for n even.
inline GWElement cyclic_closed_form(const FieldDescriptor& k, long long n, const Rational& s) {
    if (n < 1) fail(ErrorKind::domain, "bad-degree", "cyclic degree must be positive");
    if (n == 1) return GWElement::one(k);
    if (n % 2 == 1) return GWElement::form(k, n) + GWElement::hyperbolic(k, (n - 1) / 2);
    return GWElement::form(k, n) + GWElement::form(k, Rational(n) * s) + GWElement::hyperbolic(k, (n - 2) / 2);
}

/// Trace form of k[z]/(z^n - s), asserted equal to its closed form.
template <class F>
GWElement cyclic_trace_check(const F& base, long long n, const Rational& s, const FactorOptions& opt = {}) {
    using K = typename F::element_type;
    const FieldDescriptor k = descriptor_of(base);
    if (n < 1) fail(ErrorKind::domain, "bad-degree", "cyclic degree must be positive");
    if (base.characteristic() != 0 && n % static_cast<long long>(base.characteristic()) == 0)
        fail(ErrorKind::domain, "degree-not-invertible", "n is not invertible in the base field");
    const Tower<K> T = Tower<K>::over(base);
    const K sv = base.from_rational(s);
    if (sv.is_zero()) fail(ErrorKind::domain, "zero-radicand", "s must be nonzero");
    std::vector<TowerElem<K>> c(n + 1, T.zero());
    c[0] = -T.from_base(sv);
    c[n] = T.one();
    const Tower<K> L = make_extension(T, "z", Poly<TowerElem<K>>(T, std::move(c)), opt);
    GWElement got = trace_form(L, L.one());
    if (!gw_equals(got, cyclic_closed_form(k, n, to_rational(sv))))
        fail(ErrorKind::internal_check, "cyclic-trace-mismatch",
             "trace form of z^" + std::to_string(n) + " - s disagrees with its closed form");
    return got;
}

}  // namespace gwchi

#endif
