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

#ifndef GWCHI_SCHEJA_STORCH_HPP
#define GWCHI_SCHEJA_STORCH_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "multipoly.hpp"
#include "quadform.hpp"

namespace gwchi {

struct QuotientOptions {
    int max_degree = 0;                 // truncation degree bound; 0 = 2 * (sum of degrees) + 4
    std::size_t max_monomials = 6000;   // capacity guard on the Macaulay space
};

/// Finite-dimensional commutative algebra with an explicit basis. Elements
/// are coordinate vectors; lmul[k] is multiplication by basis element k.
template <class E>
struct QuotientAlgebra {
    using CoeffField = typename E::Field;
    CoeffField field;
    std::vector<std::string> vars;
    std::vector<MultiPoly<E>> relations;
    std::vector<std::string> labels;   // human-readable basis names
    std::vector<Exponent> monomials;   // monomial basis (full quotient only)
    std::vector<la::Mat<E>> mult;      // multiplication by each variable
    std::vector<la::Mat<E>> lmul;      // multiplication by each basis element
    la::Vec<E> unit;

    std::size_t dim() const { return labels.size(); }

    la::Vec<E> multiply(const la::Vec<E>& x, const la::Vec<E>& y) const {
        la::Vec<E> r(dim(), field.zero());
        for (std::size_t k = 0; k < dim(); ++k) {
            if (y[k].is_zero()) continue;
            la::Vec<E> p = la::apply(field, lmul[k], x);
            for (std::size_t i = 0; i < dim(); ++i) r[i] += y[k] * p[i];
        }
        return r;
    }

    /// Image of a polynomial in the variables.
    la::Vec<E> element_of(const MultiPoly<E>& p) const {
        if (p.vars() != vars) fail(ErrorKind::domain, "variable-mismatch", "polynomial uses different variables");
        la::Vec<E> acc(dim(), field.zero());
        for (const auto& [e, c] : p.terms()) {
            la::Vec<E> v = unit;
            for (std::size_t j = 0; j < e.size(); ++j)
                for (int q = 0; q < e[j]; ++q) v = la::apply(field, mult[j], v);
            for (std::size_t i = 0; i < dim(); ++i) acc[i] += c * v[i];
        }
        return acc;
    }

    bool operators_commute() const {
        for (std::size_t a = 0; a < mult.size(); ++a)
            for (std::size_t b = a + 1; b < mult.size(); ++b)
                if (la::mul(field, mult[a], mult[b]) != la::mul(field, mult[b], mult[a])) return false;
        return true;
    }
};

namespace detail {

/// Monomials of degree <= D in r variables, largest first in graded
/// lexicographic order.
inline std::vector<Exponent> monomials_upto(std::size_t r, int D) {
    std::vector<Exponent> out;
    Exponent e(r, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == r) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    for (int d = D; d >= 0; --d) {
        if (r == 0) {
            if (d == 0) out.push_back({});
            continue;
        }
        rec(0, d);
    }
    return out;
}

inline int degree_of(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Reduced row echelon basis maintained under insertion.
template <class E>
struct Echelon {
    la::Mat<E> rows;
    std::vector<std::size_t> pivots;

    void reduce(la::Vec<E>& v) const {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const E c = v[pivots[r]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!rows[r][j].is_zero()) v[j] -= c * rows[r][j];
        }
    }
    bool insert(la::Vec<E> v) {
        reduce(v);
        std::size_t p = 0;
        while (p < v.size() && v[p].is_zero()) ++p;
        if (p == v.size()) return false;
        const E inv = v[p].inverse();
        for (auto& x : v) x *= inv;
        for (auto& row : rows) {
            const E c = row[p];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!v[j].is_zero()) row[j] -= c * v[j];
        }
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }
};

}  // namespace detail

/// k[t]/(s) for a zero-dimensional system, via degree-truncated linear
/// algebra: the span of multiples of the s_i is closed under multiplication
/// by variables up to degree D, and D grows until the standard monomials
/// close off and the resulting multiplication table is verified.
template <class E>
QuotientAlgebra<E> build_quotient(const std::vector<MultiPoly<E>>& s, const QuotientOptions& opt = {}) {
    if (s.empty()) fail(ErrorKind::domain, "empty-system", "need at least one relation");
    const auto& F = s[0].coeff_field();
    const std::vector<std::string> vars = s[0].vars();
    const std::size_t r = vars.size();
    if (s.size() != r) fail(ErrorKind::domain, "not-square-system", "need as many relations as variables");
    int maxdeg = 0;
    for (const auto& p : s) {
        if (p.vars() != vars) fail(ErrorKind::domain, "variable-mismatch", "relations use different variables");
        if (p.is_zero()) fail(ErrorKind::domain, "not-zero-dimensional", "zero relation");
        maxdeg = std::max(maxdeg, p.total_degree());
    }
    int sumdeg = 0;
    for (const auto& p : s) sumdeg += p.total_degree();
    const int cap = opt.max_degree > 0 ? opt.max_degree : 2 * sumdeg + 4;
    for (int D = std::max(1, maxdeg); D <= cap; ++D) {
        const auto mons = detail::monomials_upto(r, D);
        if (mons.size() > opt.max_monomials)
            fail(ErrorKind::capacity, "quotient-capacity", "quotient computation exceeded the monomial bound");
        std::map<Exponent, std::size_t> idx;
        for (std::size_t i = 0; i < mons.size(); ++i) idx[mons[i]] = i;
        const std::size_t N = mons.size();
        auto to_vec = [&](const MultiPoly<E>& p) {
            la::Vec<E> v(N, F.zero());
            for (const auto& [e, c] : p.terms()) v[idx.at(e)] = c;
            return v;
        };
        detail::Echelon<E> ech;
        for (const auto& p : s) {
            const int dp = p.total_degree();
            for (const auto& m : mons) {
                if (detail::degree_of(m) + dp > D) continue;
                MultiPoly<E> mm(F, vars);
                mm.add_term(m, F.one());
                ech.insert(to_vec(mm * p));
            }
        }
        // Close under multiplication by variables within degree D. Rows whose
        // pivot has degree < D span the part of the space of degree < D.
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t k = 0; k < ech.rows.size(); ++k) {
                if (detail::degree_of(mons[ech.pivots[k]]) >= D) continue;
                for (std::size_t v = 0; v < r; ++v) {
                    la::Vec<E> w(N, F.zero());
                    for (std::size_t j = 0; j < N; ++j) {
                        if (ech.rows[k][j].is_zero()) continue;
                        Exponent e = mons[j];
                        ++e[v];
                        w[idx.at(e)] = ech.rows[k][j];
                    }
                    if (ech.insert(std::move(w))) changed = true;
                }
            }
        }
        const la::Mat<E>& rows = ech.rows;
        const std::vector<std::size_t>& piv = ech.pivots;
        std::vector<bool> lead(N, false);
        for (auto c : piv) lead[c] = true;
        bool closed = true;
        for (std::size_t j = 0; j < N; ++j)
            if (detail::degree_of(mons[j]) == D && !lead[j]) closed = false;
        if (!closed) continue;

        QuotientAlgebra<E> q{F, vars, s, {}, {}, {}, {}, {}};
        std::map<Exponent, std::size_t> bidx;
        for (std::size_t j = N; j-- > 0;)  // smallest monomials first
            if (!lead[j]) {
                bidx[mons[j]] = q.monomials.size();
                q.monomials.push_back(mons[j]);
            }
        const std::size_t d = q.monomials.size();
        for (const auto& m : q.monomials) {
            MultiPoly<E> mm(F, vars);
            mm.add_term(m, F.one());
            q.labels.push_back(mm.to_string());
        }
        // Normal form of a monomial of degree <= D in basis coordinates.
        std::map<std::size_t, std::size_t> row_of_pivot;
        for (std::size_t k = 0; k < piv.size(); ++k) row_of_pivot[piv[k]] = k;
        auto normal_form = [&](const Exponent& m) {
            la::Vec<E> v(d, F.zero());
            auto it = bidx.find(m);
            if (it != bidx.end()) {
                v[it->second] = F.one();
                return v;
            }
            const auto& row = rows[row_of_pivot.at(idx.at(m))];
            for (const auto& [bm, bi] : bidx) v[bi] = -row[idx.at(bm)];
            return v;
        };
        for (std::size_t v = 0; v < r; ++v) {
            la::Mat<E> M = la::zeros(F, d, d);
            for (std::size_t b = 0; b < d; ++b) {
                Exponent e = q.monomials[b];
                ++e[v];
                auto col = normal_form(e);
                for (std::size_t i = 0; i < d; ++i) M[i][b] = col[i];
            }
            q.mult.push_back(std::move(M));
        }
        q.unit = la::Vec<E>(d, F.zero());
        if (d > 0) q.unit[bidx.at(Exponent(r, 0))] = F.one();
        if (!q.operators_commute()) continue;
        bool ok = true;
        for (const auto& p : s)
            if (!la::is_zero_vec(q.element_of(p))) ok = false;
        if (!ok) continue;
        // Left multiplication by basis monomials: b(M), built along the order ideal.
        q.lmul.assign(d, la::identity(F, d));
        for (std::size_t b = 0; b < d; ++b) {
            const Exponent& e = q.monomials[b];
            for (std::size_t v = 0; v < r; ++v) {
                if (e[v] == 0) continue;
                Exponent pe = e;
                --pe[v];
                q.lmul[b] = la::mul(F, q.mult[v], q.lmul[bidx.at(pe)]);
                break;
            }
        }
        return q;
    }
    fail(ErrorKind::domain, "not-zero-dimensional",
         "relations do not define a zero-dimensional quotient within degree " + std::to_string(cap));
}

/// The factor of J supported at the origin: the joint generalized kernel of
/// the variable operators, with unit the idempotent projection of 1.
template <class E>
QuotientAlgebra<E> local_factor_at_origin(const QuotientAlgebra<E>& J) {
    const auto& F = J.field;
    const std::size_t n = J.dim();
    if (n == 0) fail(ErrorKind::domain, "empty-local-factor", "the origin is not a zero of the system");
    std::vector<la::Mat<E>> powers;
    la::Mat<E> stacked;
    for (const auto& M : J.mult) {
        powers.push_back(la::power(F, M, static_cast<unsigned>(n)));
        for (const auto& row : powers.back()) stacked.push_back(row);
    }
    auto kernel = la::nullspace(F, stacked, n);
    if (kernel.empty()) fail(ErrorKind::domain, "empty-local-factor", "the origin is not a zero of the system");
    std::vector<la::Vec<E>> image;
    for (const auto& P : powers)
        for (std::size_t c = 0; c < n; ++c) {
            la::Vec<E> col(n, F.zero());
            for (std::size_t i = 0; i < n; ++i) col[i] = P[i][c];
            image.push_back(std::move(col));
        }
    image = la::independent_subset(F, image);
    std::vector<la::Vec<E>> both = kernel;
    both.insert(both.end(), image.begin(), image.end());
    auto coeffs = la::solve_columns(F, both, J.unit);
    if (!coeffs || both.size() != n)
        fail(ErrorKind::internal_check, "local-splitting", "generalized kernel and image do not split the algebra");
    la::Vec<E> e0(n, F.zero());
    for (std::size_t k = 0; k < kernel.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) e0[i] += (*coeffs)[k] * kernel[k][i];

    // Basis: b * e0 for basis monomials b, greedily.
    QuotientAlgebra<E> L{F, J.vars, J.relations, {}, {}, {}, {}, {}};
    std::vector<la::Vec<E>> W;
    for (std::size_t b = 0; b < n && W.size() < kernel.size(); ++b) {
        la::Vec<E> v = la::apply(F, J.lmul[b], e0);
        if (la::is_zero_vec(v)) continue;
        if (!W.empty() && la::solve_columns(F, W, v)) continue;
        W.push_back(v);
        L.labels.push_back(J.labels[b]);
        L.monomials.push_back(J.monomials[b]);
    }
    const std::size_t d = W.size();
    if (d != kernel.size()) fail(ErrorKind::internal_check, "local-basis", "could not span the local factor");
    auto coords = [&](const la::Vec<E>& x) {
        auto c = la::solve_columns(F, W, x);
        if (!c) fail(ErrorKind::internal_check, "local-closure", "local factor is not closed under multiplication");
        return *c;
    };
    for (const auto& M : J.mult) {
        la::Mat<E> R = la::zeros(F, d, d);
        for (std::size_t b = 0; b < d; ++b) {
            auto col = coords(la::apply(F, M, W[b]));
            for (std::size_t i = 0; i < d; ++i) R[i][b] = col[i];
        }
        L.mult.push_back(std::move(R));
    }
    for (std::size_t a = 0; a < d; ++a) {
        la::Mat<E> R = la::zeros(F, d, d);
        for (std::size_t b = 0; b < d; ++b) {
            auto col = coords(J.multiply(W[b], W[a]));
            for (std::size_t i = 0; i < d; ++i) R[i][b] = col[i];
        }
        L.lmul.push_back(std::move(R));
    }
    L.unit = coords(e0);
    return L;
}

enum class AssignmentRule { lowest_index, highest_index };

/// Writes s = sum_j a_j t_j, sending each monomial to one dividing variable.
template <class E>
std::vector<MultiPoly<E>> linear_decomposition(const MultiPoly<E>& s, AssignmentRule rule) {
    const std::size_t r = s.arity();
    std::vector<MultiPoly<E>> a(r, MultiPoly<E>(s.coeff_field(), s.vars()));
    for (const auto& [e, c] : s.terms()) {
        std::size_t j = r;
        if (rule == AssignmentRule::lowest_index) {
            for (std::size_t k = 0; k < r && j == r; ++k)
                if (e[k] > 0) j = k;
        } else {
            for (std::size_t k = r; k-- > 0 && j == r;)
                if (e[k] > 0) j = k;
        }
        if (j == r) fail(ErrorKind::domain, "nonzero-constant", "relation does not vanish at the origin");
        Exponent d = e;
        --d[j];
        a[j].add_term(d, c);
    }
    return a;
}

template <class E>
MultiPoly<E> determinant(const std::vector<std::vector<MultiPoly<E>>>& a, const typename E::Field& F,
                         const std::vector<std::string>& vars) {
    const std::size_t n = a.size();
    if (n > 7) fail(ErrorKind::capacity, "determinant-size", "symbolic determinant limited to 7 variables");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly<E> det(F, vars);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        MultiPoly<E> term = MultiPoly<E>::constant(F, vars, inversions % 2 ? -F.one() : F.one());
        for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term = term * a[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

template <class E>
struct SSForm {
    QuotientAlgebra<E> algebra;
    MultiPoly<E> determinant;   // det(a_ij) as a polynomial
    la::Vec<E> element;         // its image in the local algebra
    std::size_t functional_index = 0;
    GramForm<E> gram;
};

/// The bilinear form phi(xy) on the local algebra, phi a coordinate
/// functional scaled so that phi(e) = 1 for the determinant element e.
template <class E>
SSForm<E> ss_form(const QuotientAlgebra<E>& local, const std::vector<MultiPoly<E>>& s,
                  AssignmentRule rule = AssignmentRule::lowest_index) {
    const auto& F = local.field;
    const std::size_t r = s.size();
    std::vector<std::vector<MultiPoly<E>>> a;
    for (const auto& si : s) a.push_back(linear_decomposition(si, rule));
    MultiPoly<E> det = determinant(a, F, local.vars);
    la::Vec<E> e = local.element_of(det);
    if (la::is_zero_vec(e))
        fail(ErrorKind::domain, "zero-ss-element", "determinant element vanishes (non-isolated zero?)");
    for (std::size_t j = 0; j < r; ++j)
        if (!la::is_zero_vec(la::apply(F, local.mult[j], e)))
            fail(ErrorKind::internal_check, "socle", "determinant element is not annihilated by the maximal ideal");
    std::size_t k = 0;
    while (e[k].is_zero()) ++k;
    const E scale = e[k].inverse();
    const std::size_t d = local.dim();
    std::vector<la::Vec<E>> basis;
    for (std::size_t b = 0; b < d; ++b) {
        la::Vec<E> v(d, F.zero());
        v[b] = F.one();
        basis.push_back(std::move(v));
    }
    Matrix<E> g(d, std::vector<E>(d, F.zero()));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) g[i][j] = g[j][i] = local.multiply(basis[i], basis[j])[k] * scale;
    GramForm<E> gram(F, std::move(g));
    if (gram.determinant().is_zero()) fail(ErrorKind::domain, "degenerate-form", "Scheja-Storch form is degenerate");
    return SSForm<E>{local, det, e, k, std::move(gram)};
}

/// Local class at the origin of the system s.
template <class E>
SSForm<E> ss_at_origin(const std::vector<MultiPoly<E>>& s, AssignmentRule rule = AssignmentRule::lowest_index,
                       const QuotientOptions& opt = {}) {
    return ss_form(local_factor_at_origin(build_quotient(s, opt)), s, rule);
}

/// Gradient of a germ.
template <class E>
std::vector<MultiPoly<E>> gradient(const MultiPoly<E>& f) {
    std::vector<MultiPoly<E>> g;
    for (std::size_t i = 0; i < f.arity(); ++i) g.push_back(f.derivative(i));
    return g;
}

/// A1-Milnor number: Scheja-Storch form of the gradient at the origin.
template <class E>
SSForm<E> a1_milnor(const MultiPoly<E>& f, AssignmentRule rule = AssignmentRule::lowest_index,
                    const QuotientOptions& opt = {}) {
    auto g = gradient(f);
    try {
        return ss_at_origin(g, rule, opt);
    } catch (const Error& e) {
        if (e.code() == "not-zero-dimensional" || e.code() == "zero-ss-element")
            fail(ErrorKind::domain, "non-isolated-critical-point", "critical point at the origin is not isolated");
        throw;
    }
}

}  // namespace gwchi

#endif
