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

#ifndef GWCHI_PIPELINE_HPP
#define GWCHI_PIPELINE_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "covering.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "gw.hpp"
#include "multipoly.hpp"
#include "quadform.hpp"
#include "scheja_storch.hpp"
#include "series.hpp"
#include "tower.hpp"

namespace gwchi {

/// A double cover of P^2 branched along V(F), F homogeneous of degree 2n in
/// X0, X1, X2 with rational coefficients (reduced mod p for F_p).
struct CoverInput {
    FieldDescriptor field;
    long long n = 1;
    MultiPoly<Rat> F;
};

struct PipelineOptions {
    FactorOptions factor;
    bool chart_cross_check = true;  // recompute local data in chart X1 where possible
    bool etale_oracle = true;       // cross-compute beta on the etale algebra when all m = 1
};

template <class K>
struct CriticalPoint {
    int chart = 0;                       // 0: X0 = 1 with coordinates (x1, x2); 1: X1 = 1 with (x0, x2)
    Tower<K> tower;                      // residue field k(y)
    std::vector<std::string> min_polys;  // defining polynomials of the two coordinates
    TowerElem<K> xj, x2;                 // xj is x1 (chart 0) or x0 (chart 1)
    std::size_t degree = 1;
    int m = 0;
    std::optional<TowerElem<K>> alpha;
    std::optional<GWElement> local_class;  // Tr<-2 alpha>, odd m only
};

struct PipelineChecks {
    long long bezout_sum = 0;
    long long bezout_expected = 0;
    bool bezout = false;
    bool rank = false;
    bool beta_even = false;
    std::optional<bool> parity;              // Q only: rank = signature mod 2
    std::optional<bool> chart_independence;  // when some point lies in both charts
    std::optional<bool> etale_oracle;        // when every m is 1 and all points are in chart X0
};

template <class K>
struct PipelineReport {
    FieldDescriptor field;
    long long n = 1;
    std::vector<CriticalPoint<K>> points;
    GWElement beta, chi, chi_blowup;
    PipelineChecks checks;
};

namespace pipeline_detail {

template <class K>
using TE = TowerElem<K>;
template <class K>
using MP = MultiPoly<TowerElem<K>>;

inline const std::vector<std::string>& proj_vars() {
    static const std::vector<std::string> v{"X0", "X1", "X2"};
    return v;
}

template <class K>
MP<K> to_base(const Tower<K>& T, const MultiPoly<Rat>& F) {
    MP<K> out(T, F.vars());
    for (const auto& [e, c] : F.terms()) {
        try {
            out.add_term(e, T.from_rational(c.value()));
        } catch (const Error& err) {
            fail(ErrorKind::validation, "bad-reduction", err.what());
        }
    }
    return out;
}

/// Coefficients with respect to variable `outer` as univariate polynomials in
/// variable `inner` (the only other variable).
template <class E>
std::vector<Poly<E>> bivariate(const MultiPoly<E>& f, std::size_t outer, std::size_t inner) {
    std::vector<Poly<E>> out;
    for (const auto& c : f.coefficients_in(outer)) out.push_back(c.to_univariate(inner));
    return out;
}

/// g(x) = f(a, x) for f in variables (xj, x2), a in tower M.
template <class K>
Poly<TE<K>> specialize(const MP<K>& f, const Tower<K>& M, const TE<K>& a) {
    using P = Poly<TE<K>>;
    std::vector<P> vals{P::constant(a), P::x(M)};
    return f.template evaluate_in<P>(vals, P(M), [&](const TE<K>& c) { return P::constant(M.embed(c)); });
}

template <class K>
MP<K> embed_multi(const MP<K>& f, const Tower<K>& M) {
    return f.template map_coeffs<TE<K>>(M, [&](const TE<K>& c) { return M.embed(c); });
}

/// F(Y0 + c0 Y2, Y1 + c1 Y2, Y2), or the coordinate change sending p to [0:0:1].
template <class K>
MP<K> linear_change(const MP<K>& F, const std::vector<MP<K>>& images) {
    const auto& T = F.coeff_field();
    return F.template evaluate_in<MP<K>>(images, MP<K>(T, F.vars()),
                                         [&](const TE<K>& c) { return MP<K>::constant(T, F.vars(), c); });
}

template <class K>
struct LocalResult {
    int m = 0;
    TE<K> alpha;
    TE<K> u;
};

/// Local data at (a, b) on the affine curve f(xj, x2) = 0 with t = x2 - b.
template <class K>
LocalResult<K> local_in_chart(const MP<K>& f_base, const Tower<K>& M, const TE<K>& a, const TE<K>& b, long long n) {
    const MP<K> f = embed_multi(f_base, M);
    const MP<K> fj = f.derivative(0), f2 = f.derivative(1), f22 = f2.derivative(1);
    if (fj.evaluate({a, b}).is_zero())
        fail(ErrorKind::validation, "singular-curve", "the branch curve is singular");
    const int bound = static_cast<int>(2 * n * (2 * n - 1) + 2);
    for (int N = 4;; N = std::min(2 * N, bound)) {
        TruncatedSeries<TE<K>> x = hensel_parametrize(f, 0, 1, a, b, N);
        std::vector<TruncatedSeries<TE<K>>> v{x, TruncatedSeries<TE<K>>::shifted_parameter(b, N)};
        TruncatedSeries<TE<K>> s2 = compose(f2, v);
        auto ord = s2.order();
        if (ord && *ord < N) {
            const int m = *ord;
            if (m == 0) fail(ErrorKind::internal_check, "not-critical", "point is not a critical point");
            const auto p = M.characteristic();
            if (p != 0 && m % static_cast<long long>(p) == 0)
                fail(ErrorKind::m_not_invertible, "m-not-invertible",
                     "local valuation m = " + std::to_string(m) + " is not invertible in the base field");
            TruncatedSeries<TE<K>> s22 = compose(f22, v);
            TE<K> alpha = s22.coeff(m - 1) / M.from_int(m);
            TE<K> u = s2.coeff(m);
            if (alpha.is_zero()) fail(ErrorKind::internal_check, "zero-alpha", "alpha vanishes");
            if (!(alpha == u))
                fail(ErrorKind::internal_check, "alpha-cross-check",
                     "second-derivative coefficient disagrees with the leading unit");
            return {m, alpha, u};
        }
        if (N >= bound)
            fail(ErrorKind::validation, "non-isolated-critical-point",
                 "critical point is not isolated (series vanishes beyond the Bezout bound)");
    }
}

/// Chart X0 critical points and, for X0 = 0, chart X1 points. Smoothness at
/// every critical point is checked on the way (any singular point of the
/// curve is a critical point of the projection).
template <class K>
std::vector<CriticalPoint<K>> critical_points(const MP<K>& F, const FactorOptions& fopt) {
    const Tower<K>& T = F.coeff_field();
    std::vector<CriticalPoint<K>> out;
    // Chart X0.
    const MP<K> f = F.dehomogenize(0);  // variables x1, x2
    const MP<K> f2 = f.derivative(1);
    const auto fc = bivariate(f, 1, 0), gc = bivariate(f2, 1, 0);
    const Poly<TE<K>> R = sylvester_resultant(fc, gc, PolyRing<TE<K>>{T});
    if (R.is_zero()) fail(ErrorKind::validation, "singular-curve", "the branch curve is singular");
    for (const auto& pf : factor(R, fopt)) {
        const Poly<TE<K>>& p = pf.poly;
        Tower<K> L = T;
        TE<K> a = -p.coeff(0);
        if (p.degree() > 1) {
            L = T.extend_unchecked("x1", p);
            a = L.generator();
        }
        const Poly<TE<K>> g = gcd(specialize(f, L, a), specialize(f2, L, a));
        if (g.degree() < 1)
            fail(ErrorKind::internal_check, "resultant-gcd", "resultant root without a common zero");
        for (const auto& qf : factor(g, fopt)) {
            const Poly<TE<K>>& q = qf.poly;
            CriticalPoint<K> pt;
            pt.chart = 0;
            pt.min_polys = {p.to_string("x1"), q.to_string("x2")};
            if (q.degree() == 1) {
                pt.tower = L;
                pt.x2 = -q.coeff(0);
            } else {
                pt.tower = L.extend_unchecked("x2", q);
                pt.x2 = pt.tower.generator();
            }
            pt.xj = pt.tower.embed(a);
            pt.degree = pt.tower.degree();
            out.push_back(std::move(pt));
        }
    }
    // Chart X1, points with X0 = 0.
    const MP<K> f1 = F.dehomogenize(1);  // variables x0, x2
    const Poly<TE<K>> h = specialize(f1, T, T.zero());
    if (h.is_zero()) fail(ErrorKind::validation, "singular-curve", "the branch curve contains the line X0 = 0");
    const Poly<TE<K>> gh = gcd(h, h.derivative());
    if (gh.degree() >= 1) {
        for (const auto& qf : factor(gh, fopt)) {
            const Poly<TE<K>>& q = qf.poly;
            CriticalPoint<K> pt;
            pt.chart = 1;
            pt.min_polys = {"x0", q.to_string("x2")};
            if (q.degree() == 1) {
                pt.tower = T;
                pt.x2 = -q.coeff(0);
            } else {
                pt.tower = T.extend_unchecked("x2", q);
                pt.x2 = pt.tower.generator();
            }
            pt.xj = pt.tower.zero();
            pt.degree = pt.tower.degree();
            out.push_back(std::move(pt));
        }
    }
    // Smoothness: the partial in the solved variable must not vanish.
    for (const auto& pt : out) {
        const MP<K> fc2 = embed_multi(pt.chart == 0 ? f : f1, pt.tower);
        if (fc2.derivative(0).evaluate({pt.xj, pt.x2}).is_zero())
            fail(ErrorKind::validation, "singular-curve", "the branch curve is singular");
    }
    return out;
}

template <class K>
void check_shape(const CoverInput& in, const MP<K>& F) {
    if (in.n < 1) fail(ErrorKind::validation, "bad-n", "n must be a positive integer");
    if (F.vars() != proj_vars()) fail(ErrorKind::validation, "bad-variables", "F must be a polynomial in X0, X1, X2");
    if (F.is_zero() || !F.is_homogeneous() || F.total_degree() != 2 * in.n)
        fail(ErrorKind::validation, "wrong-degree", "degree must equal 2n (F homogeneous of degree " +
                                                        std::to_string(2 * in.n) + ")");
    const auto p = F.coeff_field().characteristic();
    if (p != 0 && (2 * in.n) % static_cast<long long>(p) == 0)
        fail(ErrorKind::validation, "degree-not-invertible", "2n must be invertible in the base field");
}

/// Validates the input and returns the critical points (coordinates only).
template <class K>
std::vector<CriticalPoint<K>> validate(const CoverInput& in, const MP<K>& F, const PipelineOptions& opt) {
    check_shape(in, F);
    const Tower<K>& T = F.coeff_field();
    const TE<K> f001 = F.evaluate({T.zero(), T.zero(), T.one()});
    if (f001.is_zero()) {
        // Move a point off the curve to [0:0:1] just to test smoothness.
        std::mt19937_64 rng(opt.factor.seed);
        const auto& V = F.vars();
        for (int attempt = 0; attempt < 256; ++attempt) {
            TE<K> c0 = T.random(rng), c1 = T.random(rng);
            if (F.evaluate({c0, c1, T.one()}).is_zero()) continue;
            auto Y = [&](std::size_t i) { return MP<K>::variable(T, V, i); };
            MP<K> G = linear_change<K>(F, {Y(0) + Y(2) * c0, Y(1) + Y(2) * c1, Y(2)});
            critical_points(G, opt.factor);
            fail(ErrorKind::validation, "non-square-base-point",
                 "F(0,0,1) = 0 is not a nonzero square (the fibre over [0:0:1] must split)");
        }
        fail(ErrorKind::capacity, "no-good-coordinates", "could not find a point off the curve for the smoothness test");
    }
    auto pts = critical_points(F, opt.factor);
    if (!is_square(f001.base_value()))
        fail(ErrorKind::validation, "non-square-base-point",
             "F(0,0,1) = " + f001.to_string() + " is not a nonzero square (the fibre over [0:0:1] must split)");
    return pts;
}

/// beta on the etale algebra k[x1,x2]/(f, f_x2): the trace form of
/// -2 f_x2x2. Only meaningful when every critical point is simple and lies
/// in chart X0.
template <class K>
GWElement beta_on_etale_algebra(const MP<K>& F) {
    const Tower<K>& T = F.coeff_field();
    const MP<K> f = F.dehomogenize(0);
    const MP<K> f2 = f.derivative(1);
    const QuotientAlgebra<TE<K>> A = build_quotient<TE<K>>({f, f2});
    const std::size_t d = A.dim();
    if (d == 0) return GWElement(descriptor_of(T));
    std::vector<TE<K>> tr(d, T.zero());
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i) tr[k] += A.lmul[k][i][i];
    const la::Vec<TE<K>> w = A.element_of(f2.derivative(1) * T.from_int(-2));
    auto trace = [&](const la::Vec<TE<K>>& x) {
        TE<K> s = T.zero();
        for (std::size_t k = 0; k < d; ++k) s += x[k] * tr[k];
        return s;
    };
    Matrix<TE<K>> g(d, std::vector<TE<K>>(d, T.zero()));
    for (std::size_t i = 0; i < d; ++i) {
        la::Vec<TE<K>> ei(d, T.zero());
        ei[i] = T.one();
        const la::Vec<TE<K>> wi = A.multiply(w, ei);
        for (std::size_t j = i; j < d; ++j) {
            la::Vec<TE<K>> ej(d, T.zero());
            ej[j] = T.one();
            g[i][j] = g[j][i] = trace(A.multiply(wi, ej));
        }
    }
    return diagonalize(GramForm<TE<K>>(T, std::move(g)));
}

}  // namespace pipeline_detail

/// Full computation of chi(X/k) for the double cover branched along V(F).
template <class K>
PipelineReport<K> chi_of_cover_over(const typename K::Field& base, const CoverInput& in,
                                    const PipelineOptions& opt = {}) {
    using namespace pipeline_detail;
    const Tower<K> T = Tower<K>::over(base);
    const FieldDescriptor k = descriptor_of(base);
    const MP<K> F = to_base(T, in.F);
    PipelineReport<K> rep;
    rep.field = k;
    rep.n = in.n;
    rep.points = validate(in, F, opt);

    const MP<K> f0 = F.dehomogenize(0), f1 = F.dehomogenize(1);
    rep.beta = GWElement(k);
    bool any_both = false, charts_agree = true;
    for (auto& pt : rep.points) {
        const auto loc = local_in_chart(pt.chart == 0 ? f0 : f1, pt.tower, pt.xj, pt.x2, in.n);
        pt.m = loc.m;
        pt.alpha = loc.alpha;
        if (pt.m % 2 == 1) {
            pt.local_class = trace_form(pt.tower, pt.tower.from_int(-2) * loc.alpha);
            rep.beta += *pt.local_class;
        }
        if (opt.chart_cross_check && pt.chart == 0 && !pt.xj.is_zero()) {
            any_both = true;
            const TE<K> inv = pt.xj.inverse();
            const auto other = local_in_chart(f1, pt.tower, inv, pt.x2 * inv, in.n);
            if (other.m != pt.m) charts_agree = false;
            else if (pt.m % 2 == 1 &&
                     !gw_equals(*pt.local_class, trace_form(pt.tower, pt.tower.from_int(-2) * other.alpha)))
                charts_agree = false;
        }
    }
    if (any_both) rep.checks.chart_independence = charts_agree;

    const long long n = in.n;
    const long long rb = rep.beta.rank();
    rep.checks.beta_even = rb % 2 == 0;
    if (!rep.checks.beta_even)
        fail(ErrorKind::internal_check, "beta-parity", "rank of beta is odd (" + std::to_string(rb) + ")");
    rep.chi = 2 * GWElement::one(k) + rep.beta + GWElement::hyperbolic(k, (2 * n - 1) * (n - 1) + 1 - rb / 2);
    rep.chi_blowup = rep.chi + 2 * GWElement::form(k, -1);

    rep.checks.bezout_expected = 2 * n * (2 * n - 1);
    for (const auto& pt : rep.points) rep.checks.bezout_sum += pt.m * static_cast<long long>(pt.degree);
    rep.checks.bezout = rep.checks.bezout_sum == rep.checks.bezout_expected;
    rep.checks.rank = rep.chi.rank() == 4 + 2 * (2 * n - 1) * (n - 1);
    if (k.is_rational()) rep.checks.parity = (rep.chi.rank() - rep.chi.signature()) % 2 == 0;

    if (opt.etale_oracle) {
        bool simple = !rep.points.empty();
        for (const auto& pt : rep.points)
            if (pt.m != 1 || pt.chart != 0) simple = false;
        if (simple) rep.checks.etale_oracle = gw_equals(beta_on_etale_algebra(F), rep.beta);
    }
    if (!rep.checks.bezout)
        fail(ErrorKind::internal_check, "bezout",
             "sum of m*deg over critical points is " + std::to_string(rep.checks.bezout_sum) + ", expected " +
                 std::to_string(rep.checks.bezout_expected));
    if (!rep.checks.rank) fail(ErrorKind::internal_check, "chi-rank", "rank of chi disagrees with 4 + 2(2n-1)(n-1)");
    if (rep.checks.parity && !*rep.checks.parity)
        fail(ErrorKind::internal_check, "rank-signature-parity", "rank and signature of chi differ in parity");
    if (rep.checks.chart_independence && !*rep.checks.chart_independence)
        fail(ErrorKind::internal_check, "chart-independence", "local data differs between charts");
    if (rep.checks.etale_oracle && !*rep.checks.etale_oracle)
        fail(ErrorKind::internal_check, "etale-oracle", "beta disagrees with the etale-algebra trace form");
    return rep;
}

/// Linear substitution taking the point [a:b:c] to [0:0:1].
inline MultiPoly<Rat> move_point(const MultiPoly<Rat>& F, const Rational& a, const Rational& b, const Rational& c) {
    RationalField Q;
    const auto& V = F.vars();
    auto Y = [&](std::size_t i) { return MultiPoly<Rat>::variable(Q, V, i); };
    std::vector<MultiPoly<Rat>> img;
    if (c != 0) img = {Y(0) + Y(2) * Rat(a), Y(1) + Y(2) * Rat(b), Y(2) * Rat(c)};
    else if (b != 0) img = {Y(0) + Y(2) * Rat(a), Y(2) * Rat(b), Y(1)};
    else if (a != 0) img = {Y(2) * Rat(a), Y(0), Y(1)};
    else fail(ErrorKind::validation, "zero-point", "[0:0:0] is not a point of P^2");
    return F.evaluate_in<MultiPoly<Rat>>(img, MultiPoly<Rat>(Q, V),
                                         [&](const Rat& x) { return MultiPoly<Rat>::constant(Q, V, x); });
}

}  // namespace gwchi

#endif
