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

#ifndef GWCHI_SERIES_HPP
#define GWCHI_SERIES_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "multipoly.hpp"

namespace gwchi {

/// Power series in one parameter t known modulo t^N.
template <class E>
class TruncatedSeries {
   public:
    using CoeffField = typename E::Field;

    TruncatedSeries() = default;
    TruncatedSeries(CoeffField f, int precision) : f_(std::move(f)), n_(precision) {
        if (precision <= 0) fail(ErrorKind::domain, "bad-precision", "series precision must be positive");
    }
    TruncatedSeries(CoeffField f, std::vector<E> c, int precision) : TruncatedSeries(std::move(f), precision) {
        c_ = std::move(c);
        normalize();
    }

    static TruncatedSeries constant(const E& c, int precision) {
        return TruncatedSeries(c.field(), {c}, precision);
    }
    /// b + t
    static TruncatedSeries shifted_parameter(const E& b, int precision) {
        return TruncatedSeries(b.field(), {b, b.field().one()}, precision);
    }

    int precision() const { return n_; }
    const CoeffField& coeff_field() const { return f_; }
    E coeff(int i) const {
        if (i >= n_) fail(ErrorKind::domain, "beyond-precision", "coefficient beyond series precision");
        return i < static_cast<int>(c_.size()) ? c_[i] : f_.zero();
    }
    const std::vector<E>& coeffs() const { return c_; }

    /// Index of the first nonzero coefficient, or nothing when the series is
    /// zero up to its precision.
    std::optional<int> order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return std::nullopt;
    }

    TruncatedSeries with_precision(int n) const { return TruncatedSeries(f_, c_, std::min(n, n_)); }

    TruncatedSeries operator-() const {
        TruncatedSeries r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        const int n = std::min(a.n_, b.n_);
        std::vector<E> c(std::min<std::size_t>(n, std::max(a.c_.size(), b.c_.size())), a.f_.zero());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < a.c_.size()) c[i] += a.c_[i];
            if (i < b.c_.size()) c[i] += b.c_[i];
        }
        return TruncatedSeries(a.f_, std::move(c), n);
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const int n = std::min(a.n_, b.n_);
        std::vector<E> c(std::min<std::size_t>(n, a.c_.size() + b.c_.size()), a.f_.zero());
        for (std::size_t i = 0; i < a.c_.size() && static_cast<int>(i) < n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return TruncatedSeries(a.f_, std::move(c), n);
    }

    TruncatedSeries inverse() const {
        if (c_.empty() || c_[0].is_zero())
            fail(ErrorKind::domain, "non-unit-series", "series with zero constant term is not invertible");
        const E inv0 = c_[0].inverse();
        std::vector<E> r(n_, f_.zero());
        r[0] = inv0;
        for (int k = 1; k < n_; ++k) {
            E s = f_.zero();
            for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) s += c_[j] * r[k - j];
            r[k] = -(s * inv0);
        }
        return TruncatedSeries(f_, std::move(r), n_);
    }

    std::string to_string(const std::string& var = "t") const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].to_string() + ")";
            if (i > 0) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (out.empty()) out = "0";
        return out + " + O(" + var + "^" + std::to_string(n_) + ")";
    }

   private:
    void normalize() {
        if (static_cast<int>(c_.size()) > n_) c_.resize(n_);
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    CoeffField f_{};
    std::vector<E> c_;
    int n_ = 1;
};

/// Substitutes series for every variable of f.
template <class E>
TruncatedSeries<E> compose(const MultiPoly<E>& f, const std::vector<TruncatedSeries<E>>& vals) {
    const int n = vals.empty() ? 1 : vals.front().precision();
    const auto& F = f.coeff_field();
    TruncatedSeries<E> zero(F, n);
    return f.template evaluate_in<TruncatedSeries<E>>(
        vals, zero, [&](const E& c) { return TruncatedSeries<E>::constant(c, n); });
}

/// Newton iteration for the branch x_j(t) of f(x_j, x_p) = 0 through (a, b),
/// where x_p = b + t. `solve` and `param` index the two variables of f.
template <class E>
TruncatedSeries<E> hensel_parametrize(const MultiPoly<E>& f, std::size_t solve, std::size_t param, const E& a,
                                      const E& b, int precision) {
    if (precision <= 0) fail(ErrorKind::domain, "bad-precision", "series precision must be positive");
    if (f.arity() != 2 || solve == param || solve > 1 || param > 1)
        fail(ErrorKind::domain, "arity-mismatch", "parametrization needs a polynomial in two variables");
    const MultiPoly<E> fx = f.derivative(solve);
    auto at = [&](const TruncatedSeries<E>& xs, const MultiPoly<E>& g, int n) {
        std::vector<TruncatedSeries<E>> v(2);
        v[solve] = xs.with_precision(n);
        v[param] = TruncatedSeries<E>::shifted_parameter(b, n);
        return compose(g, v);
    };
    std::vector<E> pt(2);
    pt[solve] = a;
    pt[param] = b;
    if (!f.evaluate(pt).is_zero()) fail(ErrorKind::domain, "not-on-curve", "point does not lie on the curve");
    if (fx.evaluate(pt).is_zero())
        fail(ErrorKind::domain, "non-unit-partial", "partial derivative vanishes at the point");
    TruncatedSeries<E> x = TruncatedSeries<E>::constant(a, precision);
    for (int n = 1; n < precision;) {
        n = std::min(2 * n, precision);
        TruncatedSeries<E> xs(x.coeff_field(), x.coeffs(), n);
        x = xs - at(xs, f, n) * at(xs, fx, n).inverse();
        x = TruncatedSeries<E>(x.coeff_field(), x.coeffs(), precision);
    }
    if (precision > 0 && at(x, f, precision).order().has_value())
        fail(ErrorKind::internal_check, "hensel-residual", "parametrization does not satisfy the curve equation");
    return x;
}

}  // namespace gwchi

#endif
