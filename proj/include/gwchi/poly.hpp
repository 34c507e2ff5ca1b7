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

#ifndef GWCHI_POLY_HPP
#define GWCHI_POLY_HPP

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalars.hpp"

namespace gwchi {

template <class E>
class Poly;

/// Ring handle for univariate polynomials, so that Poly<E> can itself be
/// used as a coefficient ring (resultants with polynomial entries).
template <class E>
struct PolyRing {
    using element_type = Poly<E>;
    typename E::Field base;

    Poly<E> zero() const;
    Poly<E> one() const;
    Poly<E> from_int(long long v) const;
    bool operator==(const PolyRing& o) const { return base == o.base; }
};

/// Dense univariate polynomial over a field, coefficients stored from the
/// constant term upward with no trailing zeros.
template <class E>
class Poly {
   public:
    using Field = PolyRing<E>;
    using CoeffField = typename E::Field;

    Poly() = default;
    explicit Poly(CoeffField f) : f_(std::move(f)) {}
    Poly(CoeffField f, std::vector<E> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

    static Poly constant(const E& c) { return Poly(c.field(), {c}); }
    static Poly x(const CoeffField& f) { return Poly(f, {f.zero(), f.one()}); }
    static Poly monomial(const E& c, std::size_t k) {
        std::vector<E> v(k + 1, c.field().zero());
        v[k] = c;
        return Poly(c.field(), std::move(v));
    }

    Field field() const { return {f_}; }
    const CoeffField& coeff_field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == f_.one(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<E>& coeffs() const { return c_; }
    E coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
    E lead() const { return c_.empty() ? f_.zero() : c_.back(); }

    void set_coeff(std::size_t i, const E& v) {
        if (i >= c_.size()) c_.resize(i + 1, f_.zero());
        c_[i] = v;
        trim();
    }

    E operator()(const E& x) const {
        E acc = f_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        E inv = lead().inverse();
        Poly r = *this;
        for (auto& c : r.c_) c *= inv;
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(f_);
        std::vector<E> d;
        d.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * f_.from_int(static_cast<long long>(i)));
        return Poly(f_, std::move(d));
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const E& s) {
        for (auto& c : c_) c *= s;
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const E& s) { return a *= s; }
    friend Poly operator*(const E& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.f_);
        std::vector<E> r(a.c_.size() + b.c_.size() - 1, a.f_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(a.f_, std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division; the divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) fail(ErrorKind::domain, "division-by-zero", "polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(a.f_), a};
        std::vector<E> rem = a.c_;
        std::vector<E> quo(a.c_.size() - b.c_.size() + 1, a.f_.zero());
        E inv = b.lead().inverse();
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t k = quo.size(); k-- > 0;) {
            E q = rem[k + db] * inv;
            quo[k] = q;
            if (q.is_zero()) continue;
            for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.c_[j];
        }
        rem.resize(db);
        return {Poly(a.f_, std::move(quo)), Poly(a.f_, std::move(rem))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// p(x + c).
    Poly shift(const E& c) const {
        Poly r(f_), xc(f_, {c, f_.one()});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * xc + constant(*it);
        return r;
    }

    /// p(q(x)).
    Poly compose(const Poly& q) const {
        Poly r(f_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + constant(*it);
        return r;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (c_[k].is_zero()) continue;
            std::string c = c_[k].to_string();
            if (c.find_first_of("+- ", 1) != std::string::npos) c = "(" + c + ")";
            std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            std::string term;
            if (k == 0)
                term = c;
            else if (c == "1")
                term = mono;
            else if (c == "-1")
                term = "-" + mono;
            else
                term = c + "*" + mono;
            if (!out.empty()) {
                if (term[0] == '-')
                    out += " - " + term.substr(1);
                else
                    out += " + " + term;
            } else {
                out = term;
            }
        }
        return out;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    CoeffField f_{};
    std::vector<E> c_;
};

template <class E>
Poly<E> PolyRing<E>::zero() const {
    return Poly<E>(base);
}
template <class E>
Poly<E> PolyRing<E>::one() const {
    return Poly<E>(base, {base.one()});
}
template <class E>
Poly<E> PolyRing<E>::from_int(long long v) const {
    return Poly<E>(base, {base.from_int(v)});
}

/// Monic gcd (zero if both inputs vanish).
template <class E>
Poly<E> gcd(Poly<E> a, Poly<E> b) {
    while (!b.is_zero()) {
        Poly<E> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g and g monic.
template <class E>
std::tuple<Poly<E>, Poly<E>, Poly<E>> ext_gcd(const Poly<E>& a, const Poly<E>& b) {
    const auto& f = a.coeff_field();
    Poly<E> r0 = a, r1 = b, s0(f, {f.one()}), s1(f), t0(f), t1(f, {f.one()});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<E> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    E inv = r0.lead().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

/// base^e mod m for a big exponent.
template <class E>
Poly<E> powmod(Poly<E> base, Integer e, const Poly<E>& m) {
    const auto& f = m.coeff_field();
    Poly<E> acc(f, {f.one()});
    acc = acc % m;
    base = base % m;
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * base % m;
        e >>= 1;
        if (e > 0) base = base * base % m;
    }
    return acc;
}

template <class E>
Poly<E> pow(Poly<E> base, unsigned e) {
    const auto& f = base.coeff_field();
    Poly<E> acc(f, {f.one()});
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

template <class E>
E pow(E base, unsigned long long e) {
    E acc = base.field().one();
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

template <class E>
E pow(E base, Integer e) {
    E acc = base.field().one();
    while (e > 0) {
        if ((e & 1) != 0) acc *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return acc;
}

/// Exact division in a ring: fields divide, polynomials must divide evenly.
template <class E>
E exact_div(const E& a, const E& b) {
    return a / b;
}
template <class E>
Poly<E> exact_div(const Poly<E>& a, const Poly<E>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) fail(ErrorKind::internal_check, "inexact-division", "polynomial division is not exact");
    return q;
}

/// Res(f, g) = lc(f)^deg(g) * prod g(roots of f), computed by the Euclidean
/// remainder sequence.
template <class E>
E resultant(Poly<E> f, Poly<E> g) {
    const auto& F = f.coeff_field();
    if (f.is_zero() || g.is_zero()) return F.zero();
    E acc = F.one();
    for (;;) {
        int m = f.degree(), n = g.degree();
        if (n == 0) return acc * pow(g.lead(), static_cast<unsigned long long>(m));
        if (m == 0) return acc * pow(f.lead(), static_cast<unsigned long long>(n));
        // Res(f, g) = (-1)^{mn} Res(g, f) and Res(g, f) = lc(g)^{m - deg r} Res(g, r).
        Poly<E> r = f % g;
        if (r.is_zero()) return F.zero();
        if ((m * n) % 2 == 1) acc = -acc;
        acc *= pow(g.lead(), static_cast<unsigned long long>(m - r.degree()));
        f = std::move(g);
        g = std::move(r);
    }
}

/// Determinant by fraction-free (Bareiss) elimination over an integral domain R
/// with exact division.
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> a, const typename R::Field& ring) {
    const std::size_t n = a.size();
    if (n == 0) return ring.one();
    R prev = ring.one();
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k].is_zero()) ++piv;
            if (piv == n) return ring.zero();
            std::swap(a[k], a[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
            a[i][k] = ring.zero();
        }
        prev = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

/// Resultant of two polynomials given by coefficient lists over a ring R
/// (low degree first), as the Sylvester determinant.
template <class R>
R sylvester_resultant(const std::vector<R>& f, const std::vector<R>& g, const typename R::Field& ring) {
    if (f.empty() || g.empty()) return ring.zero();
    const std::size_t m = f.size() - 1, n = g.size() - 1;
    const std::size_t size = m + n;
    if (size == 0) return ring.one();
    std::vector<std::vector<R>> s(size, std::vector<R>(size, ring.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
    return bareiss_determinant(std::move(s), ring);
}

}  // namespace gwchi

#endif
