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

#ifndef GWCHI_TOWER_HPP
#define GWCHI_TOWER_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "poly.hpp"
#include "scalars.hpp"

namespace gwchi {

template <class K>
struct TowerNode;
template <class K>
class TowerElem;

/// A base field (Q or F_p) together with a stack of simple algebraic
/// extensions L_i = L_{i-1}[v_i]/(m_i). Handles are cheap to copy; two handles
/// compare equal iff they refer to the same stage.
///
/// Elements are stored densely over the product basis: index i*c + j holds
/// the coefficient of v^i * (basis element j of the previous stage), c being
/// the degree of the previous stage over the base.
template <class K>
class Tower {
   public:
    using element_type = TowerElem<K>;
    using BaseField = typename K::Field;

    Tower() = default;
    static Tower over(const BaseField& base);

    /// Adjoins a root of `minpoly` (a polynomial over this stage). Irreducibility
    /// is NOT checked here; use make_extension() from factor.hpp for that.
    Tower extend_unchecked(const std::string& var, const Poly<TowerElem<K>>& minpoly) const;

    std::size_t depth() const;
    std::size_t degree() const;        // [L : k]
    std::size_t stage_degree() const;  // [L : L_{prev}]
    Tower parent() const;
    const BaseField& base_field() const;
    const std::string& var() const;
    std::vector<std::string> var_names() const;
    Poly<TowerElem<K>> minpoly() const;  // over parent()

    TowerElem<K> zero() const;
    TowerElem<K> one() const;
    TowerElem<K> from_int(long long v) const;
    TowerElem<K> from_base(const K& v) const;
    TowerElem<K> from_rational(const Rational& q) const;
    TowerElem<K> generator() const;
    /// Image of an element of a sub-stage of this tower.
    TowerElem<K> embed(const TowerElem<K>& x) const;
    bool has_ancestor(const Tower& t) const;

    std::uint64_t characteristic() const { return base_field().characteristic(); }
    Integer size() const;
    bool is_finite() const { return base_field().is_finite(); }
    TowerElem<K> random(std::mt19937_64& rng) const;

    /// Tr_{L / parent}.
    TowerElem<K> stage_trace(const TowerElem<K>& x) const;
    /// Tr_{L / k}, stage by stage.
    K trace_to_base(const TowerElem<K>& x) const;

    bool valid() const { return node_ != nullptr; }
    bool operator==(const Tower& o) const { return node_ == o.node_; }
    const TowerNode<K>* node() const { return node_.get(); }

   private:
    explicit Tower(std::shared_ptr<const TowerNode<K>> n) : node_(std::move(n)) {}
    std::shared_ptr<const TowerNode<K>> node_;
};

/// Element of a field tower.
template <class K>
class TowerElem {
   public:
    using Field = Tower<K>;

    TowerElem() = default;
    TowerElem(Tower<K> t, std::vector<K> c) : t_(std::move(t)), c_(std::move(c)) {
        if (c_.size() != t_.degree())
            fail(ErrorKind::domain, "bad-element", "coefficient vector does not match tower degree");
    }

    const Field& field() const { return t_; }
    const std::vector<K>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_one() const { return *this == t_.one(); }
    /// True when the element lies in the base field.
    bool in_base() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    const K& base_value() const {
        if (!in_base()) fail(ErrorKind::domain, "not-in-base", "element does not lie in the base field");
        return c_[0];
    }

    /// Chunk i of the stage decomposition: coefficient of v^i over the parent stage.
    TowerElem chunk(std::size_t i) const;

    TowerElem inverse() const;

    TowerElem operator-() const {
        TowerElem r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    TowerElem& operator+=(const TowerElem& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TowerElem& operator-=(const TowerElem& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    TowerElem& operator*=(const TowerElem& o);
    TowerElem& operator/=(const TowerElem& o) { return *this *= o.inverse(); }
    friend TowerElem operator+(TowerElem a, const TowerElem& b) { return a += b; }
    friend TowerElem operator-(TowerElem a, const TowerElem& b) { return a -= b; }
    friend TowerElem operator*(TowerElem a, const TowerElem& b) { return a *= b; }
    friend TowerElem operator/(TowerElem a, const TowerElem& b) { return a /= b; }
    friend bool operator==(const TowerElem& a, const TowerElem& b) { return a.t_ == b.t_ && a.c_ == b.c_; }

    std::string to_string() const;

   private:
    void check(const TowerElem& o) const {
        if (!(o.t_ == t_)) fail(ErrorKind::domain, "tower-mismatch", "operands live in different field towers");
    }
    Tower<K> t_;
    std::vector<K> c_;
};

template <class K>
struct TowerNode {
    typename K::Field base;
    std::shared_ptr<const TowerNode> parent;
    std::string var;
    std::vector<TowerElem<K>> minpoly;     // monic, low degree first, over parent
    std::vector<TowerElem<K>> power_sums;  // Tr_{L/parent}(v^i), i < d
    std::size_t d = 1;
    std::size_t total = 1;
    std::size_t depth = 0;
};

namespace detail {

template <class K>
bool all_zero(const K* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!a[i].is_zero()) return false;
    return true;
}

template <class K>
std::vector<K> tower_mul(const TowerNode<K>* node, const K* a, const K* b) {
    if (node->depth == 0) return {a[0] * b[0]};
    const TowerNode<K>* par = node->parent.get();
    const std::size_t c = par->total, d = node->d;
    const K zero = node->base.zero();
    std::vector<K> r((2 * d - 1) * c, zero);
    for (std::size_t i = 0; i < d; ++i) {
        if (all_zero(a + i * c, c)) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (all_zero(b + j * c, c)) continue;
            std::vector<K> p = tower_mul(par, a + i * c, b + j * c);
            for (std::size_t k = 0; k < c; ++k) r[(i + j) * c + k] += p[k];
        }
    }
    for (std::size_t k = 2 * d - 1; k-- > d;) {
        const K* top = r.data() + k * c;
        if (all_zero(top, c)) continue;
        std::vector<K> lead(top, top + c);
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<K> p = tower_mul(par, lead.data(), node->minpoly[j].coeffs().data());
            for (std::size_t q = 0; q < c; ++q) r[(k - d + j) * c + q] -= p[q];
        }
        for (std::size_t q = 0; q < c; ++q) r[k * c + q] = zero;
    }
    r.resize(d * c);
    return r;
}

}  // namespace detail

template <class K>
Tower<K> Tower<K>::over(const BaseField& base) {
    auto n = std::make_shared<TowerNode<K>>();
    n->base = base;
    return Tower(std::move(n));
}

template <class K>
Tower<K> Tower<K>::extend_unchecked(const std::string& var, const Poly<TowerElem<K>>& minpoly) const {
    if (!(minpoly.coeff_field() == *this))
        fail(ErrorKind::domain, "tower-mismatch", "defining polynomial must have coefficients in the current stage");
    if (minpoly.degree() < 1) fail(ErrorKind::domain, "bad-minpoly", "defining polynomial must be non-constant");
    Poly<TowerElem<K>> m = minpoly.monic();
    auto n = std::make_shared<TowerNode<K>>();
    n->base = base_field();
    n->parent = node_;
    n->var = var;
    n->minpoly = m.coeffs();
    n->d = static_cast<std::size_t>(m.degree());
    n->total = n->d * degree();
    n->depth = depth() + 1;
    // Newton identities for the power sums of the roots of m.
    const std::size_t d = n->d;
    std::vector<TowerElem<K>> ps(d, zero());
    ps[0] = from_int(static_cast<long long>(d));
    for (std::size_t k = 1; k < d; ++k) {
        TowerElem<K> s = from_int(static_cast<long long>(k)) * m.coeff(d - k);
        for (std::size_t i = 1; i < k; ++i) s += m.coeff(d - i) * ps[k - i];
        ps[k] = -s;
    }
    n->power_sums = std::move(ps);
    return Tower(std::move(n));
}

template <class K>
std::size_t Tower<K>::depth() const {
    return node_->depth;
}
template <class K>
std::size_t Tower<K>::degree() const {
    return node_->total;
}
template <class K>
std::size_t Tower<K>::stage_degree() const {
    return node_->d;
}
template <class K>
Tower<K> Tower<K>::parent() const {
    if (!node_->parent) fail(ErrorKind::domain, "no-parent", "base stage has no parent");
    return Tower(node_->parent);
}
template <class K>
const typename K::Field& Tower<K>::base_field() const {
    return node_->base;
}
template <class K>
const std::string& Tower<K>::var() const {
    return node_->var;
}
template <class K>
std::vector<std::string> Tower<K>::var_names() const {
    std::vector<std::string> out;
    for (const TowerNode<K>* n = node_.get(); n->depth > 0; n = n->parent.get()) out.insert(out.begin(), n->var);
    return out;
}
template <class K>
Poly<TowerElem<K>> Tower<K>::minpoly() const {
    return Poly<TowerElem<K>>(parent(), node_->minpoly);
}
template <class K>
TowerElem<K> Tower<K>::zero() const {
    return TowerElem<K>(*this, std::vector<K>(degree(), base_field().zero()));
}
template <class K>
TowerElem<K> Tower<K>::one() const {
    return from_base(base_field().one());
}
template <class K>
TowerElem<K> Tower<K>::from_int(long long v) const {
    return from_base(base_field().from_int(v));
}
template <class K>
TowerElem<K> Tower<K>::from_base(const K& v) const {
    std::vector<K> c(degree(), base_field().zero());
    c[0] = v;
    return TowerElem<K>(*this, std::move(c));
}
template <class K>
TowerElem<K> Tower<K>::from_rational(const Rational& q) const {
    return from_base(base_field().from_rational(q));
}
template <class K>
TowerElem<K> Tower<K>::generator() const {
    if (depth() == 0) fail(ErrorKind::domain, "no-generator", "base stage has no generator");
    std::vector<K> c(degree(), base_field().zero());
    if (stage_degree() == 1) {
        // v = -m_0 lies in the parent.
        TowerElem<K> r = -node_->minpoly[0];
        for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i] = r.coeffs()[i];
    } else {
        c[node_->parent->total] = base_field().one();
    }
    return TowerElem<K>(*this, std::move(c));
}
template <class K>
bool Tower<K>::has_ancestor(const Tower& t) const {
    for (const TowerNode<K>* n = node_.get(); n != nullptr; n = n->parent.get())
        if (n == t.node_.get()) return true;
    return false;
}
template <class K>
TowerElem<K> Tower<K>::embed(const TowerElem<K>& x) const {
    if (!has_ancestor(x.field()))
        fail(ErrorKind::domain, "tower-mismatch", "element does not belong to a sub-stage of this tower");
    std::vector<K> c = x.coeffs();
    c.resize(degree(), base_field().zero());
    return TowerElem<K>(*this, std::move(c));
}
template <class K>
Integer Tower<K>::size() const {
    if (!is_finite()) return 0;
    Integer q = 1;
    for (std::size_t i = 0; i < degree(); ++i) q *= characteristic();
    return q;
}
template <class K>
TowerElem<K> Tower<K>::random(std::mt19937_64& rng) const {
    std::vector<K> c;
    c.reserve(degree());
    for (std::size_t i = 0; i < degree(); ++i) c.push_back(base_field().random(rng));
    return TowerElem<K>(*this, std::move(c));
}
template <class K>
TowerElem<K> Tower<K>::stage_trace(const TowerElem<K>& x) const {
    if (!(x.field() == *this)) fail(ErrorKind::domain, "tower-mismatch", "trace of a foreign element");
    Tower par = parent();
    TowerElem<K> acc = par.zero();
    for (std::size_t i = 0; i < stage_degree(); ++i) acc += x.chunk(i) * node_->power_sums[i];
    return acc;
}
template <class K>
K Tower<K>::trace_to_base(const TowerElem<K>& x) const {
    if (depth() == 0) return x.coeffs()[0];
    return parent().trace_to_base(stage_trace(x));
}

template <class K>
TowerElem<K> TowerElem<K>::chunk(std::size_t i) const {
    Tower<K> par = t_.parent();
    const std::size_t c = par.degree();
    return TowerElem<K>(par, std::vector<K>(c_.begin() + static_cast<long>(i * c),
                                            c_.begin() + static_cast<long>((i + 1) * c)));
}

template <class K>
TowerElem<K>& TowerElem<K>::operator*=(const TowerElem& o) {
    check(o);
    c_ = detail::tower_mul(t_.node(), c_.data(), o.c_.data());
    return *this;
}

template <class K>
TowerElem<K> TowerElem<K>::inverse() const {
    if (is_zero()) fail(ErrorKind::domain, "division-by-zero", "division by zero in field tower");
    if (t_.depth() == 0) return t_.from_base(c_[0].inverse());
    Tower<K> par = t_.parent();
    std::vector<TowerElem<K>> chunks;
    for (std::size_t i = 0; i < t_.stage_degree(); ++i) chunks.push_back(chunk(i));
    Poly<TowerElem<K>> a(par, std::move(chunks));
    auto [g, s, t] = ext_gcd(a, t_.minpoly());
    if (g.degree() != 0) fail(ErrorKind::internal_check, "reducible-stage", "stage polynomial is not irreducible");
    std::vector<K> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < t_.stage_degree(); ++i) {
        TowerElem<K> ci = s.coeff(i);
        out.insert(out.end(), ci.coeffs().begin(), ci.coeffs().end());
    }
    return TowerElem<K>(t_, std::move(out));
}

template <class K>
std::string TowerElem<K>::to_string() const {
    if (t_.depth() == 0) return c_[0].to_string();
    std::vector<TowerElem<K>> chunks;
    for (std::size_t i = 0; i < t_.stage_degree(); ++i) chunks.push_back(chunk(i));
    return Poly<TowerElem<K>>(t_.parent(), std::move(chunks)).to_string(t_.var());
}

/// Maps a polynomial over the base scalars into a tower.
template <class K>
Poly<TowerElem<K>> lift_poly(const Tower<K>& t, const Poly<K>& p) {
    std::vector<TowerElem<K>> c;
    for (const auto& a : p.coeffs()) c.push_back(t.from_base(a));
    return Poly<TowerElem<K>>(t, std::move(c));
}

/// Embeds a polynomial over a sub-stage into tower t.
template <class K>
Poly<TowerElem<K>> embed_poly(const Tower<K>& t, const Poly<TowerElem<K>>& p) {
    std::vector<TowerElem<K>> c;
    for (const auto& a : p.coeffs()) c.push_back(t.embed(a));
    return Poly<TowerElem<K>>(t, std::move(c));
}

/// Polynomial over a depth-0 tower -> polynomial over the scalars.
template <class K>
Poly<K> lower_poly(const Poly<TowerElem<K>>& p) {
    std::vector<K> c;
    for (const auto& a : p.coeffs()) c.push_back(a.base_value());
    return Poly<K>(p.coeff_field().base_field(), std::move(c));
}

}  // namespace gwchi

#endif
