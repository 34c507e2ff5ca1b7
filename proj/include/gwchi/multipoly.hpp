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

#ifndef GWCHI_MULTIPOLY_HPP
#define GWCHI_MULTIPOLY_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "poly.hpp"

namespace gwchi {

using Exponent = std::vector<int>;

/// Sparse multivariate polynomial. Terms with zero coefficient are never stored.
template <class E>
class MultiPoly {
   public:
    using CoeffField = typename E::Field;
    using Terms = std::map<Exponent, E>;

    MultiPoly() = default;
    MultiPoly(CoeffField f, std::vector<std::string> vars) : f_(std::move(f)), vars_(std::move(vars)) {}

    static MultiPoly constant(const CoeffField& f, const std::vector<std::string>& vars, const E& c) {
        MultiPoly r(f, vars);
        r.add_term(Exponent(vars.size(), 0), c);
        return r;
    }
    static MultiPoly variable(const CoeffField& f, const std::vector<std::string>& vars, std::size_t i) {
        MultiPoly r(f, vars);
        Exponent e(vars.size(), 0);
        e.at(i) = 1;
        r.add_term(e, f.one());
        return r;
    }

    const CoeffField& coeff_field() const { return f_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t arity() const { return vars_.size(); }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    std::size_t var_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) fail(ErrorKind::domain, "unknown-variable", "unknown variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    void add_term(const Exponent& e, const E& c) {
        if (e.size() != vars_.size()) fail(ErrorKind::domain, "arity-mismatch", "exponent vector has wrong arity");
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

    E coeff(const Exponent& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? f_.zero() : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : t_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
    int degree_in(std::size_t i) const {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, e[i]);
        return d;
    }
    bool is_homogeneous() const {
        const int d = total_degree();
        for (const auto& [e, c] : t_) {
            int s = 0;
            for (int x : e) s += x;
            if (s != d) return false;
        }
        return true;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        check(o);
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check(o);
        for (const auto& [e, c] : o.t_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a.f_, a.vars_);
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                Exponent e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(MultiPoly a, const E& s) {
        MultiPoly r(a.f_, a.vars_);
        for (const auto& [e, c] : a.t_) r.add_term(e, c * s);
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.vars_ == b.vars_ && a.t_ == b.t_; }

    MultiPoly pow(unsigned k) const {
        MultiPoly r = constant(f_, vars_, f_.one()), b = *this;
        while (k) {
            if (k & 1U) r = r * b;
            k >>= 1U;
            if (k) b = b * b;
        }
        return r;
    }

    MultiPoly derivative(std::size_t i) const {
        MultiPoly r(f_, vars_);
        for (const auto& [e, c] : t_) {
            if (e.at(i) == 0) continue;
            Exponent d = e;
            --d[i];
            r.add_term(d, c * f_.from_int(e[i]));
        }
        return r;
    }
    MultiPoly derivative(const std::string& v) const { return derivative(var_index(v)); }

    /// Sets variable i to 1 and drops it. Remaining variables are renamed to lower case.
    MultiPoly dehomogenize(std::size_t i) const {
        std::vector<std::string> nv;
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (k == i) continue;
            std::string s = vars_[k];
            for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            nv.push_back(s);
        }
        MultiPoly r(f_, nv);
        for (const auto& [e, c] : t_) {
            Exponent d;
            for (std::size_t k = 0; k < e.size(); ++k)
                if (k != i) d.push_back(e[k]);
            r.add_term(d, c);
        }
        return r;
    }
    MultiPoly dehomogenize(const std::string& v) const { return dehomogenize(var_index(v)); }

    E evaluate(const std::vector<E>& point) const {
        return evaluate_in<E>(point, f_.zero(), [](const E& c) { return c; });
    }

    /// Evaluates in any commutative ring R given images of the variables and
    /// a coefficient embedding.
    template <class R, class Conv>
    R evaluate_in(const std::vector<R>& vals, const R& zero, Conv conv) const {
        if (vals.size() != vars_.size()) fail(ErrorKind::domain, "arity-mismatch", "wrong number of values");
        std::vector<std::vector<R>> powers(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const int d = degree_in(i);
            if (d < 0) continue;
            R one = zero;
            one = conv(f_.one()) + zero;
            powers[i].push_back(one);
            for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * vals[i]);
        }
        R acc = zero;
        for (const auto& [e, c] : t_) {
            R term = conv(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) term = term * powers[i][e[i]];
            acc = acc + term;
        }
        return acc;
    }

    /// Same polynomial with coefficients mapped into another field.
    template <class E2, class Conv>
    MultiPoly<E2> map_coeffs(const typename E2::Field& f2, Conv conv) const {
        MultiPoly<E2> r(f2, vars_);
        for (const auto& [e, c] : t_) r.add_term(e, conv(c));
        return r;
    }

    /// Coefficients with respect to variable i, as polynomials in the other
    /// variables (variable i is kept with exponent zero).
    std::vector<MultiPoly> coefficients_in(std::size_t i) const {
        std::vector<MultiPoly> out(std::max(degree_in(i) + 1, 0), MultiPoly(f_, vars_));
        for (const auto& [e, c] : t_) {
            Exponent d = e;
            d[i] = 0;
            out[e[i]].add_term(d, c);
        }
        return out;
    }

    /// Univariate view when only variable i occurs.
    Poly<E> to_univariate(std::size_t i) const {
        std::vector<E> c(std::max(degree_in(i) + 1, 0), f_.zero());
        for (const auto& [e, v] : t_) {
            for (std::size_t k = 0; k < e.size(); ++k)
                if (k != i && e[k] != 0)
                    fail(ErrorKind::domain, "not-univariate", "polynomial involves more than one variable");
            c[e[i]] = v;
        }
        return Poly<E>(f_, std::move(c));
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string out;
        // Highest total degree first, then lexicographically largest exponent.
        std::vector<std::pair<Exponent, E>> items(t_.begin(), t_.end());
        std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
            int sa = 0, sb = 0;
            for (int x : a.first) sa += x;
            for (int x : b.first) sb += x;
            if (sa != sb) return sa > sb;
            return a.first > b.first;
        });
        for (const auto& [e, c] : items) {
            std::string cs = c.to_string();
            bool neg = false;
            if (!cs.empty() && cs[0] == '-' && cs.find_first_of("+ ", 1) == std::string::npos) {
                neg = true;
                cs = cs.substr(1);
            }
            if (cs.find_first_of("+- ") != std::string::npos) cs = "(" + cs + ")";
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            std::string term;
            if (mono.empty()) term = cs;
            else if (cs == "1") term = mono;
            else term = cs + "*" + mono;
            if (out.empty()) out = neg ? "-" + term : term;
            else out += neg ? " - " + term : " + " + term;
        }
        return out;
    }

   private:
    void check(const MultiPoly& o) const {
        if (o.vars_ != vars_) fail(ErrorKind::domain, "variable-mismatch", "polynomials use different variables");
    }
    CoeffField f_{};
    std::vector<std::string> vars_;
    Terms t_;
};

}  // namespace gwchi

#endif
