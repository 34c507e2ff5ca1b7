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

#ifndef GWCHI_GW_HPP
#define GWCHI_GW_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "number_theory.hpp"
#include "scalars.hpp"

namespace gwchi {

/// The base field of a GW computation: Q or F_p with p an odd prime.
struct FieldDescriptor {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0;

    static FieldDescriptor rationals() { return {}; }
    static FieldDescriptor prime(std::uint64_t p) {
        if (p == 2 || !is_prime(p))
            fail(ErrorKind::domain, "bad-characteristic", "field characteristic must be an odd prime");
        if (p >= (std::uint64_t{1} << 31)) fail(ErrorKind::capacity, "prime-too-large", "prime must be below 2^31");
        return {Kind::prime, p};
    }
    bool is_rational() const { return kind == Kind::rationals; }
    std::string to_string() const { return is_rational() ? "Q" : "Fp:" + std::to_string(p); }
    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
        return a.kind == b.kind && a.p == b.p;
    }
};

inline FieldDescriptor descriptor_of(const RationalField&) { return FieldDescriptor::rationals(); }
inline FieldDescriptor descriptor_of(const PrimeField& f) { return FieldDescriptor::prime(f.p); }

/// Canonical square class of a nonzero base-field value. Over Q this is the
/// signed squarefree integer; over F_p it is 1 or the least non-residue.
inline Integer square_class(const FieldDescriptor& k, const Rational& a) {
    if (a == 0) fail(ErrorKind::domain, "zero-square-class", "zero has no square class");
    if (k.is_rational()) return rational_square_class(a);
    ModP v = PrimeField{k.p}.from_rational(a);
    if (v.is_zero()) fail(ErrorKind::domain, "zero-square-class", "zero has no square class");
    return legendre(Integer(v.value()), Integer(k.p)) == 1 ? Integer(1) : Integer(least_nonresidue(k.p));
}
inline Integer square_class(const Rat& a) { return square_class(FieldDescriptor::rationals(), a.value()); }
inline Integer square_class(const ModP& a) {
    return square_class(FieldDescriptor::prime(a.modulus()), Rational(a.value()));
}

inline bool is_square(const FieldDescriptor& k, const Rational& a) {
    if (k.is_rational()) return a > 0 && rational_square_class(a) == 1;
    ModP v = PrimeField{k.p}.from_rational(a);
    return !v.is_zero() && legendre(Integer(v.value()), Integer(k.p)) == 1;
}
inline bool is_square(const Rat& a) { return !a.is_zero() && is_square(FieldDescriptor::rationals(), a.value()); }
inline bool is_square(const ModP& a) {
    return !a.is_zero() && legendre(Integer(a.value()), Integer(a.modulus())) == 1;
}

/// Base-field value as a rational number (ModP gives its least residue).
inline Rational to_rational(const Rat& a) { return a.value(); }
inline Rational to_rational(const ModP& a) { return Rational(a.value()); }

struct GWInvariants {
    long long rank = 0;
    std::optional<long long> signature;  // Q only
    Integer discriminant = 1;            // square class of the plain determinant
    std::map<Integer, int> hasse;        // place (0 = infinity) -> +-1, Q only
};

/// Element of GW(k): a signed multiset of square classes.
class GWElement {
   public:
    GWElement() = default;
    explicit GWElement(FieldDescriptor k) : k_(k) {}

    static GWElement zero(const FieldDescriptor& k) { return GWElement(k); }
    static GWElement one(const FieldDescriptor& k) { return form(k, 1); }
    /// <a>
    static GWElement form(const FieldDescriptor& k, const Rational& a, long long mult = 1) {
        GWElement r(k);
        r.add_class(square_class(k, a), mult);
        return r;
    }
    static GWElement hyperbolic(const FieldDescriptor& k, long long m = 1) {
        GWElement r(k);
        r.add_class(square_class(k, 1), m);
        r.add_class(square_class(k, -1), m);
        return r;
    }
    static GWElement from_diagonal(const FieldDescriptor& k, const std::vector<Rational>& entries) {
        GWElement r(k);
        for (const auto& a : entries) r.add_class(square_class(k, a), 1);
        return r;
    }

    const FieldDescriptor& field() const { return k_; }
    const std::map<Integer, long long>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }

    void add_class(const Integer& c, long long mult) {
        if (mult == 0) return;
        long long& m = e_[c];
        m += mult;
        if (m == 0) e_.erase(c);
    }

    long long rank() const {
        long long r = 0;
        for (const auto& [c, m] : e_) r += m;
        return r;
    }
    /// Signature over the real embedding of Q.
    long long signature() const {
        if (!k_.is_rational()) fail(ErrorKind::domain, "no-signature", "signature is only defined over Q");
        long long s = 0;
        for (const auto& [c, m] : e_) s += c > 0 ? m : -m;
        return s;
    }
    Integer discriminant() const {
        Integer d = 1;
        for (const auto& [c, m] : e_)
            if (m % 2 != 0) d *= c;
        return square_class(k_, Rational(d));
    }

    /// Genuine representative x + m*H (m = total negative multiplicity):
    /// each -k<c> becomes k<-c>.
    std::map<Integer, long long> genuine_entries() const {
        std::map<Integer, long long> out;
        for (const auto& [c, m] : e_) {
            if (m > 0) out[c] += m;
            else out[square_class(k_, Rational(-c))] += -m;
        }
        return out;
    }

    /// Support set for Hasse invariants: infinity, 2, and primes dividing entries.
    std::set<Integer> places() const {
        std::set<Integer> s{0, 2};
        for (const auto& [c, m] : genuine_entries())
            for (const auto& [p, e] : factor_integer(abs(c))) s.insert(p);
        return s;
    }

    GWInvariants invariants() const {
        GWInvariants inv;
        inv.rank = rank();
        inv.discriminant = discriminant();
        if (k_.is_rational()) {
            inv.signature = signature();
            const auto g = genuine_entries();
            for (const auto& v : places()) inv.hasse[v] = hasse_of(g, v);
        }
        return inv;
    }

    GWElement& operator+=(const GWElement& o) {
        check(o);
        for (const auto& [c, m] : o.e_) add_class(c, m);
        return *this;
    }
    GWElement& operator-=(const GWElement& o) {
        check(o);
        for (const auto& [c, m] : o.e_) add_class(c, -m);
        return *this;
    }
    GWElement operator-() const {
        GWElement r(k_);
        for (const auto& [c, m] : e_) r.e_[c] = -m;
        return r;
    }
    friend GWElement operator+(GWElement a, const GWElement& b) { return a += b; }
    friend GWElement operator-(GWElement a, const GWElement& b) { return a -= b; }
    friend GWElement operator*(const GWElement& a, const GWElement& b) {
        a.check(b);
        GWElement r(a.k_);
        for (const auto& [c, m] : a.e_)
            for (const auto& [d, n] : b.e_) r.add_class(square_class(a.k_, Rational(c * d)), m * n);
        return r;
    }
    friend GWElement operator*(long long k, const GWElement& a) {
        GWElement r(a.k_);
        for (const auto& [c, m] : a.e_) r.add_class(c, k * m);
        return r;
    }
    GWElement& operator*=(const GWElement& o) { return *this = *this * o; }

    /// Multiset identity (not GW equality).
    friend bool identical(const GWElement& a, const GWElement& b) { return a.k_ == b.k_ && a.e_ == b.e_; }

    static int hasse_of(const std::map<Integer, long long>& g, const Integer& v) {
        int h = 1;
        for (auto i = g.begin(); i != g.end(); ++i) {
            const long long mi = i->second;
            // pairs within the same class: C(mi, 2) copies of (c, c)
            if ((mi * (mi - 1) / 2) % 2 != 0) h *= hilbert_symbol(Rational(i->first), Rational(i->first), v);
            for (auto j = std::next(i); j != g.end(); ++j)
                if ((mi * j->second) % 2 != 0) h *= hilbert_symbol(Rational(i->first), Rational(j->first), v);
        }
        return h;
    }

   private:
    void check(const GWElement& o) const {
        if (!(o.k_ == k_)) fail(ErrorKind::domain, "base-mismatch", "GW elements over different base fields");
    }
    FieldDescriptor k_;
    std::map<Integer, long long> e_;
};

/// Decides equality in GW(k) from rank, signature, discriminant and Hasse
/// invariants (Q) or rank and discriminant (F_p).
inline bool gw_equals(const GWElement& x, const GWElement& y) {
    if (!(x.field() == y.field())) fail(ErrorKind::domain, "base-mismatch", "GW elements over different base fields");
    const FieldDescriptor& k = x.field();
    GWElement d = x - y;
    // d = P - N with P, N genuine forms; x = y iff P and N are isometric.
    GWElement P(k), N(k);
    for (const auto& [c, m] : d.entries()) (m > 0 ? P : N).add_class(c, m > 0 ? m : -m);
    if (P.rank() != N.rank()) return false;
    if (P.discriminant() != N.discriminant()) return false;
    if (!k.is_rational()) return true;
    if (P.signature() != N.signature()) return false;
    std::set<Integer> places = P.places();
    for (const auto& v : N.places()) places.insert(v);
    for (const auto& v : places)
        if (GWElement::hasse_of(P.entries(), v) != GWElement::hasse_of(N.entries(), v)) return false;
    return true;
}

/// Equality after extension of scalars from Q to R: rank and signature.
inline bool gw_equals_real(const GWElement& x, const GWElement& y) {
    return x.rank() == y.rank() && x.signature() == y.signature();
}

namespace detail {

inline Integer neg_class(const FieldDescriptor& k, const Integer& c) { return square_class(k, Rational(-c)); }

/// Greedy extraction of hyperbolic planes <c> + <-c>.
inline std::pair<std::map<Integer, long long>, long long> split_hyperbolic(const GWElement& x) {
    const auto& k = x.field();
    std::map<Integer, long long> e = x.entries();
    long long h = 0;
    for (auto& [c, m] : e) {
        if (m == 0) continue;
        Integer nc = neg_class(k, c);
        if (nc == c) {
            long long q = m / 2;
            h += q;
            m -= 2 * q;
            continue;
        }
        auto it = e.find(nc);
        if (it == e.end() || it->second == 0) continue;
        long long& n = it->second;
        if ((m > 0) != (n > 0)) continue;
        long long q = m > 0 ? std::min(m, n) : std::max(m, n);
        h += q;
        m -= q;
        n -= q;
    }
    std::map<Integer, long long> rest;
    for (const auto& [c, m] : e)
        if (m != 0) rest[c] = m;
    return {rest, h};
}

inline long long weight(const std::map<Integer, long long>& e) {
    long long w = 0;
    for (const auto& [c, m] : e) w += m < 0 ? -m : m;
    return w;
}

/// Candidate normal forms of shape a<1> + b<-1> + <d> + h*H, tried in order.
inline std::optional<std::pair<std::map<Integer, long long>, long long>> canonical_candidate(const GWElement& x) {
    const auto& k = x.field();
    const long long r = x.rank();
    if (r < 0) return std::nullopt;
    std::vector<std::pair<std::map<Integer, long long>, long long>> cands;
    if (k.is_rational()) {
        const long long s = x.signature();
        const long long as = s < 0 ? -s : s;
        if (as > r) return std::nullopt;
        const Integer sg = s < 0 ? -1 : 1;
        std::map<Integer, long long> a;
        if (as > 0) a[sg] = as;
        cands.push_back({a, (r - as) / 2});
        const Integer disc = x.discriminant();
        if (as > 0) {
            std::map<Integer, long long> b;
            if (as > 1) b[sg] = as - 1;
            // <d> with sign sg and discriminant matching
            GWElement probe(k);
            for (const auto& [c, m] : b) probe.add_class(c, m);
            probe += GWElement::hyperbolic(k, (r - as) / 2);
            Integer d = square_class(k, Rational(disc * probe.discriminant()));
            b[d] += 1;
            cands.push_back({b, (r - as) / 2});
        } else if (r >= 2) {
            GWElement probe = GWElement::hyperbolic(k, (r - 2) / 2) + GWElement::one(k);
            Integer d = square_class(k, Rational(disc * probe.discriminant()));
            std::map<Integer, long long> b{{Integer(1), 1}};
            b[d] += 1;
            cands.push_back({b, (r - 2) / 2});
        }
    } else {
        const Integer disc = x.discriminant();
        if (r % 2 == 0) {
            cands.push_back({{}, r / 2});
            if (r >= 2) {
                GWElement probe = GWElement::hyperbolic(k, (r - 2) / 2) + GWElement::one(k);
                Integer d = square_class(k, Rational(disc * probe.discriminant()));
                std::map<Integer, long long> b{{Integer(1), 1}};
                b[d] += 1;
                cands.push_back({b, (r - 2) / 2});
            }
        } else {
            GWElement probe = GWElement::hyperbolic(k, (r - 1) / 2);
            Integer d = square_class(k, Rational(disc * probe.discriminant()));
            cands.push_back({{{d, 1}}, (r - 1) / 2});
        }
    }
    for (auto& [e, h] : cands) {
        std::map<Integer, long long> clean;
        for (const auto& [c, m] : e)
            if (m != 0) clean[c] = m;
        GWElement y = GWElement::hyperbolic(k, h);
        for (const auto& [c, m] : clean) y.add_class(c, m);
        if (gw_equals(x, y)) return std::make_pair(clean, h);
    }
    return std::nullopt;
}

}  // namespace detail

/// Normal form used for display: sorted (class, multiplicity) pairs plus a
/// multiple of H.
struct GWDisplayForm {
    std::vector<std::pair<Integer, long long>> entries;
    long long hyperbolic = 0;
};

inline GWDisplayForm display_form(const GWElement& x) {
    auto [rest, h] = detail::split_hyperbolic(x);
    if (auto c = detail::canonical_candidate(x)) {
        if (detail::weight(c->first) < detail::weight(rest)) {
            rest = c->first;
            h = c->second;
        }
    }
    std::vector<std::pair<Integer, long long>> items(rest.begin(), rest.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        Integer aa = abs(a.first), ab = abs(b.first);
        if (aa != ab) return aa < ab;
        return a.first > b.first;
    });
    return {std::move(items), h};
}

/// Display as "2<1> + <3> + 11*H" (ASCII) or with angle brackets and a
/// middle dot (unicode). Deterministic; round-trips through parse_gw.
inline std::string gw_display(const GWElement& x, bool unicode = false) {
    const auto [items, h] = display_form(x);
    const std::string lb = unicode ? "⟨" : "<", rb = unicode ? "⟩" : ">";
    const std::string hs = unicode ? "·H" : "*H";
    std::string out;
    auto emit = [&](long long m, const std::string& body) {
        const bool neg = m < 0;
        const long long a = neg ? -m : m;
        std::string t = a == 1 ? body : std::to_string(a) + body;
        if (out.empty()) out = neg ? "-" + t : t;
        else out += neg ? " - " + t : " + " + t;
    };
    for (const auto& [c, m] : items) emit(m, lb + c.str() + rb);
    if (h != 0) {
        const long long a = h < 0 ? -h : h;
        std::string body = a == 1 ? "H" : std::to_string(a) + hs;
        if (out.empty()) out = h < 0 ? "-" + body : body;
        else out += h < 0 ? " - " + body : " + " + body;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Expression grammar: sums, differences and products of integers, <q>, H,
// parentheses. Juxtaposition multiplies ("2<3>" is 2*<3>).

namespace detail {

class GWParser {
   public:
    GWParser(const FieldDescriptor& k, const std::string& s) : k_(k), s_(s) {}

    GWElement run() {
        GWElement r = expr();
        skip();
        if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

   private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::parse, "gw-syntax", "column " + std::to_string(i_ + 1) + ": " + msg);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s_.compare(i_, tok.size(), tok) == 0) {
            i_ += tok.size();
            return true;
        }
        return false;
    }
    bool at_factor_start() {
        skip();
        if (i_ >= s_.size()) return false;
        const char c = s_[i_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '<' || c == '(' || c == 'H' ||
               s_.compare(i_, 3, "⟨") == 0;
    }
    GWElement expr() {
        GWElement r(k_);
        bool neg = eat("-");
        if (!neg) eat("+");
        r = neg ? -term() : term();
        for (;;) {
            if (eat("+")) r += term();
            else if (eat("-")) r -= term();
            else return r;
        }
    }
    GWElement term() {
        GWElement r = factor();
        for (;;) {
            if (eat("*") || eat("·")) r *= factor();
            else if (at_factor_start()) r *= factor();
            else return r;
        }
    }
    Integer integer() {
        skip();
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) error("expected an integer");
        return Integer(s_.substr(start, i_ - start));
    }
    GWElement factor() {
        skip();
        if (i_ >= s_.size()) error("unexpected end of input");
        if (eat("(")) {
            GWElement r = expr();
            if (!eat(")")) error("expected ')'");
            return r;
        }
        if (eat("-")) return -factor();
        if (eat("H")) return GWElement::hyperbolic(k_);
        const bool ascii = eat("<");
        if (ascii || eat("⟨")) {
            bool neg = eat("-");
            if (!neg) eat("+");
            Integer num = integer(), den = 1;
            if (eat("/")) den = integer();
            if (den == 0) error("zero denominator");
            if (num == 0) error("<0> is not a form");
            if (!(ascii ? eat(">") : eat("⟩"))) error("expected closing bracket");
            Rational q(num, den);
            if (neg) q = -q;
            Rational qq = q;
            try {
                return GWElement::form(k_, qq);
            } catch (const Error& e) {
                error(e.what());
            }
        }
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            Integer n = integer();
            if (n > Integer(std::numeric_limits<long long>::max()))
                fail(ErrorKind::capacity, "gw-multiplicity", "multiplicity too large");
            return n.convert_to<long long>() * GWElement::one(k_);
        }
        error("unexpected '" + std::string(1, s_[i_]) + "'");
    }

    FieldDescriptor k_;
    const std::string& s_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline GWElement parse_gw(const FieldDescriptor& k, const std::string& text) {
    return detail::GWParser(k, text).run();
}

// ---------------------------------------------------------------------------

/// Outcome of solving beta * X = Y for beta in GW(R) given only rank and
/// signature of X and Y.
struct ParitySolution {
    bool satisfiable = false;
    long long rank = 0;
    long long signature = 0;
    std::string reason;
};

inline ParitySolution solve_beta_rank_signature(long long rank_x, long long sig_x, long long rank_y, long long sig_y) {
    ParitySolution s;
    auto need = [&](long long a, long long b, long long& out, const char* what) {
        if (a == 0) {
            if (b != 0) {
                s.reason = std::string(what) + " of X is zero but that of Y is not";
                return false;
            }
            out = 0;
            return true;
        }
        if (b % a != 0) {
            s.reason = std::string(what) + " of Y is not a multiple of that of X";
            return false;
        }
        out = b / a;
        return true;
    };
    long long r = 0, g = 0;
    if (!need(rank_x, rank_y, r, "rank") || !need(sig_x, sig_y, g, "signature")) return s;
    if (sig_x == 0 && rank_x != 0) g = r % 2 == 0 ? 0 : 1;  // free signature: pick one of the right parity
    if (rank_x == 0 && sig_x != 0) r = g;
    if ((r - g) % 2 != 0) {
        s.reason = "beta would need rank " + std::to_string(r) + " and signature " + std::to_string(g) +
                   ", but rank and signature always have the same parity";
        return s;
    }
    s.satisfiable = true;
    s.rank = r;
    s.signature = g;
    return s;
}

}  // namespace gwchi

#endif
