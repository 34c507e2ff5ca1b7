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

#ifndef GWCHI_SCALARS_HPP
#define GWCHI_SCALARS_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <random>
#include <string>

#include "error.hpp"

namespace gwchi {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

class Rat;
class ModP;

/// The field of rational numbers. Stateless.
struct RationalField {
    using element_type = Rat;
    Rat zero() const;
    Rat one() const;
    Rat from_int(long long v) const;
    Rat from_rational(const Rational& q) const;
    std::uint64_t characteristic() const { return 0; }
    Integer size() const { return 0; }
    bool is_finite() const { return false; }
    Rat random(std::mt19937_64& rng) const;
    bool operator==(const RationalField&) const { return true; }
};

/// Exact rational scalar.
class Rat {
   public:
    using Field = RationalField;

    Rat() = default;
    Rat(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    explicit Rat(Rational v) : v_(std::move(v)) {}

    const Rational& value() const { return v_; }
    Field field() const { return {}; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rat inverse() const {
        if (is_zero()) fail(ErrorKind::domain, "division-by-zero", "division by zero in Q");
        return Rat(Rational(1) / v_);
    }

    Rat operator-() const { return Rat(Rational(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) fail(ErrorKind::domain, "division-by-zero", "division by zero in Q");
        v_ /= o.v_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }

    std::string to_string() const { return v_.str(); }

   private:
    Rational v_;
};

inline Rat RationalField::zero() const { return Rat(0); }
inline Rat RationalField::one() const { return Rat(1); }
inline Rat RationalField::from_int(long long v) const { return Rat(v); }
inline Rat RationalField::from_rational(const Rational& q) const { return Rat(q); }
inline Rat RationalField::random(std::mt19937_64& rng) const {
    return Rat(static_cast<long long>(rng() % 19) - 9);
}

/// The prime field F_p for an odd prime p < 2^31.
struct PrimeField {
    using element_type = ModP;
    std::uint64_t p = 3;

    ModP zero() const;
    ModP one() const;
    ModP from_int(long long v) const;
    ModP from_rational(const Rational& q) const;
    std::uint64_t characteristic() const { return p; }
    Integer size() const { return Integer(p); }
    bool is_finite() const { return true; }
    ModP random(std::mt19937_64& rng) const;
    bool operator==(const PrimeField& o) const { return p == o.p; }
};

/// Element of F_p stored as its least non-negative residue.
class ModP {
   public:
    using Field = PrimeField;

    ModP() = default;
    ModP(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    Field field() const { return {p_}; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    ModP pow(std::uint64_t e) const {
        std::uint64_t base = v_, acc = 1 % p_;
        while (e) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return {acc, p_};
    }
    ModP inverse() const {
        if (is_zero()) fail(ErrorKind::domain, "division-by-zero", "division by zero in F_p");
        return pow(p_ - 2);
    }

    ModP operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
    ModP& operator+=(const ModP& o) { check(o); v_ = (v_ + o.v_) % p_; return *this; }
    ModP& operator-=(const ModP& o) { check(o); v_ = (v_ + p_ - o.v_) % p_; return *this; }
    ModP& operator*=(const ModP& o) { check(o); v_ = v_ * o.v_ % p_; return *this; }
    ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
    friend ModP operator+(ModP a, const ModP& b) { return a += b; }
    friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
    friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
    friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
    friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

    std::string to_string() const { return std::to_string(v_); }

   private:
    void check(const ModP& o) const {
        if (o.p_ != p_) fail(ErrorKind::domain, "field-mismatch", "operands live in different prime fields");
    }
    std::uint64_t v_ = 0;
    std::uint64_t p_ = 3;
};

inline ModP PrimeField::zero() const { return {0, p}; }
inline ModP PrimeField::one() const { return {1, p}; }
inline ModP PrimeField::from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return {static_cast<std::uint64_t>(r), p};
}
inline ModP PrimeField::from_rational(const Rational& q) const {
    Integer num = numerator_of(q) % p, den = denominator_of(q) % p;
    if (num < 0) num += p;
    if (den == 0)
        fail(ErrorKind::domain, "bad-reduction",
             "denominator of " + q.str() + " vanishes modulo " + std::to_string(p));
    ModP n(num.convert_to<std::uint64_t>(), p), d(den.convert_to<std::uint64_t>(), p);
    return n / d;
}
inline ModP PrimeField::random(std::mt19937_64& rng) const { return {rng() % p, p}; }

}  // namespace gwchi

#endif
