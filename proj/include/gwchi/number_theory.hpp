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

#ifndef GWCHI_NUMBER_THEORY_HPP
#define GWCHI_NUMBER_THEORY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "error.hpp"
#include "scalars.hpp"

namespace gwchi {

namespace detail {

inline Integer powmod(Integer base, Integer e, const Integer& m) {
    Integer acc = 1;
    base %= m;
    if (base < 0) base += m;
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return acc;
}

inline bool miller_rabin_round(const Integer& n, const Integer& a, const Integer& d, unsigned s) {
    Integer x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Miller-Rabin with the first twelve prime bases; deterministic below 3.3e24.
inline bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Integer d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : small)
        if (!detail::miller_rabin_round(n, a, d, s)) return false;
    return true;
}

inline bool is_prime(std::uint64_t n) { return is_probable_prime(Integer(n)); }

namespace detail {

inline Integer pollard_brent(const Integer& n, unsigned long long seed) {
    if ((n & 1) == 0) return 2;
    Integer y = seed % n, c = (seed * 7 + 1) % n, g = 1, r = 1, q = 1, x, ys;
    const unsigned long long m = 128;
    unsigned long long budget = 2'000'000;
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long long i = 0; i < m && k + i < r; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
            k += m;
            if (budget < m)
                fail(ErrorKind::capacity, "integer-factorization",
                     "integer factorization budget exhausted for " + n.str());
            budget -= m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long long seed = 2;; ++seed) {
        Integer d = pollard_brent(n, seed);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

}  // namespace detail

/// Prime factorization of |n| (n != 0): trial division then Pollard-Brent.
inline std::map<Integer, int> factor_integer(Integer n) {
    if (n == 0) fail(ErrorKind::domain, "zero", "cannot factor zero");
    if (n < 0) n = -n;
    std::map<Integer, int> out;
    for (unsigned p = 2; p < 5000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    if (n > 1) detail::factor_into(n, out);
    return out;
}

/// Signed squarefree s with n = s * (square).
inline Integer squarefree_part(const Integer& n) {
    if (n == 0) fail(ErrorKind::domain, "zero", "zero has no square class");
    Integer s = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factor_integer(n))
        if (e % 2 == 1) s *= p;
    return s;
}

/// Canonical square class of a nonzero rational: the signed squarefree integer.
inline Integer rational_square_class(const Rational& q) {
    if (q == 0) fail(ErrorKind::domain, "zero", "zero has no square class");
    return squarefree_part(numerator_of(q) * denominator_of(q));
}

/// Jacobi symbol (a/n) for odd positive n.
inline int jacobi(Integer a, Integer n) {
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            Integer r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre(const Integer& a, const Integer& p) { return jacobi(a, p); }

inline std::uint64_t least_nonresidue(std::uint64_t p) {
    for (std::uint64_t a = 2; a < p; ++a)
        if (legendre(Integer(a), Integer(p)) == -1) return a;
    fail(ErrorKind::domain, "no-nonresidue", "no quadratic non-residue modulo " + std::to_string(p));
}

/// p-adic valuation of a nonzero integer.
inline int valuation(Integer n, const Integer& p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Hilbert symbol (a, b)_v for nonzero rationals. `place == 0` denotes the real place,
/// otherwise `place` must be a prime.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Integer& place) {
    if (a == 0 || b == 0) fail(ErrorKind::domain, "zero", "Hilbert symbol of zero");
    // Replacing q = n/d by n*d changes q by the square d^2.
    Integer x = numerator_of(a) * denominator_of(a);
    Integer y = numerator_of(b) * denominator_of(b);
    if (place == 0) return (x < 0 && y < 0) ? -1 : 1;
    const Integer& p = place;
    int alpha = valuation(x, p), beta = valuation(y, p);
    Integer u = x, v = y;
    for (int i = 0; i < alpha; ++i) u /= p;
    for (int i = 0; i < beta; ++i) v /= p;
    if (p == 2) {
        auto eps = [](const Integer& w) -> int {
            Integer r = w % 4;
            if (r < 0) r += 4;
            return r == 3 ? 1 : 0;
        };
        auto omega = [](const Integer& w) -> int {
            Integer r = w % 8;
            if (r < 0) r += 8;
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return e % 2 == 0 ? 1 : -1;
    }
    int sign = 1;
    if ((alpha * beta) % 2 == 1 && p % 4 == 3) sign = -sign;
    if (beta % 2 == 1) sign *= legendre(u, p);
    if (alpha % 2 == 1) sign *= legendre(v, p);
    return sign;
}

/// Primes dividing the numerator or denominator of q.
inline std::vector<Integer> prime_support(const Rational& q) {
    std::vector<Integer> out;
    for (const auto& [p, e] : factor_integer(numerator_of(q) * denominator_of(q))) out.push_back(p);
    return out;
}

}  // namespace gwchi

#endif
