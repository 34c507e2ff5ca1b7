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

#ifndef GWCHI_FACTOR_HPP
#define GWCHI_FACTOR_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "error.hpp"
#include "number_theory.hpp"
#include "poly.hpp"
#include "scalars.hpp"
#include "tower.hpp"

namespace gwchi {

struct FactorOptions {
    std::uint64_t seed = 1;
    int max_degree = 64;  // hard cap for factorization over Q
};

template <class E>
struct Factor {
    Poly<E> poly;  // monic irreducible
    int multiplicity = 1;
};

template <class E>
std::vector<Factor<E>> factor(const Poly<E>& f, const FactorOptions& opt = {});

// ---------------------------------------------------------------------------
// Squarefree decomposition

/// Yun's algorithm (characteristic zero). Returns monic squarefree parts with multiplicities.
template <class E>
std::vector<Factor<E>> squarefree_char0(const Poly<E>& f) {
    std::vector<Factor<E>> out;
    Poly<E> a = f.monic();
    if (a.degree() < 1) return out;
    Poly<E> d0 = a.derivative();
    Poly<E> g = gcd(a, d0);
    Poly<E> b = a / g, c = d0 / g;
    Poly<E> d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        Poly<E> ai = gcd(b, d);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        if (ai.degree() > 0) out.push_back({ai.monic(), i});
    }
    return out;
}

/// x -> x^{q/p} on coefficients, applied to a polynomial in x^p.
template <class E>
Poly<E> pth_root(const Poly<E>& f) {
    const auto& F = f.coeff_field();
    const std::uint64_t p = F.characteristic();
    Integer e = F.size() / p;
    std::vector<E> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(pow(f.coeffs()[i], e));
    return Poly<E>(F, std::move(c));
}

/// Squarefree decomposition over a finite field.
template <class E>
std::vector<Factor<E>> squarefree_finite(const Poly<E>& f0) {
    std::vector<Factor<E>> out;
    Poly<E> f = f0.monic();
    if (f.degree() < 1) return out;
    const int p = static_cast<int>(f.coeff_field().characteristic());
    Poly<E> g = f.derivative();
    if (g.is_zero()) {
        for (auto& [h, e] : squarefree_finite(pth_root(f))) out.push_back({h, e * p});
        return out;
    }
    Poly<E> c = gcd(f, g), w = f / c;
    for (int i = 1; w.degree() > 0; ++i) {
        Poly<E> y = gcd(w, c);
        Poly<E> fac = w / y;
        if (fac.degree() > 0) out.push_back({fac.monic(), i});
        w = y;
        c = c / y;
    }
    if (c.degree() > 0)
        for (auto& [h, e] : squarefree_finite(pth_root(c))) out.push_back({h, e * p});
    return out;
}

// ---------------------------------------------------------------------------
// Finite fields: distinct-degree and equal-degree splitting

template <class E>
std::vector<std::pair<Poly<E>, int>> distinct_degree(Poly<E> f) {
    const auto& F = f.coeff_field();
    const Integer q = F.size();
    std::vector<std::pair<Poly<E>, int>> out;
    Poly<E> x = Poly<E>::x(F), h = x % f;
    for (int i = 1; f.degree() >= 2 * i; ++i) {
        h = powmod(h, q, f);
        Poly<E> g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.push_back({g, i});
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back({f.monic(), f.degree()});
    return out;
}

template <class E>
void equal_degree(const Poly<E>& f, int d, std::mt19937_64& rng, std::vector<Poly<E>>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const auto& F = f.coeff_field();
    Integer qd = 1;
    for (int i = 0; i < d; ++i) qd *= F.size();
    const Integer e = (qd - 1) / 2;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<E> c;
        for (int i = 0; i < f.degree(); ++i) c.push_back(F.random(rng));
        Poly<E> a(F, std::move(c));
        if (a.degree() < 1) continue;
        Poly<E> g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
        Poly<E> b = powmod(a, e, f) - Poly<E>(F, {F.one()});
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
    fail(ErrorKind::capacity, "equal-degree-split", "equal-degree splitting did not converge");
}

template <class E>
std::vector<Factor<E>> factor_finite(const Poly<E>& f, const FactorOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::vector<Factor<E>> out;
    for (const auto& [part, mult] : squarefree_finite(f)) {
        for (const auto& [block, d] : distinct_degree(part)) {
            std::vector<Poly<E>> pieces;
            equal_degree(block, d, rng, pieces);
            for (auto& pc : pieces) out.push_back({pc, mult});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integers: Zassenhaus (mod p, Hensel lifting, subset recombination)

namespace zx {

using ZPoly = std::vector<Integer>;  // low degree first

inline void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Integer mods(Integer a, const Integer& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}
inline Integer symmetric(Integer a, const Integer& m) {
    a = mods(a, m);
    if (2 * a > m) a -= m;
    return a;
}
inline ZPoly reduce(ZPoly a, const Integer& m) {
    for (auto& c : a) c = mods(c, m);
    trim(a);
    return a;
}
inline ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}
inline ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}
inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}
inline ZPoly scale(ZPoly a, const Integer& s) {
    for (auto& c : a) c *= s;
    trim(a);
    return a;
}
/// Division by a monic polynomial modulo m.
inline std::pair<ZPoly, ZPoly> divmod_monic(ZPoly a, const ZPoly& b, const Integer& m) {
    a = reduce(std::move(a), m);
    if (deg(a) < deg(b)) return {{}, a};
    const int db = deg(b);
    ZPoly q(a.size() - b.size() + 1, 0);
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
        Integer c = mods(a[k + db], m);
        q[k] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[k + j] = mods(a[k + j] - c * b[j], m);
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, reduce(a, m)};
}

inline Poly<ModP> to_modp(const ZPoly& a, std::uint64_t p) {
    PrimeField F{p};
    std::vector<ModP> c;
    for (const auto& x : a) c.push_back(F.from_int(mods(x, p).convert_to<long long>()));
    return Poly<ModP>(F, std::move(c));
}
inline ZPoly from_modp(const Poly<ModP>& a) {
    ZPoly r;
    for (const auto& c : a.coeffs()) r.push_back(Integer(c.value()));
    return r;
}

inline Integer content(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a) g = gcd(g, c);
    return g;
}
inline ZPoly primitive(ZPoly a) {
    Integer g = content(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

/// Exact division over Z; false if b does not divide a.
inline bool divides(const ZPoly& a, const ZPoly& b, ZPoly& quo) {
    ZPoly r = a;
    if (deg(r) < deg(b)) return r.empty();
    const int db = deg(b);
    quo.assign(r.size() - b.size() + 1, 0);
    for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
        if (r[k + db] % b.back() != 0) return false;
        Integer c = r[k + db] / b.back();
        quo[k] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[k + j] -= c * b[j];
    }
    for (const auto& c : r)
        if (c != 0) return false;
    trim(quo);
    return true;
}

/// One quadratic Hensel step: f = g*h mod m (h monic), s*g + t*h = 1 mod m,
/// lifted to modulus m2 (a divisor of m^2 that is a multiple of m).
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m2) {
    ZPoly e = reduce(sub(f, mul(g, h)), m2);
    auto [q, r] = divmod_monic(mul(s, e), h, m2);
    ZPoly g2 = reduce(add(add(g, mul(t, e)), mul(q, g)), m2);
    ZPoly h2 = reduce(add(h, r), m2);
    ZPoly b = reduce(sub(add(mul(s, g2), mul(t, h2)), ZPoly{1}), m2);
    auto [c, d] = divmod_monic(mul(s, b), h2, m2);
    s = reduce(sub(s, d), m2);
    t = reduce(sub(sub(t, mul(t, b)), mul(c, g2)), m2);
    g = std::move(g2);
    h = std::move(h2);
}

/// Lifts monic modular factors of f (mod p) to monic factors mod P = p^k.
inline void multifactor_lift(const ZPoly& f, const std::vector<ZPoly>& facs, std::size_t lo, std::size_t hi,
                             std::uint64_t p, const Integer& P, std::vector<ZPoly>& out) {
    if (hi - lo == 1) {
        Integer lc = mods(f.back(), P);
        Integer inv;
        mpz_invert(inv.backend().data(), lc.backend().data(), P.backend().data());
        out.push_back(reduce(scale(f, inv), P));
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    Poly<ModP> gp = to_modp(ZPoly{f.back()}, p), hp = to_modp(ZPoly{1}, p);
    for (std::size_t i = lo; i < mid; ++i) gp *= to_modp(facs[i], p);
    for (std::size_t i = mid; i < hi; ++i) hp *= to_modp(facs[i], p);
    auto [gg, sp, tp] = ext_gcd(gp, hp);
    if (gg.degree() != 0) fail(ErrorKind::internal_check, "hensel", "modular factors are not coprime");
    ZPoly g = from_modp(gp), h = from_modp(hp), s = from_modp(sp), t = from_modp(tp);
    Integer m = p;
    while (m < P) {
        Integer m2 = m * m;
        if (m2 > P) m2 = P;
        hensel_step(f, g, h, s, t, m2);
        m = m2;
    }
    multifactor_lift(g, facs, lo, mid, p, P, out);
    multifactor_lift(h, facs, mid, hi, p, P, out);
}

/// Factors a primitive squarefree integer polynomial of positive degree.
inline std::vector<ZPoly> zassenhaus(const ZPoly& f, const FactorOptions& opt) {
    if (deg(f) > opt.max_degree)
        fail(ErrorKind::capacity, "factorization-capacity",
             "degree " + std::to_string(deg(f)) + " exceeds the factorization bound " +
                 std::to_string(opt.max_degree));
    if (deg(f) <= 1) return {f};
    // Choose a good prime with few modular factors.
    std::uint64_t best_p = 0;
    std::vector<ZPoly> best;
    int tried = 0;
    for (std::uint64_t p = 3; tried < 6 && p < 100000; p += 2) {
        if (!is_prime(p) || mods(f.back(), p) == 0) continue;
        Poly<ModP> fp = to_modp(f, p);
        if (gcd(fp, fp.derivative()).degree() != 0) continue;
        ++tried;
        FactorOptions o = opt;
        std::vector<ZPoly> fs;
        for (auto& fc : factor_finite(fp, o)) fs.push_back(from_modp(fc.poly));
        if (best_p == 0 || fs.size() < best.size()) {
            best_p = p;
            best = std::move(fs);
        }
        if (best.size() == 1) return {f};
    }
    if (best_p == 0) fail(ErrorKind::capacity, "no-good-prime", "no prime of good reduction found");
    // Mignotte-type bound on coefficients of lc(f) * (monic factor).
    Integer norm2 = 0, lc = abs(f.back());
    for (const auto& c : f) norm2 += c * c;
    Integer bound = (sqrt(norm2) + 1) * lc;
    for (int i = 0; i < deg(f); ++i) bound *= 2;
    Integer P = best_p;
    while (P <= 2 * bound) P *= best_p;
    std::vector<ZPoly> lifted;
    multifactor_lift(f, best, 0, best.size(), best_p, P, lifted);

    std::vector<ZPoly> result;
    ZPoly rest = f;
    std::vector<ZPoly> pool = lifted;
    for (std::size_t s = 1; 2 * s <= pool.size();) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly g{rest.back()};
            for (auto i : idx) g = reduce(mul(g, pool[i]), P);
            for (auto& c : g) c = symmetric(c, P);
            trim(g);
            ZPoly cand = primitive(g), quo;
            if (divides(rest, cand, quo)) {
                result.push_back(cand);
                rest = quo;
                std::vector<ZPoly> next;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
                pool = std::move(next);
                found = true;
                break;
            }
            // next combination
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == pool.size() - s + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (deg(rest) > 0) result.push_back(primitive(rest));
    return result;
}

}  // namespace zx

inline std::vector<Factor<Rat>> factor_rational(const Poly<Rat>& f, const FactorOptions& opt) {
    std::vector<Factor<Rat>> out;
    RationalField Q;
    for (const auto& [part, mult] : squarefree_char0(f)) {
        Integer den = 1;
        for (const auto& c : part.coeffs()) den = lcm(den, denominator_of(c.value()));
        zx::ZPoly z;
        for (const auto& c : part.coeffs()) z.push_back(numerator_of(c.value() * Rational(den)));
        for (const auto& g : zx::zassenhaus(zx::primitive(z), opt)) {
            std::vector<Rat> c;
            for (const auto& x : g) c.push_back(Rat(Rational(x)));
            out.push_back({Poly<Rat>(Q, std::move(c)).monic(), mult});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Towers over Q: Trager's norm method

/// Norm_{L[x]/L'[x]} of g, where L = L'[v]/(m) is the top stage of g's field.
template <class K>
Poly<TowerElem<K>> stage_norm(const Poly<TowerElem<K>>& g) {
    const Tower<K>& L = g.coeff_field();
    Tower<K> par = L.parent();
    PolyRing<TowerElem<K>> ring{par};
    std::vector<Poly<TowerElem<K>>> mcoef, gcoef;
    const Poly<TowerElem<K>> mp = L.minpoly();
    for (const auto& c : mp.coeffs()) mcoef.push_back(Poly<TowerElem<K>>::constant(c));
    // G(v, x) = sum_i (sum_k chunk_i(g_k) x^k) v^i
    for (std::size_t i = 0; i < L.stage_degree(); ++i) {
        std::vector<TowerElem<K>> cx;
        for (const auto& gk : g.coeffs()) cx.push_back(gk.chunk(i));
        gcoef.push_back(Poly<TowerElem<K>>(par, std::move(cx)));
    }
    while (!gcoef.empty() && gcoef.back().is_zero()) gcoef.pop_back();
    return sylvester_resultant(mcoef, gcoef, ring);
}

template <class K>
std::vector<Poly<TowerElem<K>>> trager_squarefree(const Poly<TowerElem<K>>& g, const FactorOptions& opt) {
    if (g.degree() <= 1) return {g.monic()};
    const Tower<K>& L = g.coeff_field();
    Tower<K> par = L.parent();
    const TowerElem<K> v = L.generator();
    for (long long s : {0LL, 1LL, -1LL, 2LL, -2LL, 3LL, -3LL, 4LL, -4LL, 5LL, -5LL, 7LL, -7LL, 11LL, -11LL}) {
        TowerElem<K> shift = L.from_int(s) * v;
        Poly<TowerElem<K>> gs = g.shift(shift);
        Poly<TowerElem<K>> n = stage_norm(gs);
        if (gcd(n, n.derivative()).degree() != 0) continue;
        std::vector<Poly<TowerElem<K>>> out;
        for (const auto& fc : factor(n, opt)) {
            Poly<TowerElem<K>> h = gcd(gs, embed_poly(L, fc.poly));
            if (h.degree() > 0) out.push_back(h.shift(-shift).monic());
        }
        return out;
    }
    fail(ErrorKind::capacity, "trager-shift", "no shift yields a squarefree norm");
}

template <class K>
std::vector<Factor<TowerElem<K>>> factor_tower_char0(const Poly<TowerElem<K>>& f, const FactorOptions& opt) {
    const Tower<K>& L = f.coeff_field();
    std::vector<Factor<TowerElem<K>>> out;
    if (L.depth() == 0) {
        for (const auto& fc : factor_rational(lower_poly(f), opt)) out.push_back({lift_poly(L, fc.poly), fc.multiplicity});
        return out;
    }
    if (f.degree() * static_cast<int>(L.degree()) > opt.max_degree)
        fail(ErrorKind::capacity, "factorization-capacity",
             "norm degree " + std::to_string(f.degree() * static_cast<int>(L.degree())) +
                 " exceeds the factorization bound " + std::to_string(opt.max_degree));
    for (const auto& [part, mult] : squarefree_char0(f))
        for (auto& h : trager_squarefree(part, opt)) out.push_back({h, mult});
    return out;
}

// ---------------------------------------------------------------------------

template <class E>
void sort_factors(std::vector<Factor<E>>& fs) {
    std::stable_sort(fs.begin(), fs.end(), [](const Factor<E>& a, const Factor<E>& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
        return a.poly.to_string() < b.poly.to_string();
    });
}

/// Complete factorization into monic irreducibles with multiplicities.
template <class E>
std::vector<Factor<E>> factor(const Poly<E>& f, const FactorOptions& opt) {
    if (f.is_zero()) fail(ErrorKind::domain, "zero-polynomial", "cannot factor the zero polynomial");
    std::vector<Factor<E>> out;
    if (f.degree() == 0) return out;
    if constexpr (std::is_same_v<E, Rat>) {
        out = factor_rational(f, opt);
    } else if constexpr (std::is_same_v<E, TowerElem<Rat>>) {
        out = factor_tower_char0(f, opt);
    } else {
        if (!f.coeff_field().is_finite())
            fail(ErrorKind::domain, "unsupported-field", "no factorization algorithm for this field");
        out = factor_finite(f, opt);
    }
    sort_factors(out);
    return out;
}

template <class E>
bool is_irreducible(const Poly<E>& f, const FactorOptions& opt = {}) {
    if (f.degree() < 1) return false;
    auto fs = factor(f, opt);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

/// Adjoins a root of an irreducible polynomial, verifying irreducibility.
template <class K>
Tower<K> make_extension(const Tower<K>& t, const std::string& var, const Poly<TowerElem<K>>& minpoly,
                        const FactorOptions& opt = {}) {
    if (!is_irreducible(minpoly, opt))
        fail(ErrorKind::domain, "reducible-stage",
             "stage polynomial " + minpoly.to_string(var) + " is not irreducible");
    return t.extend_unchecked(var, minpoly);
}

}  // namespace gwchi

#endif
