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

#include <gtest/gtest.h>

#include <random>

#include "gwchi/factor.hpp"
#include "gwchi/multipoly.hpp"
#include "gwchi/number_theory.hpp"
#include "gwchi/poly.hpp"
#include "gwchi/series.hpp"
#include "gwchi/tower.hpp"
#include "oracles.hpp"

using namespace gwchi;

namespace {

RationalField Q;

Poly<Rat> qpoly(std::vector<long long> c) {
    std::vector<Rat> v;
    for (auto x : c) v.emplace_back(x);
    return Poly<Rat>(Q, std::move(v));
}

Poly<ModP> fpoly(const PrimeField& F, std::vector<long long> c) {
    std::vector<ModP> v;
    for (auto x : c) v.push_back(F.from_int(x));
    return Poly<ModP>(F, std::move(v));
}

template <class E>
Poly<E> product_of(const std::vector<Factor<E>>& fs, const typename E::Field& k) {
    Poly<E> r(k, {k.one()});
    for (const auto& f : fs)
        for (int i = 0; i < f.multiplicity; ++i) r = r * f.poly;
    return r;
}

Poly<Rat> random_qpoly(std::mt19937_64& rng, int deg, long long bound = 9) {
    std::uniform_int_distribution<long long> u(-bound, bound);
    std::vector<long long> c;
    for (int i = 0; i < deg; ++i) c.push_back(u(rng));
    c.push_back(u(rng) == 0 ? 1 : 1 + (u(rng) & 3));
    return qpoly(c);
}

/// All monic polynomials of degree d over F_p, by enumeration.
std::vector<Poly<ModP>> all_monic(const PrimeField& F, int d) {
    std::vector<Poly<ModP>> out;
    std::vector<long long> c(d, 0);
    for (;;) {
        auto v = c;
        v.push_back(1);
        out.push_back(fpoly(F, v));
        int i = 0;
        while (i < d && ++c[i] == static_cast<long long>(F.p)) c[i++] = 0;
        if (i == d) break;
    }
    return out;
}

bool irreducible_by_search(const Poly<ModP>& f, const PrimeField& F) {
    for (int d = 1; 2 * d <= f.degree(); ++d)
        for (const auto& g : all_monic(F, d))
            if (divmod(f, g).second.is_zero()) return false;
    return true;
}

}  // namespace

TEST(Scalars, RationalFieldArithmetic) {
    Rat a(Rational(3, 4)), b(-2);
    EXPECT_EQ((a * b).value(), Rational(-3, 2));
    EXPECT_EQ((a / b).value(), Rational(-3, 8));
    EXPECT_EQ((a * a.inverse()).value(), Rational(1));
    EXPECT_THROW(Rat(0).inverse(), Error);
}

TEST(Scalars, PrimeFieldInverseMatchesSearch) {
    for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 101u}) {
        PrimeField F{p};
        for (std::uint64_t a = 1; a < p; ++a) {
            std::uint64_t inv = 0;
            for (std::uint64_t x = 1; x < p; ++x)
                if (a * x % p == 1) inv = x;
            EXPECT_EQ(F.from_int(static_cast<long long>(a)).inverse().value(), inv);
        }
    }
}

TEST(NumberTheory, SquarefreePartAndSquareClass) {
    EXPECT_EQ(squarefree_part(Integer(72)), Integer(2));
    EXPECT_EQ(squarefree_part(Integer(-12)), Integer(-3));
    EXPECT_EQ(rational_square_class(Rational(-12, 5)), Integer(-15));
    EXPECT_EQ(rational_square_class(Rational(9, 4)), Integer(1));
}

TEST(NumberTheory, LegendreMatchesEulerCriterionSearch) {
    for (long long p : {3, 5, 7, 11, 13, 17, 101}) {
        for (long long a = 1; a < p; ++a) {
            bool sq = false;
            for (long long x = 1; x < p; ++x)
                if (x * x % p == a) sq = true;
            EXPECT_EQ(legendre(Integer(a), Integer(p)), sq ? 1 : -1) << a << " mod " << p;
        }
    }
}

TEST(NumberTheory, HilbertSymbolMatchesLocalSolubilitySearch) {
    // Squarefree a, b; primitive solutions modulo p^3 (p odd) or 2^5.
    const std::vector<long long> vals{-15, -10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 15};
    for (long long p : {3LL, 5LL}) {
        for (long long a : vals)
            for (long long b : vals) {
                if (std::abs(a) > 7 || std::abs(b) > 7) continue;
                EXPECT_EQ(hilbert_symbol(a, b, p), oracle::hilbert_search(a, b, p, p == 3 ? 3 : 2))
                    << "(" << a << "," << b << ")_" << p;
            }
    }
    for (long long a : vals)
        for (long long b : vals)
            if (std::abs(a) <= 7 && std::abs(b) <= 7)
                EXPECT_EQ(hilbert_symbol(a, b, 2), oracle::hilbert_search(a, b, 2, 4)) << "(" << a << "," << b << ")_2";
}

TEST(NumberTheory, HilbertProductFormula) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        const Rational a = oracle::random_rational(rng, 40), b = oracle::random_rational(rng, 40);
        int prod = hilbert_symbol(a, b, 0);
        std::set<Integer> primes{2};
        for (const auto& p : prime_support(a)) primes.insert(p);
        for (const auto& p : prime_support(b)) primes.insert(p);
        for (const auto& p : primes) prod *= hilbert_symbol(a, b, p);
        EXPECT_EQ(prod, 1) << a << ", " << b;
    }
}

TEST(Poly, DivisionIdentityFuzz) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        auto a = random_qpoly(rng, 6), b = random_qpoly(rng, 3);
        auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(Poly, ExtendedGcdBezoutFuzz) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 40; ++i) {
        auto c = random_qpoly(rng, 1);
        auto a = random_qpoly(rng, 3) * c, b = random_qpoly(rng, 2) * c;
        auto [g, s, t] = ext_gcd(a, b);
        EXPECT_EQ(s * a + t * b, g);
        EXPECT_TRUE(divmod(a, g).second.is_zero());
        EXPECT_TRUE(divmod(b, g).second.is_zero());
        EXPECT_GE(g.degree(), 1);
    }
}

TEST(Poly, ShiftIsComposition) {
    auto f = qpoly({1, -2, 0, 3});
    auto shifted = f.shift(Rat(2));
    EXPECT_EQ(shifted, f.compose(qpoly({2, 1})));
}

TEST(Poly, ResultantMatchesRootProductOverFp) {
    // Res(f, g) = lc(f)^deg g * prod_{f(r)=0} g(r) for f split with simple roots.
    PrimeField F{13};
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> u(0, 12);
    for (int trial = 0; trial < 30; ++trial) {
        std::set<long long> roots;
        while (roots.size() < 3) roots.insert(u(rng));
        const long long lc = 1 + u(rng) % 12;
        Poly<ModP> f = fpoly(F, {lc});
        for (auto r : roots) f = f * fpoly(F, {-r, 1});
        Poly<ModP> g = fpoly(F, {u(rng), u(rng), u(rng), 1 + u(rng) % 12});
        ModP expect = F.from_int(lc).pow(static_cast<std::uint64_t>(g.degree()));
        for (auto r : roots) expect *= g(F.from_int(r));
        EXPECT_EQ(resultant(f, g), expect);
        std::vector<ModP> fc = f.coeffs(), gc = g.coeffs();
        EXPECT_EQ(sylvester_resultant(fc, gc, F), expect);
    }
}

TEST(Factor, CyclotomicExample) {
    // x^6 + 1 = (x^2 + 1)(x^4 - x^2 + 1).
    auto fs = factor(qpoly({1, 0, 0, 0, 0, 0, 1}));
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(fs[0].poly, qpoly({1, 0, 1}));
    EXPECT_EQ(fs[1].poly, qpoly({1, 0, -1, 0, 1}));
}

TEST(Factor, KnownIrreducibleProductsOverQ) {
    // Products of known irreducibles (cyclotomic, Eisenstein, Swinnerton-Dyer).
    const std::vector<Poly<Rat>> irr{
        qpoly({-2, 1}),          qpoly({1, 1, 1}),         qpoly({-2, 0, 0, 1}),     qpoly({1, 0, -10, 0, 1}),
        qpoly({3, 0, 0, 0, 1}),  qpoly({1, -1, 1, -1, 1}), qpoly({-6, 3, 0, 0, 0, 1}), qpoly({2, 0, 1})};
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        std::map<std::size_t, int> pick;
        for (int j = 0; j < 3; ++j) ++pick[rng() % irr.size()];
        Poly<Rat> f(Q, {Rat(1)});
        for (auto [i, m] : pick)
            for (int r = 0; r < m; ++r) f = f * irr[i];
        auto fs = factor(f * qpoly({7}));
        ASSERT_EQ(fs.size(), pick.size());
        for (auto [i, m] : pick) {
            bool found = false;
            for (const auto& x : fs)
                if (x.poly == irr[i].monic() && x.multiplicity == m) found = true;
            EXPECT_TRUE(found) << irr[i].to_string("x");
        }
    }
}

TEST(Factor, SwinnertonDyerIsIrreducible) {
    // Splits into quadratics modulo every prime, so recombination must work.
    EXPECT_TRUE(is_irreducible(qpoly({1, 0, -10, 0, 1})));
    EXPECT_FALSE(is_irreducible(qpoly({-1, 0, 0, 0, 0, 0, 0, 0, 1})));
}

TEST(Factor, FiniteFieldFactorsAreIrreducibleBySearch) {
    for (std::uint64_t p : {3u, 5u, 7u}) {
        PrimeField F{p};
        std::mt19937_64 rng(p);
        std::uniform_int_distribution<long long> u(0, static_cast<long long>(p) - 1);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<long long> c;
            for (int i = 0; i < 6; ++i) c.push_back(u(rng));
            c.push_back(1);
            Poly<ModP> f = fpoly(F, c);
            if (trial % 3 == 0) f = f * f;  // force repeated factors
            auto fs = factor(f);
            EXPECT_EQ(product_of(fs, F), f.monic());
            for (const auto& x : fs) EXPECT_TRUE(irreducible_by_search(x.poly, F)) << x.poly.to_string("x");
        }
    }
}

TEST(Factor, InseparableCharacteristicPower) {
    PrimeField F{3};
    Poly<ModP> g = fpoly(F, {1, 2, 0, 1});  // x^3 + 2x + 1
    auto fs = factor(g * g * g);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].multiplicity, 3);
    EXPECT_EQ(fs[0].poly, g);
}

TEST(Factor, CapacityBound) {
    FactorOptions opt;
    opt.max_degree = 4;
    try {
        factor(qpoly({1, 0, 0, 0, 0, 0, 1}), opt);
        FAIL() << "expected a capacity error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::capacity);
    }
}

TEST(Tower, FieldAxiomsFuzz) {
    auto T = Tower<Rat>::over(Q);
    auto Li = make_extension(T, "i", lift_poly(T, qpoly({1, 0, 1})));
    // w^2 + w + 1 over Q(i)
    auto L = make_extension(Li, "w", lift_poly(Li, qpoly({1, 1, 1})));
    std::mt19937_64 rng(9);
    auto rnd = [&] {
        std::vector<Rat> c;
        for (std::size_t k = 0; k < L.degree(); ++k) c.emplace_back(oracle::random_rational(rng, 5));
        return TowerElem<Rat>(L, c);
    };
    for (int i = 0; i < 30; ++i) {
        auto a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * a.inverse(), L.one());
    }
    auto i = L.embed(Li.generator()), w = L.generator();
    EXPECT_EQ(i * i, -L.one());
    EXPECT_EQ(w * w * w, L.one());
}

TEST(Tower, TraceMatchesMultiplicationMatrix) {
    // Independent trace: sum of diagonal entries of x * basis_j in coordinates.
    auto T = Tower<Rat>::over(Q);
    auto L1 = make_extension(T, "a", lift_poly(T, qpoly({-2, 0, 0, 1})));
    auto L = make_extension(L1, "b", lift_poly(L1, qpoly({1, 0, 1})));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        std::vector<Rat> c;
        for (std::size_t k = 0; k < L.degree(); ++k) c.emplace_back(oracle::random_rational(rng, 6));
        TowerElem<Rat> x(L, c);
        Rational tr = 0;
        for (std::size_t j = 0; j < L.degree(); ++j) {
            std::vector<Rat> e(L.degree(), Rat(0));
            e[j] = Rat(1);
            tr += (x * TowerElem<Rat>(L, e)).coeffs()[j].value();
        }
        EXPECT_EQ(L.trace_to_base(x).value(), tr);
    }
}

TEST(Tower, FactorOverGaussianField) {
    auto T = Tower<Rat>::over(Q);
    auto L = make_extension(T, "i", lift_poly(T, qpoly({1, 0, 1})));
    auto fs = factor(lift_poly(L, qpoly({1, 0, 1})));
    ASSERT_EQ(fs.size(), 2u);
    for (const auto& f : fs) EXPECT_EQ(f.poly.degree(), 1);
    auto g = factor(lift_poly(L, qpoly({1, 0, 0, 0, 1})));  // x^4 + 1 = (x^2 - i)(x^2 + i)
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].poly.degree(), 2);
    EXPECT_EQ(product_of(g, L), lift_poly(L, qpoly({1, 0, 0, 0, 1})));
}

TEST(Tower, ReducibleStageRejected) {
    auto T = Tower<Rat>::over(Q);
    EXPECT_THROW(make_extension(T, "z", lift_poly(T, qpoly({-1, 0, 1}))), Error);
}

TEST(Tower, FiniteFieldTowerFactorization) {
    PrimeField F{5};
    auto T = Tower<ModP>::over(F);
    auto L = make_extension(T, "a", lift_poly(T, fpoly(F, {2, 0, 1})));  // F_25
    auto f = lift_poly(L, fpoly(F, {1, 0, 0, 0, 1}));                   // x^4 + 1 splits over F_25
    auto fs = factor(f);
    EXPECT_EQ(product_of(fs, L), f);
    for (const auto& x : fs) EXPECT_EQ(x.poly.degree(), 1);
}

TEST(MultiPoly, FermatDerivative) {
    const std::vector<std::string> V{"X0", "X1", "X2"};
    MultiPoly<Rat> F(Q, V);
    for (std::size_t i = 0; i < 3; ++i) {
        Exponent e(3, 0);
        e[i] = 6;
        F.add_term(e, Rat(1));
    }
    EXPECT_EQ(F.derivative(2).to_string(), "6*X2^5");
    EXPECT_TRUE(F.is_homogeneous());
    EXPECT_EQ(F.total_degree(), 6);
    EXPECT_EQ(F.dehomogenize(0).to_string(), "x1^6 + x2^6 + 1");
}

TEST(MultiPoly, EvaluationIsRingHomomorphismFuzz) {
    const std::vector<std::string> V{"x", "y"};
    std::mt19937_64 rng(8);
    auto rnd = [&] {
        MultiPoly<Rat> f(Q, V);
        for (int i = 0; i < 4; ++i)
            f.add_term(Exponent{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)},
                       Rat(oracle::random_rational(rng, 5)));
        return f;
    };
    for (int t = 0; t < 30; ++t) {
        auto f = rnd(), g = rnd();
        std::vector<Rat> pt{Rat(oracle::random_rational(rng, 4)), Rat(oracle::random_rational(rng, 4))};
        EXPECT_EQ((f * g).evaluate(pt), f.evaluate(pt) * g.evaluate(pt));
        EXPECT_EQ((f + g).evaluate(pt), f.evaluate(pt) + g.evaluate(pt));
    }
}

TEST(Series, SquareRootBinomialCoefficients) {
    // y^2 = 1 + t through (1, 0): y = sum binom(1/2, k) t^k.
    MultiPoly<Rat> f(Q, {"y", "t"});
    f.add_term(Exponent{2, 0}, Rat(1));
    f.add_term(Exponent{0, 1}, Rat(-1));
    f.add_term(Exponent{0, 0}, Rat(-1));
    auto y = hensel_parametrize(f, 0, 1, Rat(1), Rat(0), 8);
    Rational binom = 1;
    for (int k = 0; k < 8; ++k) {
        EXPECT_EQ(y.coeff(k).value(), binom) << k;
        binom = binom * (Rational(1, 2) - k) / (k + 1);
    }
}

TEST(Series, HenselResidualVanishesFuzz) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 20; ++t) {
        // f = x + x^3 * c1 + t * c2 * x^2 + c3 * t^2 - (value making (0,0) a point)
        MultiPoly<Rat> f(Q, {"x", "t"});
        f.add_term(Exponent{1, 0}, Rat(1 + static_cast<long long>(rng() % 4)));
        f.add_term(Exponent{3, 0}, Rat(oracle::random_rational(rng, 5)));
        f.add_term(Exponent{2, 1}, Rat(oracle::random_rational(rng, 5)));
        f.add_term(Exponent{0, 2}, Rat(oracle::random_rational(rng, 5)));
        const int N = 10;
        auto x = hensel_parametrize(f, 0, 1, Rat(0), Rat(0), N);
        auto r = compose(f, {x, TruncatedSeries<Rat>::shifted_parameter(Rat(0), N)});
        EXPECT_FALSE(r.order().has_value());
    }
}

TEST(Series, SingularPointRejected) {
    MultiPoly<Rat> f(Q, {"x", "t"});
    f.add_term(Exponent{2, 0}, Rat(1));
    f.add_term(Exponent{0, 3}, Rat(-1));
    EXPECT_THROW(hensel_parametrize(f, 0, 1, Rat(0), Rat(0), 6), Error);
}
