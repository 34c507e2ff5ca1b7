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

#include "fixtures.hpp"
#include "gwchi/gw.hpp"
#include "oracles.hpp"

using namespace gwchi;

namespace {

const FieldDescriptor QQ = FieldDescriptor::rationals();

GWElement f(const FieldDescriptor& k, const Rational& a, long long m = 1) { return GWElement::form(k, a, m); }
GWElement H(const FieldDescriptor& k, long long m = 1) { return GWElement::hyperbolic(k, m); }


}  // namespace

TEST(GWRing, FromDiagonal) {
    EXPECT_TRUE(identical(GWElement::from_diagonal(QQ, {18}), f(QQ, 2)));
    EXPECT_TRUE(GWElement::from_diagonal(QQ, {}).is_zero());
    EXPECT_TRUE(gw_equals(GWElement::from_diagonal(QQ, {1, -1}), H(QQ)));
    EXPECT_THROW(GWElement::from_diagonal(QQ, {0}), Error);
}

TEST(GWRing, Arithmetic) {
    EXPECT_TRUE(gw_equals(f(QQ, 2) * f(QQ, 2), GWElement::one(QQ)));
    for (long long a : {-7, -1, 2, 3, 10}) EXPECT_TRUE(gw_equals(H(QQ) * f(QQ, a), H(QQ)));
    // (<3> + H)(<1> + H) = <3> + <3>H + H + 2H*H = <3> + 4H: rank 3 * 3 = 9.
    const GWElement prod = (f(QQ, 3) + H(QQ)) * (GWElement::one(QQ) + H(QQ));
    EXPECT_EQ(prod.rank(), 9);
    EXPECT_TRUE(gw_equals(prod, f(QQ, 3) + H(QQ, 4)));
    EXPECT_FALSE(gw_equals(prod, f(QQ, 3) + H(QQ, 3)));
}

TEST(GWRing, Invariants) {
    const auto h = H(QQ).invariants();
    EXPECT_EQ(h.rank, 2);
    EXPECT_EQ(*h.signature, 0);
    EXPECT_EQ(h.discriminant, Integer(-1));
    const auto k3 = (2 * GWElement::one(QQ) + H(QQ, 11)).invariants();
    EXPECT_EQ(k3.rank, 24);
    EXPECT_EQ(*k3.signature, 2);
    EXPECT_THROW(H(FieldDescriptor::prime(7)).signature(), Error);
}

TEST(GWRing, RelationTwoInstance) {
    const GWElement x = f(QQ, 1) + f(QQ, 2), y = f(QQ, 3) + f(QQ, 6);
    EXPECT_TRUE(gw_equals(x, y));
    EXPECT_EQ(x.invariants().discriminant, y.invariants().discriminant);
    // Explicit isometry (u, v) -> (u + v, u - 2v)... checked by the oracle:
    // P = [[1, 2], [1, -1]] satisfies P^T diag(1, 2) P = diag(3, 6).
    oracle::QMat D{{1, 0}, {0, 2}};
    const Rational p[2][2] = {{1, 2}, {1, -1}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Rational s = 0;
            for (int k = 0; k < 2; ++k) s += p[k][i] * D[k][k] * p[k][j];
            EXPECT_EQ(s, i != j ? Rational(0) : (i == 0 ? Rational(3) : Rational(6)));
        }
}

TEST(GWRing, TwoOnesVersusHyperbolicOverFiniteFields) {
    // <1> + <1> = H iff -1 is a square; exhaustive GL_2 search as the oracle.
    for (long long p : {3, 5, 7, 11, 13}) {
        const auto k = FieldDescriptor::prime(static_cast<std::uint64_t>(p));
        const bool iso = oracle::isometric_binary(1, 1, 1, p - 1, p);
        EXPECT_EQ(gw_equals(f(k, 1, 2), H(k)), iso) << "p = " << p;
    }
    EXPECT_TRUE(gw_equals(f(FieldDescriptor::prime(5), 1, 2), H(FieldDescriptor::prime(5))));
    EXPECT_TRUE(gw_equals(f(FieldDescriptor::prime(13), 1, 2), H(FieldDescriptor::prime(13))));
    EXPECT_FALSE(gw_equals(f(FieldDescriptor::prime(7), 1, 2), H(FieldDescriptor::prime(7))));
    EXPECT_FALSE(gw_equals(f(QQ, 1, 2), H(QQ)));
    EXPECT_TRUE(gw_equals(f(FieldDescriptor::prime(5), 2), f(FieldDescriptor::prime(5), 8)));
}

TEST(GWRing, PresentationRelationsExhaustiveOverFp) {
    for (long long p : {3, 5, 7, 11}) {
        const auto k = FieldDescriptor::prime(static_cast<std::uint64_t>(p));
        for (long long a = 1; a < p; ++a)
            for (long long b = 1; b < p; ++b) {
                for (const auto& [lhs, rhs] : fixture::gw_relations(k, a, b)) EXPECT_TRUE(gw_equals(lhs, rhs)) << a << "," << b;
                // Oracle for relation (2): an explicit isometry exists.
                if ((a + b) % p != 0)
                    EXPECT_TRUE(oracle::isometric_binary(a, b, (a + b) % p, oracle::mod(a * b % p * (a + b), p), p));
            }
    }
}

TEST(GWRing, EqualityAgreesWithIsometrySearchOverFp) {
    // Rank-2 genuine forms: gw_equals against exhaustive change of basis.
    for (long long p : {3, 5, 7}) {
        const auto k = FieldDescriptor::prime(static_cast<std::uint64_t>(p));
        for (long long a1 = 1; a1 < p; ++a1)
            for (long long a2 = a1; a2 < p; ++a2)
                for (long long b1 = 1; b1 < p; ++b1)
                    for (long long b2 = b1; b2 < p; ++b2)
                        EXPECT_EQ(gw_equals(f(k, a1) + f(k, a2), f(k, b1) + f(k, b2)),
                                  oracle::isometric_binary(a1, a2, b1, b2, p));
        for (long long a = 1; a < p; ++a)
            for (long long b = 1; b < p; ++b) EXPECT_EQ(gw_equals(f(k, a), f(k, b)), oracle::isometric_unary(a, b, p));
    }
}

TEST(GWRing, EqualityAgreesWithValueProfileOverFp) {
    std::mt19937_64 rng(21);
    for (long long p : {3, 5, 7}) {
        const auto k = FieldDescriptor::prime(static_cast<std::uint64_t>(p));
        std::uniform_int_distribution<long long> u(1, p - 1);
        for (int t = 0; t < 60; ++t) {
            std::vector<long long> x{u(rng), u(rng), u(rng)}, y{u(rng), u(rng), u(rng)};
            GWElement gx(k), gy(k);
            for (auto v : x) gx += f(k, v);
            for (auto v : y) gy += f(k, v);
            EXPECT_EQ(gw_equals(gx, gy), oracle::value_profile(x, p) == oracle::value_profile(y, p));
        }
    }
}

TEST(GWRing, PresentationRelationsFuzzedOverQ) {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) {
        const Rational a = oracle::random_rational(rng), b = oracle::random_rational(rng);
        for (const auto& [lhs, rhs] : fixture::gw_relations(QQ, a, b)) EXPECT_TRUE(gw_equals(lhs, rhs)) << a << ", " << b;
    }
}

TEST(GWRing, InequalityDetectedByHasseInvariant) {
    // <1> + <1> and <3> + <3> share rank, signature and discriminant, but 3 is
    // not a sum of two rational squares: (3, 3)_3 = -1.
    EXPECT_EQ(oracle::hilbert_search(3, 3, 3, 3), -1);
    EXPECT_FALSE(gw_equals(f(QQ, 1, 2), f(QQ, 3, 2)));
    EXPECT_TRUE(gw_equals(f(QQ, 1, 2), f(QQ, 2, 2)));
    EXPECT_TRUE(gw_equals(f(QQ, 1, 2), f(QQ, 5, 2)));
}

TEST(GWRing, RankAndSignatureAreRingHomomorphisms) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        const GWElement x = oracle::random_gw(rng, QQ), y = oracle::random_gw(rng, QQ);
        EXPECT_EQ((x + y).rank(), x.rank() + y.rank());
        EXPECT_EQ((x * y).rank(), x.rank() * y.rank());
        EXPECT_EQ((x + y).signature(), x.signature() + y.signature());
        EXPECT_EQ((x * y).signature(), x.signature() * y.signature());
    }
}

TEST(GWRing, HyperbolicAbsorbs) {
    std::mt19937_64 rng(8);
    for (const auto& k : {QQ, FieldDescriptor::prime(7), FieldDescriptor::prime(11)})
        for (int t = 0; t < 50; ++t) {
            const GWElement x = oracle::random_gw(rng, k);
            EXPECT_TRUE(gw_equals(H(k) * x, H(k, x.rank())));
        }
}

TEST(GWRing, RankSignatureParity) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t) {
        const GWElement x = oracle::random_gw(rng, QQ, 1 + static_cast<int>(t % 6));
        EXPECT_EQ(((x.rank() - x.signature()) % 2 + 2) % 2, 0);
    }
}

TEST(GWRing, ParitySolver) {
    EXPECT_FALSE(solve_beta_rank_signature(12, 4, 24, 4).satisfiable);
    EXPECT_TRUE(solve_beta_rank_signature(12, 4, 24, 8).satisfiable);
    EXPECT_EQ(solve_beta_rank_signature(12, 4, 24, 8).rank, 2);
    EXPECT_EQ(solve_beta_rank_signature(12, 4, 24, 8).signature, 2);
}

TEST(GWRing, Display) {
    EXPECT_EQ(gw_display(f(QQ, 3) + f(QQ, -3) + f(QQ, 1)), "<1> + H");
    EXPECT_EQ(gw_display(GWElement(QQ)), "0");
    EXPECT_EQ(gw_display(f(QQ, 1, 2) + f(QQ, -1)), "<1> + H");
    EXPECT_EQ(gw_display(f(QQ, 1, 2) + H(QQ, 11)), "2<1> + 11*H");
    EXPECT_EQ(gw_display(f(QQ, 1, 2) + H(QQ, 11), true), "2⟨1⟩ + 11·H");
    EXPECT_EQ(gw_display(H(QQ, -9)), "-9*H");
}

TEST(GWRing, DisplayRoundTripFuzz) {
    std::mt19937_64 rng(10);
    for (const auto& k : {QQ, FieldDescriptor::prime(5), FieldDescriptor::prime(13)})
        for (int t = 0; t < 100; ++t) {
            const GWElement x = oracle::random_gw(rng, k, 5);
            EXPECT_TRUE(gw_equals(parse_gw(k, gw_display(x)), x)) << gw_display(x);
            EXPECT_TRUE(gw_equals(parse_gw(k, gw_display(x, true)), x)) << gw_display(x, true);
        }
}

TEST(GWRing, ParserGrammar) {
    EXPECT_TRUE(gw_equals(parse_gw(QQ, "(<3> + H) * (<1> + H)"), f(QQ, 3) + H(QQ, 4)));
    EXPECT_TRUE(gw_equals(parse_gw(QQ, "2<1> + 11*H"), f(QQ, 1, 2) + H(QQ, 11)));
    EXPECT_TRUE(gw_equals(parse_gw(QQ, "<-3/4> - <-3>"), GWElement(QQ)));
    try {
        parse_gw(QQ, "<1> + <0>");
        FAIL();
    } catch (const Error& e) {
        EXPECT_TRUE(e.kind() == ErrorKind::parse || e.kind() == ErrorKind::domain);
    }
    EXPECT_THROW(parse_gw(QQ, "<1> +* H"), Error);
}

TEST(GWRing, RealEquality) {
    EXPECT_TRUE(gw_equals_real(f(QQ, 2) + f(QQ, 3), f(QQ, 1, 2)));
    EXPECT_FALSE(gw_equals(f(QQ, 2) + f(QQ, 3), f(QQ, 1, 2)));
}
