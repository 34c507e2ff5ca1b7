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

#ifndef GWCHI_TESTS_FIXTURES_HPP
#define GWCHI_TESTS_FIXTURES_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gwchi/factor.hpp"
#include "gwchi/parse.hpp"
#include "gwchi/pipeline.hpp"
#include "gwchi/quadform.hpp"
#include "gwchi/scheja_storch.hpp"
#include "oracles.hpp"

namespace fixture {

inline oracle::QMat to_qmat(const gwchi::GramForm<gwchi::Rat>& g) {
    oracle::QMat m;
    for (const auto& row : g.matrix()) {
        std::vector<gwchi::Rational> r;
        for (const auto& x : row) r.push_back(x.value());
        m.push_back(std::move(r));
    }
    return m;
}

inline gwchi::GramForm<gwchi::Rat> qform(const oracle::QMat& m) {
    gwchi::Matrix<gwchi::Rat> g;
    for (const auto& row : m) {
        std::vector<gwchi::Rat> r;
        for (const auto& x : row) r.emplace_back(x);
        g.push_back(std::move(r));
    }
    return gwchi::GramForm<gwchi::Rat>(gwchi::RationalField{}, std::move(g));
}

/// True when some permutation matrix P gives P^T A P = B.
inline bool permutation_congruent(const oracle::QMat& a, const oracle::QMat& b) {
    if (a.size() != b.size()) return false;
    std::vector<std::size_t> perm(a.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i)
            for (std::size_t j = 0; j < a.size() && ok; ++j)
                if (a[perm[i]][perm[j]] != b[i][j]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline gwchi::Poly<gwchi::TowerElem<gwchi::Rat>> tpoly(const gwchi::Tower<gwchi::Rat>& T, std::vector<long long> c) {
    std::vector<gwchi::TowerElem<gwchi::Rat>> v;
    for (auto x : c) v.push_back(T.from_int(x));
    return gwchi::Poly<gwchi::TowerElem<gwchi::Rat>>(T, std::move(v));
}

/// The four presentation relations of GW(k) as (lhs, rhs) pairs. The additive
/// one is skipped when a + b vanishes in k.
inline std::vector<std::pair<gwchi::GWElement, gwchi::GWElement>> gw_relations(const gwchi::FieldDescriptor& k,
                                                                               const gwchi::Rational& a,
                                                                               const gwchi::Rational& b) {
    using gwchi::GWElement;
    auto f = [&](const gwchi::Rational& x) { return GWElement::form(k, x); };
    std::vector<std::pair<GWElement, GWElement>> r;
    r.emplace_back(f(a) * f(b), f(a * b));
    if (a + b != 0 && (k.is_rational() || (gwchi::numerator_of(a + b) % gwchi::Integer(k.p)) != 0))
        r.emplace_back(f(a) + f(b), f(a + b) + f(a * b * (a + b)));
    r.emplace_back(f(a * b * b), f(a));
    r.emplace_back(f(a) + f(-a), GWElement::hyperbolic(k));
    return r;
}

inline gwchi::MultiPoly<gwchi::Rat> mono(const std::vector<std::string>& vars, gwchi::Exponent e,
                                         const gwchi::Rational& c) {
    gwchi::MultiPoly<gwchi::Rat> p(gwchi::RationalField{}, vars);
    p.add_term(e, gwchi::Rat(c));
    return p;
}

/// s_i = c_i t_i^{k_i} + random monomials of total degree in [1, k_i - 1].
/// The leading forms c_i t_i^{k_i} form a regular sequence, so the system is
/// zero-dimensional with the origin among its zeros.
inline std::vector<gwchi::MultiPoly<gwchi::Rat>> random_system(std::mt19937_64& rng,
                                                               const std::vector<std::string>& vars) {
    std::vector<gwchi::MultiPoly<gwchi::Rat>> s;
    const std::size_t r = vars.size();
    for (std::size_t i = 0; i < r; ++i) {
        const unsigned k = 2 + static_cast<unsigned>(rng() % 2);
        gwchi::Exponent lead(r, 0);
        lead[i] = static_cast<int>(k);
        auto p = mono(vars, lead, oracle::random_rational(rng, 5));
        for (int t = 0; t < 2; ++t) {
            gwchi::Exponent e(r, 0);
            const unsigned deg = 1 + static_cast<unsigned>(rng() % (k - 1));
            for (unsigned d = 0; d < deg; ++d) ++e[rng() % r];
            p += mono(vars, e, oracle::random_rational(rng, 5));
        }
        s.push_back(p);
    }
    return s;
}

inline const std::vector<std::string>& proj_vars() {
    static const std::vector<std::string> v{"X0", "X1", "X2"};
    return v;
}

inline gwchi::CoverInput cover(const std::string& F, long long n,
                               gwchi::FieldDescriptor k = gwchi::FieldDescriptor::rationals()) {
    return gwchi::CoverInput{k, n, gwchi::parse_poly(F, proj_vars())};
}

// Dense random form of degree 2n over F_p whose X2^(2n) coefficient is a
// nonzero square c^2, so F(0,0,1) is a square by construction.
inline gwchi::CoverInput random_cover(std::mt19937_64& rng, long long p, long long n) {
    using gwchi::Rat;
    gwchi::MultiPoly<Rat> F(gwchi::RationalField{}, proj_vars());
    const int d = static_cast<int>(2 * n);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
            const int l = d - i - j;
            long long c = static_cast<long long>(rng() % static_cast<unsigned long long>(p));
            if (l == d) {
                const long long r = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(p - 1));
                c = r * r % p;
            }
            if (c != 0) F.add_term({i, j, l}, Rat(c));
        }
    return gwchi::CoverInput{gwchi::FieldDescriptor::prime(p), n, F};
}

struct FuzzOutcome {
    gwchi::CoverInput input;
    gwchi::PipelineReport<gwchi::ModP> report;
};

// Draws random covers until one is accepted by the pipeline. Rejections are
// validation errors only (singular curves and similar); anything else propagates.
inline FuzzOutcome accepted_random_cover(std::mt19937_64& rng, long long p, long long n, int* rejected = nullptr) {
    for (;;) {
        gwchi::CoverInput in = random_cover(rng, p, n);
        try {
            auto rep = gwchi::chi_of_cover_over<gwchi::ModP>(gwchi::PrimeField{static_cast<std::uint64_t>(p)}, in);
            return {std::move(in), std::move(rep)};
        } catch (const gwchi::Error& e) {
            if (e.kind() != gwchi::ErrorKind::validation) throw;
            if (rejected) ++*rejected;
        }
    }
}

}  // namespace fixture

#endif
