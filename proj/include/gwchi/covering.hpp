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

#ifndef GWCHI_COVERING_HPP
#define GWCHI_COVERING_HPP

#include <string>
#include <vector>

#include "error.hpp"
#include "gw.hpp"

namespace gwchi {

/// chi(P^n) = <1> + (n/2)H for n even, ((n+1)/2)H for n odd.
inline GWElement chi_projective_space(const FieldDescriptor& k, long long n) {
    if (n < 0) fail(ErrorKind::domain, "negative-dimension", "projective space dimension must be non-negative");
    if (n % 2 == 0) return GWElement::one(k) + GWElement::hyperbolic(k, n / 2);
    return GWElement::hyperbolic(k, (n + 1) / 2);
}

/// chi of a smooth projective geometrically connected curve of genus g.
inline GWElement chi_curve(const FieldDescriptor& k, long long g) {
    if (g < 0) fail(ErrorKind::domain, "negative-genus", "genus must be non-negative");
    return GWElement::hyperbolic(k, 1 - g);
}

/// Blow-up of X along a smooth Z of codimension c: the exceptional divisor
/// is a P^{c-1}-bundle over Z replacing Z.
inline GWElement chi_blowup(const GWElement& chi_x, const GWElement& chi_z, long long codim) {
    if (codim < 1) fail(ErrorKind::domain, "bad-codimension", "codimension must be at least 1");
    const auto& k = chi_x.field();
    return chi_x + (chi_projective_space(k, codim - 1) - GWElement::one(k)) * chi_z;
}

inline GWElement chi_product(const GWElement& chi_x, const GWElement& chi_f) { return chi_x * chi_f; }

/// D = (-1)^{r-1} * chi_top(fibre) * chi_top(base) / 2.
inline long long d_invariant(long long chi_top_fiber, long long chi_top_base, long long r) {
    if (chi_top_base % 2 != 0)
        fail(ErrorKind::domain, "odd-base-euler", "topological Euler number of the base curve must be even");
    const long long sign = (r - 1) % 2 == 0 ? 1 : -1;
    return sign * chi_top_fiber * (chi_top_base / 2);
}

struct CoveringLocalInput {
    enum class Kind { etale_irreducible, etale_split, branched_odd, branched_even };
    Kind kind = Kind::etale_split;
    long long n = 2;
    GWElement base_class;      // local class downstairs, already traced to k
    Rational s_x = 1;          // etale_irreducible: value of the section
    long long milnor_rank = 0;  // branched_odd
    GWElement euler_class;     // branched_even
    Rational alpha = 0;        // branched_even
};

namespace detail {
inline void check_degree(long long n) {
    if (n < 2) fail(ErrorKind::domain, "bad-covering-degree", "covering degree must be at least 2");
}
inline void check_invertible(const FieldDescriptor& k, long long n) {
    if (!k.is_rational() && n % static_cast<long long>(k.p) == 0)
        fail(ErrorKind::domain, "degree-not-invertible", "covering degree is not invertible in the base field");
}
}  // namespace detail

inline GWElement etale_contribution(const CoveringLocalInput& in) {
    detail::check_degree(in.n);
    const auto& k = in.base_class.field();
    detail::check_invertible(k, in.n);
    const long long n = in.n;
    switch (in.kind) {
        case CoveringLocalInput::Kind::etale_split:
            return n * in.base_class;
        case CoveringLocalInput::Kind::etale_irreducible: {
            if (in.s_x == 0) fail(ErrorKind::domain, "zero-section-value", "etale point needs s_x nonzero");
            GWElement local = n % 2 == 1 ? GWElement::form(k, n) + GWElement::hyperbolic(k, (n - 1) / 2)
                                         : GWElement::form(k, n) + GWElement::form(k, Rational(n) * in.s_x) +
                                               GWElement::hyperbolic(k, (n - 2) / 2);
            return in.base_class * local;
        }
        default:
            fail(ErrorKind::domain, "not-etale", "local input is not of etale kind");
    }
}

inline GWElement branched_contribution(const CoveringLocalInput& in) {
    detail::check_degree(in.n);
    const long long n = in.n;
    switch (in.kind) {
        case CoveringLocalInput::Kind::branched_odd: {
            if (n % 2 == 0) fail(ErrorKind::domain, "parity-mismatch", "odd branched input with even n");
            if (in.milnor_rank < 0) fail(ErrorKind::domain, "negative-milnor", "Milnor rank must be non-negative");
            const auto& k = in.base_class.field();
            detail::check_invertible(k, n);
            return GWElement::hyperbolic(k, in.milnor_rank * ((n - 1) / 2));
        }
        case CoveringLocalInput::Kind::branched_even: {
            if (n % 2 == 1) fail(ErrorKind::domain, "parity-mismatch", "even branched input with odd n");
            if (in.alpha == 0) fail(ErrorKind::domain, "zero-alpha", "alpha must be nonzero");
            const auto& k = in.euler_class.field();
            detail::check_invertible(k, n);
            return in.euler_class * (GWElement::form(k, Rational(n) * in.alpha) + GWElement::hyperbolic(k, (n - 2) / 2));
        }
        default:
            fail(ErrorKind::domain, "not-branched", "local input is not of branched kind");
    }
}

enum class CoveringMode { irreducible, split };

/// chi(Y) for a cyclic cover of odd degree n branched along Z, when z^n - s
/// is irreducible at every critical point (irreducible) or splits at all of
/// them (split).
inline GWElement covering_chi(const GWElement& chi_x, const GWElement& chi_z, long long n, CoveringMode mode) {
    if (n < 3 || n % 2 == 0) fail(ErrorKind::domain, "even-degree", "covering_chi needs odd n >= 3");
    const auto& k = chi_x.field();
    detail::check_invertible(k, n);
    const GWElement correction = chi_z * GWElement::hyperbolic(k, (n - 1) / 2);
    if (mode == CoveringMode::split) return n * chi_x - correction;
    return (GWElement::form(k, n) + GWElement::hyperbolic(k, (n - 1) / 2)) * chi_x - correction;
}

/// General assembly for an equidimensional X of dimension r. For n even the
/// branched terms are the corrections Tr(e_y (<n alpha_y> - <1>)); for n odd
/// there are none. Returns chi(Y).
inline GWElement assemble_general(const FieldDescriptor& k, const std::vector<GWElement>& etale_terms,
                                  const std::vector<GWElement>& branched_terms, const GWElement& chi_z, long long n,
                                  long long r, long long d_rho) {
    detail::check_degree(n);
    detail::check_invertible(k, n);
    if (r < 0) fail(ErrorKind::domain, "negative-dimension", "dimension must be non-negative");
    if (n % 2 == 1 && !branched_terms.empty())
        fail(ErrorKind::domain, "parity-mismatch", "branched correction terms only occur for even n");
    GWElement acc(k);
    for (const auto& t : etale_terms) acc += t;
    for (const auto& t : branched_terms) acc += t;
    const GWElement signed_z = (r - 1) % 2 == 0 ? chi_z : -chi_z;
    if (n % 2 == 1) acc += signed_z * GWElement::hyperbolic(k, (n - 1) / 2);
    else acc += signed_z * (GWElement::one(k) + GWElement::hyperbolic(k, (n - 2) / 2));
    acc -= GWElement::hyperbolic(k, n * d_rho);
    return r % 2 == 0 ? acc : -acc;
}

}  // namespace gwchi

#endif
