/*
   Copyright 2026 the reclab authors

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

#ifndef RECLAB_SERIES_HPP
#define RECLAB_SERIES_HPP

#include <vector>

#include "reclab/laurent.hpp"
#include "reclab/local_field.hpp"

namespace reclab {

/// Truncated univariate power series with FieldElement coefficients.
/// Operations truncate at an explicit working degree.
struct USeries {
    std::vector<FieldElement> c; // c[i] = coefficient of X^i

    int degree() const { return (int)c.size() - 1; }
    const FieldElement& at(int i) const { return c[(size_t)i]; }
    LocalField field() const { return c.at(0).field(); }
};

USeries u_from_ints(const LocalField& F, const std::vector<i64>& coeffs);
USeries u_zero(const LocalField& F, int deg);
USeries u_trunc(const USeries& a, int deg);
USeries u_add(const USeries& a, const USeries& b);
USeries u_sub(const USeries& a, const USeries& b);
USeries u_scale(const USeries& a, const FieldElement& k);
USeries u_mul(const USeries& a, const USeries& b, int deg);
/// outer(inner), inner(0) = 0 required.
USeries u_compose(const USeries& outer, const USeries& inner, int deg);
/// Horner evaluation of a polynomial outer at an arbitrary inner series;
/// truncated terms cannot re-enter low degrees, so no constant-term restriction.
USeries u_eval_poly(const USeries& outer, const USeries& inner, int deg);
USeries u_derive(const USeries& a);
/// antiderivative with zero constant term; divides by exact integers.
USeries u_integrate(const USeries& a);
/// 1/a for a with unit constant term.
USeries u_inv_series(const USeries& a, int deg);
/// functional inverse of a with a(0)=0, a'(0) a unit.
USeries u_reversion(const USeries& a, int deg);
USeries u_embed(const USeries& a, const LocalField& bigger);

/// Evaluate at a point of positive valuation; the certified precision of the
/// result accounts for the truncation tail (deg+1)*v(x).
FieldElement u_eval(const USeries& a, const FieldElement& x);
LaurentElement u_eval_tower(const USeries& a, const LaurentElement& x);
/// Exact polynomial evaluation: no truncation tail is charged.
FieldElement u_eval_exact(const USeries& a, const FieldElement& x);
LaurentElement u_eval_tower_exact(const USeries& a, const LaurentElement& x);

/// Weierstrass preparation g = P*U at working degree: P monic of degree n
/// (index of the first unit coefficient) with non-leading coefficients in the
/// maximal ideal, U a unit series. Returns (P's coefficients c_0..c_{n-1}, U).
std::pair<std::vector<FieldElement>, USeries> weierstrass_prep(const USeries& g, int work_deg);

/// Truncated bivariate series of bounded total degree.
struct BSeries {
    int dmax = 0;
    std::vector<FieldElement> c; // (dmax+1)^2 row-major; only i+j <= dmax used

    const FieldElement& at(int i, int j) const { return c[(size_t)i * (size_t)(dmax + 1) + (size_t)j]; }
    FieldElement& at(int i, int j) { return c[(size_t)i * (size_t)(dmax + 1) + (size_t)j]; }
    LocalField field() const { return c.at(0).field(); }
};

BSeries b_zero(const LocalField& F, int dmax);
BSeries b_add(const BSeries& a, const BSeries& b);
BSeries b_sub(const BSeries& a, const BSeries& b);
BSeries b_mul(const BSeries& a, const BSeries& b);
BSeries b_embed(const BSeries& a, const LocalField& bigger);
/// substitute univariate series for both variables: F(s(X), t(X)).
USeries b_subst_uu(const BSeries& F, const USeries& s, const USeries& t, int deg);
bool b_equal_mod(const BSeries& a, const BSeries& b, int piv);

} // namespace reclab

#endif
