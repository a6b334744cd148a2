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

#ifndef RECLAB_FORMAL_GROUP_HPP
#define RECLAB_FORMAL_GROUP_HPP

#include <string>

#include "reclab/series.hpp"

namespace reclab {

/// A formal group law as a truncated bivariate series over O_K, with the
/// logarithm and exponential cached at construction.
struct FormalGroupLaw {
    BSeries F;
    std::string source; // "multiplicative" | "additive" | "lubin-tate" | "custom"
    USeries log;        // l_F, degree >= F.dmax
    USeries exp;        // l_F^{-1}
    USeries neg;        // iota with F(X, iota(X)) = 0

    LocalField field() const { return F.field(); }
    int dmax() const { return F.dmax; }
};

/// X + Y + XY with closed-form log/exp.
FormalGroupLaw fgl_multiplicative(const LocalField& K, int dmax);
FormalGroupLaw fgl_additive(const LocalField& K, int dmax);

/// Lubin–Tate law for f with f = pi X mod deg 2 and f = X^q mod pi;
/// the congruences are checked and the functional equation verified.
FormalGroupLaw lubin_tate_build(const USeries& f, const FieldElement& pi, i64 q, int dmax);

/// Unique series phi with phi = lin mod deg 2 and f(phi(X)) = phi(g(X));
/// both f and g must be Lubin-Tate for the same pi.
USeries lubin_tate_hom(const USeries& f, const USeries& g, const FieldElement& lin,
                       const FieldElement& pi, int deg);

/// [a]_F by series substitution (valid for any F, small |a|).
USeries fgl_times_int(const FormalGroupLaw& F, i64 a, int deg);

FieldElement fg_add(const FormalGroupLaw& F, const FieldElement& x, const FieldElement& y);
FieldElement fg_neg(const FormalGroupLaw& F, const FieldElement& x);
FieldElement fg_sub(const FormalGroupLaw& F, const FieldElement& x, const FieldElement& y);
FieldElement fg_times(const FormalGroupLaw& F, i64 a, const FieldElement& x);

LaurentElement fg_add(const FormalGroupLaw& F, const LaurentElement& x, const LaurentElement& y);
LaurentElement fg_neg(const FormalGroupLaw& F, const LaurentElement& x);
LaurentElement fg_sub(const FormalGroupLaw& F, const LaurentElement& x, const LaurentElement& y);
LaurentElement fg_times(const FormalGroupLaw& F, i64 a, const LaurentElement& x);

/// pi^n-torsion data for height 1: a generator of kappa_n in its ambient field
/// plus the full enumeration of kappa_n.
struct TorsionData {
    int level = 0;
    LocalField ambient;
    FieldElement gen;                // e_n
    std::vector<FieldElement> all;   // [a]_F(e_n), a = 0..p^n-1 (filled on request)
    USeries f;                        // the isogeny over the ambient field
};

/// f^(n) as a univariate series over K (composition of n copies of f).
USeries isogeny_iterate(const USeries& f, int n, int deg);

/// Cyclotomic closed form: for f = (1+X)^p - 1 the generator of kappa_n is
/// pi_n = zeta_{p^n}-1 living in ambient = Q_p(zeta_{p^n}); verified against f.
TorsionData torsion_cyclotomic(const FormalGroupLaw& F, const USeries& f, int n, const LocalField& ambient);

/// Level-1 torsion for a Lubin-Tate polynomial f via Weierstrass preparation:
/// builds the ambient extension Q_p[X]/(P(X)/X) and returns its generator.
TorsionData torsion_level1(const FormalGroupLaw& F, const USeries& f, int work_deg);

/// Hensel refinement of a seed root of f^(n); RootNotFound when the seed does
/// not converge.
FieldElement hensel_refine_root(const USeries& fn, const FieldElement& seed);

/// Enumerate kappa_n = { [a]_F(e_n) } inside the torsion ambient.
void enumerate_torsion(const FormalGroupLaw& F, TorsionData& t);

/// Norm series of Prop-type construction: s(X) = prod_{v in kappa_n} g(F(X,v))
/// = r_g(f^{(n)}); returns r_g (coefficients in K, asserted) and r_g'(0),
/// checking the product formula r_g'(0) = g'(0) prod_{v != 0} g(v) / pi^n.
struct NormSeriesResult {
    USeries r;                // over K
    FieldElement r_prime0;    // = r.c[1]
};
NormSeriesResult norm_series(const USeries& g, const FormalGroupLaw& F, const USeries& f, int n,
                             const TorsionData& torsion, int work_deg);

/// Formal-group digit expansion: y = (+)_k (+)_i gamma_{i,k}^{p^n} T^i pi^k
/// with gamma in O_L; digits are returned sparsely.
struct FgDigit {
    MultiIndex idx; // i-bar in J_n (componentwise in [0, p^n))
    int k;          // pi-power, k >= 1
    LaurentElement gamma;
};
/// target_prec 0 derives the deepest level the working modulus supports.
std::vector<FgDigit> fg_digit_expansion(const LaurentElement& y, const FormalGroupLaw& F, int n,
                                        int target_prec = 0);
LaurentElement fg_digit_reassemble(const std::vector<FgDigit>& digits, const FormalGroupLaw& F,
                                   const LaurentField& fld, int n);

} // namespace reclab

#endif
