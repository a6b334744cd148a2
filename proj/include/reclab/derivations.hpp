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

#ifndef RECLAB_DERIVATIONS_HPP
#define RECLAB_DERIVATIONS_HPP

#include "reclab/laurent.hpp"

namespace reclab {

/// d/dT_k on the integer ring of a d-dimensional field; k = d differentiates
/// with respect to the uniformizer through the representing polynomial.
LaurentElement partial_derivative(const LaurentElement& a, int k);

/// det[ da_i/dT_j ] for a d-tuple, with T_d the uniformizer; cofactor
/// expansion, no inversions.
LaurentElement jacobian_det(const std::vector<LaurentElement>& a);

/// Quotient module of the shape pi^r R_{M,1} / pi^{r'} R_{M,1}: elements are
/// represented in M, equality is a valuation bound.
struct ModuleTarget {
    LaurentField fld;
    int vmin = 0;    // membership: v(x) >= vmin
    int vperiod = 0; // x == 0 iff v(x) >= vperiod
};

bool module_contains(const ModuleTarget& t, const LaurentElement& x);
bool module_equal(const ModuleTarget& t, const LaurentElement& x, const LaurentElement& y);

/// A d-dimensional derivation D determined by w = D(T_1,...,pi_M); the
/// annihilator condition D(M/K) * w = 0 in the target is verified.
struct DerivationSpec {
    ModuleTarget target;
    LaurentElement w;
    int annihilator_val = 0;
};

DerivationSpec make_derivation(const ModuleTarget& target, const LaurentElement& w, const LocalField& K);

/// D(a_1,...,a_d) = det[ da_i/dT_j ] * w.
LaurentElement derivation_apply(const DerivationSpec& spec, const std::vector<LaurentElement>& a);

/// v_M(annihilator of the torsion of the completed differential module):
/// for standard fields this is v of D(L/K) extended to O_M.
int annihilator_valuation(const LaurentField& M, const LocalField& K);

/// A non-standard field presented as a monogenic step over a standard one:
/// the minimal polynomial of its uniformizer has coefficients in the base.
/// Only valuation-level data is required here.
struct ExtendedTowerDesc {
    LaurentField base;
    std::vector<LaurentElement> minpoly; // monic; coefficients of X^0..X^{deg-1}
};

/// min over v(dP/dT_j(pi)) and v(P'(pi)) in uniformizer units of the extension.
int annihilator_valuation(const ExtendedTowerDesc& M, const LocalField& K);

} // namespace reclab

#endif
