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

#ifndef RECLAB_ORACLE_HPP
#define RECLAB_ORACLE_HPP

#include "reclab/local_field.hpp"

namespace reclab {

// Brute-force Hilbert-symbol triviality through norm-subgroup membership at
// desk scale (d = 1, n small). Only triviality is certified; exact values are
// cross-checked between the explicit formulas instead.

struct UnitClassGroup {
    LocalField L;
    int n = 1;
    i64 pn = 0;
    std::vector<FieldElement> gens; // uniformizer first, then torsion, then principal units
    i64 class_count = 0;            // p^{n([L:Qp]+2)}
    bool fully_verified = false;    // completeness checked by exhaustive counting
};

/// Generators of L^x/(L^x)^{p^n} with counting verification at small scale.
UnitClassGroup unit_classes(const LocalField& L, int n);

/// Exponent vector of x with respect to the generators (exhaustive discrete log).
std::vector<i64> class_of(const UnitClassGroup& G, const FieldElement& x);

/// Is x a p^n-th power in L^x (valuation-aware)?
bool is_pn_power_full(const LocalField& L, const FieldElement& x, int n);

struct NormGroup {
    bool full = false;                    // trivial extension: everything is a norm
    std::vector<std::vector<i64>> gens;   // exponent vectors spanning the image
    std::vector<std::vector<i64>> members; // full enumeration of the subgroup
};

/// Image of N_{L(b^{1/p^n})/L} in L^x/(L^x)^{p^n}; the index is verified to be p^n.
NormGroup norm_group(const UnitClassGroup& G, const FieldElement& b);

bool norm_group_contains(const NormGroup& N, const std::vector<i64>& cls, i64 pn);

/// (a, b)_{p^n} trivial <=> a is a norm from L(b^{1/p^n}).
bool hilbert_trivial(const UnitClassGroup& G, const FieldElement& a, const FieldElement& b);

} // namespace reclab

#endif
