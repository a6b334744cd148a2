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

#ifndef RECLAB_SYMBOLS_HPP
#define RECLAB_SYMBOLS_HPP

#include "reclab/laurent.hpp"

namespace reclab {

// Formal Milnor symbols: products of d-tuples with integer exponents.
// Triviality from the Steinberg and {a,-a} relations is detected, never
// canonicalized away.

struct SymbolFactor {
    std::vector<LaurentElement> entries;
    i64 exp = 1;
};

struct MilnorSymbol {
    LaurentField ambient;
    std::vector<SymbolFactor> factors;

    int arity() const { return ambient.dim(); }
};

MilnorSymbol symbol_new(const LaurentField& fld, const std::vector<LaurentElement>& entries);
MilnorSymbol symbol_product(const MilnorSymbol& s, const MilnorSymbol& t);
MilnorSymbol symbol_inverse(const MilnorSymbol& s);
MilnorSymbol symbol_pow(const MilnorSymbol& s, i64 k);

/// Some factor has entries with a_i + a_j = 1 (certified at precision).
bool steinberg_trivial_factor(const SymbolFactor& f, int piv);
/// Some factor has entries with a_i + a_j = 0.
bool minus_trivial_factor(const SymbolFactor& f, int piv);
bool steinberg_trivial(const MilnorSymbol& s, int piv);
bool minus_trivial(const MilnorSymbol& s, int piv);

/// Decompose a tower element on the power basis of one coefficient-field step.
std::vector<LaurentElement> step_blocks(const LaurentElement& x, const LaurentField& sub);

/// Field norm N_{M/L} for standard Laurent fields over nested tower steps.
LaurentElement laurent_norm(const LaurentElement& x, const LaurentField& down);

/// Prop (norm)(4) shape: all entries except the first lie in `down`; the
/// result replaces the first entry by its norm. ShapeNotSupported otherwise.
MilnorSymbol norm_special(const MilnorSymbol& s, const LaurentField& down);

/// Whether x lies in the image of the smaller Laurent field (coefficients in
/// the subfield at the stated precision); if so, the projection.
bool lies_in(const LaurentElement& x, const LaurentField& down);
LaurentElement project_to(const LaurentElement& x, const LaurentField& down);

} // namespace reclab

#endif
