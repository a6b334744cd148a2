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

#ifndef RECLAB_LAURENT_HPP
#define RECLAB_LAURENT_HPP

#include <map>
#include <optional>
#include <vector>

#include "reclab/local_field.hpp"

namespace reclab {

// Iterated Laurent fields L{{T_1}}...{{T_{d-1}}}. An element stores finitely
// many coefficients plus certified tail bounds: every omitted coefficient has
// valuation >= the bound for its side. Infinite expansions are replaced by
// this finite certified-truncation semantics; truncated inverses carry a
// small high-side tail and products keep per-coefficient precision sound.

using MultiIndex = std::vector<int>;

struct LaurentField {
    LocalField coeff; // the one-dimensional coefficient field L
    int nvars = 0;    // d - 1
    int window = 16;  // soft window; hard cap is 4*window

    int dim() const { return nvars + 1; } // the "d" of the d-dimensional field
    bool same(const LaurentField& o) const {
        return coeff.same_field(o.coeff) && nvars == o.nvars;
    }
    int hard_cap() const { return 4 * window; }
};

class LaurentElement {
  public:
    LaurentElement() = default;
    LaurentElement(LaurentField fld, int tail);
    LaurentElement(LaurentField fld, int tail_lo, int tail_hi);

    static LaurentElement from_coeff(const LaurentField& fld, const FieldElement& c);
    static LaurentElement monomial(const LaurentField& fld, const FieldElement& c, const MultiIndex& idx);

    const LaurentField& parent() const { return fld_; }
    /// Certified bounds for omitted coefficients: below the stored support
    /// (tail_lo), above it (tail_hi); tail() is their minimum.
    int tail_lo() const { return tail_lo_; }
    int tail_hi() const { return tail_hi_; }
    int tail() const { return tail_lo_ < tail_hi_ ? tail_lo_ : tail_hi_; }
    const std::map<MultiIndex, FieldElement>& coeffs() const { return c_; }
    bool empty() const { return c_.empty(); }

    FieldElement coefficient(const MultiIndex& idx) const; // 0 + O(pi^tail) when absent

    LaurentElement operator+(const LaurentElement& o) const;
    LaurentElement operator-(const LaurentElement& o) const;
    LaurentElement operator-() const;
    LaurentElement operator*(const LaurentElement& o) const;
    LaurentElement& operator+=(const LaurentElement& o) { return *this = *this + o; }
    LaurentElement& operator-=(const LaurentElement& o) { return *this = *this - o; }
    LaurentElement& operator*=(const LaurentElement& o) { return *this = *this * o; }

    LaurentElement scale(const FieldElement& c) const;
    LaurentElement shift(const MultiIndex& by) const;
    LaurentElement inv() const;
    LaurentElement pow(i64 n) const;

    std::optional<int> valuation_opt() const;
    int valuation() const;
    bool is_zero() const { return !valuation_opt().has_value(); }
    bool equals_mod(const LaurentElement& o, int piv) const;

    /// Lower bound on the valuation of every coefficient (certified content).
    int vlow() const;

    LaurentElement truncated_tail(int new_tail) const;

    /// d/dT_k for k in [1, nvars], termwise in the k-th variable.
    LaurentElement partial_t(int k) const;
    /// d/dT_d: coefficientwise derivative w.r.t. the uniformizer of L.
    LaurentElement partial_pi() const;

    /// Coefficientwise embedding into a Laurent field over a larger member of
    /// the same tower.
    LaurentElement embed_coeff_to(const LaurentField& bigger) const;
    /// Coefficientwise trace to a Laurent field over a smaller member.
    LaurentElement trace_coeff_to(const LaurentField& smaller) const;

  private:
    void insert(const MultiIndex& idx, const FieldElement& v);
    void normalize();

    LaurentField fld_;
    std::map<MultiIndex, FieldElement> c_;
    int tail_lo_ = 0;
    int tail_hi_ = 0;
};

/// Kurihara coefficient map c: picks the constant multi-index coefficient.
FieldElement coefficient_map_c(const LaurentElement& x);

/// Coefficient of A*B at a fixed index with index-refined error accounting;
/// sound even when the stored convolution has no pair landing there.
FieldElement product_coefficient(const LaurentElement& A, const LaurentElement& B, const MultiIndex& k);

/// Generalized trace T_{L/S} = Tr_{L/S} of the constant coefficient for
/// standard fields.
FieldElement generalized_trace(const LaurentElement& x, const LocalField& S);

/// Valuation threshold of R_{L,1} (dual of mu_{L,1} under the trace pairing).
int rl1_bound(const LaurentField& L, const LocalField& S);
/// Threshold of R'_{L,1} = pi_L R_{L,1}.
int rl1_prime_bound(const LaurentField& L, const LocalField& S);
/// mu_{L,1} threshold floor(v_L(p)/(p-1)) + 1.
int mu1_bound(const LaurentField& L);

} // namespace reclab

#endif
