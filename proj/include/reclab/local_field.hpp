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

#ifndef RECLAB_LOCAL_FIELD_HPP
#define RECLAB_LOCAL_FIELD_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reclab/zmod.hpp"

namespace reclab {

// Finite extensions of Q_p as monogenic chains. An element is a flat
// coordinate vector on the nested power basis, with coordinates mod p^M,
// a power-of-p denominator and a certified absolute precision measured in
// uniformizer units of its level. All operations are pure; field data is
// immutable after construction.

enum class StepKind { eisenstein, unramified };

struct TowerStep {
    StepKind kind;
    // Monic defining polynomial of the step generator over the subfield.
    // poly[i] = flat subfield coordinates of the X^i coefficient, i = 0..deg-1
    // (the monic leading coefficient is implied).
    std::vector<std::vector<i64>> poly;
    // Optional: the generator expressed as a polynomial in the generator of
    // the final step, with integer coefficients (used by d/dT_d on nested
    // chains; empty when unknown).
    std::vector<i64> gen_in_top;
};

namespace detail {
struct FieldData;
}

class FieldElement;

class LocalField {
  public:
    LocalField() = default;

    static LocalField qp(i64 p, int prec_p);
    static LocalField make(i64 p, const std::vector<TowerStep>& steps, int prec_p);
    /// Q_p(zeta_{p^n}) as a single Eisenstein step with generator pi_n = zeta_{p^n}-1.
    static LocalField cyclotomic(i64 p, int n, int prec_p);
    /// Nested chain Q_p c K_{n_1} c K_{n_2} c ... (levels strictly increasing);
    /// records each pi_{n_i} as a polynomial in the top generator.
    static LocalField cyclotomic_tower(i64 p, const std::vector<int>& levels, int prec_p);

    bool valid() const { return data_ != nullptr; }
    i64 p() const;
    int prec_p() const;  // coordinates live mod p^prec_p
    i64 modulus() const; // p^prec_p
    int levels() const;  // number of tower steps above Q_p
    int top() const { return top_; }
    int dim() const;     // absolute degree at this handle's level
    int e() const;
    int f() const;
    int dim_at(int level) const;
    int e_at(int level) const;
    StepKind step_kind(int step) const; // step in [1, levels()]
    int step_degree(int step) const;

    bool same_tower(const LocalField& o) const { return data_ == o.data_; }
    bool same_field(const LocalField& o) const { return data_ == o.data_ && top_ == o.top_; }
    LocalField subfield(int level) const;

    int prec_cap(int dp = 0) const; // max representable absolute precision

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(i64 x) const;
    FieldElement from_coords(std::vector<i64> coords, int dp, int prec) const;
    FieldElement generator() const;             // generator of the top step
    FieldElement generator_of_step(int k) const; // embedded at this level
    FieldElement uniformizer() const;
    FieldElement pi_inverse() const;
    /// zeta_{p^n} = 1 + pi for cyclotomic fields (generator + 1 in general).
    FieldElement one_plus_generator() const;

    /// Distinct roots of y^p = x with y, x units; empty when x is not a p-th power.
    std::vector<FieldElement> pth_roots(const FieldElement& x) const;
    bool is_pn_power(const FieldElement& x, int n) const;

    /// Residue field F_{p^f} as mod-p coordinate vectors on the unramified sub-basis.
    int residue_dim() const;
    std::vector<i64> residue(const FieldElement& x) const;
    FieldElement lift_residue(const std::vector<i64>& r) const;
    std::vector<i64> residue_mul(const std::vector<i64>& a, const std::vector<i64>& b) const;
    std::vector<i64> residue_pow(const std::vector<i64>& a, u64 e) const;
    /// Unique y with y^{p^n} = a in the residue field.
    std::vector<i64> residue_root_pn(const std::vector<i64>& a, int n) const;

    const detail::FieldData* data_ptr() const { return data_.get(); }

  private:
    friend class FieldElement;
    LocalField(std::shared_ptr<const detail::FieldData> d, int top) : data_(std::move(d)), top_(top) {}
    std::shared_ptr<const detail::FieldData> data_;
    int top_ = 0;
};

class FieldElement {
  public:
    FieldElement() = default;

    LocalField field() const;
    int level() const { return level_; }
    i64 p() const;
    int dim() const { return (int)c_.size(); }
    const std::vector<i64>& coords() const { return c_; }
    int denom_exp() const { return dp_; }
    int precision() const { return prec_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement scaled(i64 k) const;        // multiply by an integer
    FieldElement mul_p_power(int k) const;   // multiply by p^k, k may be negative
    FieldElement div_exact_int(i64 k) const; // divide by integer k = p^a u, exactness checked
    FieldElement inv() const;
    FieldElement pow(i64 n) const;

    /// Certified valuation in uniformizer units of this level; nullopt when the
    /// element is indistinguishable from 0 at its precision.
    std::optional<int> valuation_opt() const;
    int valuation() const; // throws PrecisionExhausted
    bool is_zero() const { return !valuation_opt().has_value(); }
    bool is_unit() const;
    bool equals(const FieldElement& o) const;     // at joint precision
    bool equals_mod(const FieldElement& o, int piv) const; // v(x-y) >= piv

    FieldElement with_precision(int prec) const;
    FieldElement canonical() const; // strip removable denominator powers

    /// Exact division by pi^k (DivisionMismatch when the result is certified non-integral).
    FieldElement div_pi_exact(int k) const;

    FieldElement embed_to(const LocalField& bigger) const;
    /// (Tr, N) down to a member of the tower.
    std::pair<FieldElement, FieldElement> trace_norm(const LocalField& down_to) const;
    FieldElement trace_to(const LocalField& down_to) const;
    FieldElement norm_to(const LocalField& down_to) const;

    /// d/dT_d: derivative of the canonical representing polynomial in the top
    /// uniformizer, via the recorded chain expressions on nested towers.
    FieldElement derivative_dtop() const;

    std::string to_string() const;

  private:
    friend class LocalField;
    FieldElement(std::shared_ptr<const detail::FieldData> d, int level, std::vector<i64> c, int dp, int prec)
        : fd_(std::move(d)), level_(level), c_(std::move(c)), dp_(dp), prec_(prec) {}
    void require_same(const FieldElement& o) const;

    std::shared_ptr<const detail::FieldData> fd_;
    int level_ = 0;
    std::vector<i64> c_;
    int dp_ = 0;
    int prec_ = 0;
};

/// v_L(D(L/K)) for K a member of L's tower, as the sum of
/// v(g'(gen)) over the steps between them.
int different_valuation(const LocalField& L, const LocalField& K);

/// Trace of x under a single tower step, as an element of the subfield.
FieldElement step_trace(const FieldElement& x);

/// Norm of g(Y) in the monogenic algebra L[Y]/(minpoly) via the multiplication
/// matrix; minpoly is monic with coefficients minpoly[0..deg-1] in L.
FieldElement algebra_norm(const std::vector<FieldElement>& minpoly, const std::vector<FieldElement>& g);

/// Determinant over a local field with valuation pivoting.
FieldElement det_matrix(std::vector<std::vector<FieldElement>> m, const LocalField& F);

/// Move a coefficient into L: embeds within a tower; transports Q_p elements
/// (level 0) across towers with the same p by coordinates.
FieldElement coerce_into(const FieldElement& c, const LocalField& L);

} // namespace reclab

#endif
