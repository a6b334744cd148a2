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

#include "reclab/derivations.hpp"

#include <algorithm>

namespace reclab {

LaurentElement partial_derivative(const LaurentElement& a, int k) {
    int d = a.parent().dim();
    if (k < 1 || k > d) fail(Errc::config_error, "partial derivative index out of range");
    if (k < d) return a.partial_t(k);
    return a.partial_pi();
}

namespace {

LaurentElement det_rec(const std::vector<std::vector<LaurentElement>>& mm, std::vector<int> rows,
                       std::vector<int> cols, const LaurentField& fld) {
    size_t n = rows.size();
    if (n == 1) return mm[(size_t)rows[0]][(size_t)cols[0]];
    LaurentElement acc(fld, fld.coeff.prec_cap());
    int sign = 1;
    for (size_t i = 0; i < n; ++i) {
        std::vector<int> r2;
        for (size_t j = 0; j < n; ++j)
            if (j != i) r2.push_back(rows[j]);
        std::vector<int> c2(cols.begin() + 1, cols.end());
        LaurentElement term = mm[(size_t)rows[i]][(size_t)cols[0]] * det_rec(mm, r2, c2, fld);
        acc = sign > 0 ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

} // namespace

LaurentElement jacobian_det(const std::vector<LaurentElement>& a) {
    int d = (int)a.size();
    if (d == 0) fail(Errc::config_error, "empty tuple");
    const LaurentField& fld = a[0].parent();
    if (fld.dim() != d) fail(Errc::config_error, "tuple length must match the field dimension");
    std::vector<std::vector<LaurentElement>> m((size_t)d);
    for (int i = 0; i < d; ++i)
        for (int j = 1; j <= d; ++j) m[(size_t)i].push_back(partial_derivative(a[(size_t)i], j));
    std::vector<int> rows((size_t)d), cols((size_t)d);
    for (int i = 0; i < d; ++i) rows[(size_t)i] = cols[(size_t)i] = i;
    return det_rec(m, rows, cols, fld);
}

bool module_contains(const ModuleTarget& t, const LaurentElement& x) {
    auto v = x.valuation_opt();
    if (!v) return x.tail() >= t.vmin;
    return *v >= t.vmin;
}

bool module_equal(const ModuleTarget& t, const LaurentElement& x, const LaurentElement& y) {
    return x.equals_mod(y, t.vperiod);
}

DerivationSpec make_derivation(const ModuleTarget& target, const LaurentElement& w, const LocalField& K) {
    if (!module_contains(target, w)) fail(Errc::annihilator_violation, "w lies outside the target module");
    int ann = annihilator_valuation(target.fld, K);
    auto vw = w.valuation_opt();
    int wv = vw ? *vw : w.tail();
    if (ann + wv < target.vperiod)
        fail(Errc::annihilator_violation, "the annihilator ideal does not kill w in the target");
    DerivationSpec s;
    s.target = target;
    s.w = w;
    s.annihilator_val = ann;
    return s;
}

LaurentElement derivation_apply(const DerivationSpec& spec, const std::vector<LaurentElement>& a) {
    return jacobian_det(a) * spec.w;
}

int annihilator_valuation(const LaurentField& M, const LocalField& K) {
    // standard M = L{{T...}}: the annihilator is D(L/K) O_M
    return different_valuation(M.coeff, K);
}

int annihilator_valuation(const ExtendedTowerDesc& M, const LocalField& K) {
    const LaurentField& base = M.base;
    int deg = (int)M.minpoly.size();
    if (deg < 2) fail(Errc::no_representation, "extension step must have degree >= 2");
    // the representing coefficients must come from the unramified part over K
    if (base.coeff.e() != K.e())
        fail(Errc::no_representation, "extension base must be unramified over K");
    auto vext_poly = [&](const std::vector<LaurentElement>& coeffs) {
        int best = 1 << 28;
        for (int i = 0; i < (int)coeffs.size(); ++i) {
            auto v = coeffs[(size_t)i].valuation_opt();
            if (v) best = std::min(best, deg * *v + i);
        }
        return best;
    };
    {
        auto v0 = M.minpoly[0].valuation_opt();
        if (!v0 || *v0 != 1) fail(Errc::no_representation, "extension constant term must have valuation 1");
        for (int i = 1; i < deg; ++i) {
            auto vi = M.minpoly[(size_t)i].valuation_opt();
            if (vi && *vi < 1) fail(Errc::no_representation, "extension step is not Eisenstein over the base");
        }
    }
    int best = 1 << 28;
    for (int j = 1; j <= base.nvars; ++j) {
        std::vector<LaurentElement> dcoeffs;
        for (const auto& c : M.minpoly) dcoeffs.push_back(c.partial_t(j));
        best = std::min(best, vext_poly(dcoeffs));
    }
    {
        std::vector<LaurentElement> dcoeffs((size_t)deg, LaurentElement(base, base.coeff.prec_cap()));
        for (int i = 1; i < deg; ++i)
            dcoeffs[(size_t)(i - 1)] = M.minpoly[(size_t)i].scale(base.coeff.from_int(i));
        dcoeffs[(size_t)(deg - 1)] = LaurentElement::from_coeff(base, base.coeff.from_int(deg));
        best = std::min(best, vext_poly(dcoeffs));
    }
    (void)K;
    return best;
}

} // namespace reclab
