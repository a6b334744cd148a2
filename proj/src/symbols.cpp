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

#include "reclab/symbols.hpp"

#include <algorithm>

namespace reclab {

MilnorSymbol symbol_new(const LaurentField& fld, const std::vector<LaurentElement>& entries) {
    if ((int)entries.size() != fld.dim())
        fail(Errc::config_error, "symbol arity must match the field dimension");
    for (const auto& e : entries) {
        if (!e.parent().same(fld)) fail(Errc::ambient_mismatch, "symbol entry from a different ambient");
        if (e.is_zero()) fail(Errc::zero_entry, "symbol entries must be nonzero at precision");
    }
    MilnorSymbol s;
    s.ambient = fld;
    s.factors.push_back({entries, 1});
    return s;
}

MilnorSymbol symbol_product(const MilnorSymbol& s, const MilnorSymbol& t) {
    if (!s.ambient.same(t.ambient)) fail(Errc::ambient_mismatch, "symbols over different ambients");
    MilnorSymbol r = s;
    for (const auto& f : t.factors) r.factors.push_back(f);
    r.factors.erase(std::remove_if(r.factors.begin(), r.factors.end(),
                                   [](const SymbolFactor& f) { return f.exp == 0; }),
                    r.factors.end());
    return r;
}

MilnorSymbol symbol_inverse(const MilnorSymbol& s) {
    MilnorSymbol r = s;
    for (auto& f : r.factors) f.exp = -f.exp;
    return r;
}

MilnorSymbol symbol_pow(const MilnorSymbol& s, i64 k) {
    MilnorSymbol r = s;
    for (auto& f : r.factors) f.exp *= k;
    r.factors.erase(std::remove_if(r.factors.begin(), r.factors.end(),
                                   [](const SymbolFactor& f) { return f.exp == 0; }),
                    r.factors.end());
    return r;
}

bool steinberg_trivial_factor(const SymbolFactor& f, int piv) {
    const LaurentField& fld = f.entries.at(0).parent();
    LaurentElement one = LaurentElement::from_coeff(fld, fld.coeff.one());
    for (size_t i = 0; i < f.entries.size(); ++i)
        for (size_t j = 0; j < f.entries.size(); ++j) {
            if (i == j) continue;
            LaurentElement s = f.entries[i] + f.entries[j];
            try {
                if (s.equals_mod(one, piv)) return true;
            } catch (const Error&) {
                // undecidable at precision: not flagged
            }
        }
    return false;
}

bool minus_trivial_factor(const SymbolFactor& f, int piv) {
    for (size_t i = 0; i < f.entries.size(); ++i)
        for (size_t j = i + 1; j < f.entries.size(); ++j) {
            LaurentElement s = f.entries[i] + f.entries[j];
            try {
                LaurentElement zero(f.entries[i].parent(), f.entries[i].parent().coeff.prec_cap());
                if (s.equals_mod(zero, piv)) return true;
            } catch (const Error&) {
            }
        }
    return false;
}

bool steinberg_trivial(const MilnorSymbol& s, int piv) {
    return std::all_of(s.factors.begin(), s.factors.end(),
                       [&](const SymbolFactor& f) { return steinberg_trivial_factor(f, piv); }) &&
           !s.factors.empty();
}

bool minus_trivial(const MilnorSymbol& s, int piv) {
    return std::all_of(s.factors.begin(), s.factors.end(),
                       [&](const SymbolFactor& f) { return minus_trivial_factor(f, piv); }) &&
           !s.factors.empty();
}

std::vector<LaurentElement> step_blocks(const LaurentElement& x, const LaurentField& sub) {
    const LaurentField& fld = x.parent();
    LocalField M = fld.coeff;
    LocalField L = sub.coeff;
    if (!M.same_tower(L) || L.top() + 1 != M.top() || sub.nvars != fld.nvars)
        fail(Errc::not_a_subfield, "step_blocks expects one tower step down");
    int deg = M.step_degree(M.top());
    int sd = L.dim();
    std::vector<LaurentElement> blocks((size_t)deg, LaurentElement(sub, x.tail_lo(), x.tail_hi()));
    // tails measured in the subfield's uniformizer units
    int scale = M.e() / L.e();
    auto fdiv = [&](int a) { return a >= 0 ? a / scale : -((-a + scale - 1) / scale); };
    for (auto& b : blocks) b = LaurentElement(sub, fdiv(x.tail_lo()), fdiv(x.tail_hi()));
    for (const auto& [idx, c] : x.coeffs()) {
        for (int j = 0; j < deg; ++j) {
            std::vector<i64> blk(c.coords().begin() + (size_t)j * sd,
                                 c.coords().begin() + (size_t)(j + 1) * sd);
            int prec = fdiv(c.precision());
            FieldElement cb = L.from_coords(std::move(blk), c.denom_exp(),
                                            std::min(prec, L.prec_cap(c.denom_exp())));
            if (cb.is_zero() && cb.precision() >= blocks[(size_t)j].tail()) continue;
            blocks[(size_t)j] += LaurentElement::monomial(sub, cb, idx);
        }
    }
    return blocks;
}

LaurentElement laurent_norm(const LaurentElement& x, const LaurentField& down) {
    const LaurentField& fld = x.parent();
    if (!fld.coeff.same_tower(down.coeff) || down.coeff.top() > fld.coeff.top() ||
        down.nvars != fld.nvars)
        fail(Errc::not_a_subfield, "norm target is not below this field");
    if (down.coeff.top() == fld.coeff.top()) return x;
    // one step at a time
    LocalField M = fld.coeff;
    LaurentField mid{M.subfield(M.top() - 1), fld.nvars, fld.window};
    int deg = M.step_degree(M.top());
    std::vector<LaurentElement> cur = step_blocks(x, mid);
    // multiplication matrix of x on the generator-power basis, entries in mid
    std::vector<std::vector<LaurentElement>> mat((size_t)deg);
    // columns: x * gen^j expressed in blocks; multiply x by gen repeatedly
    LaurentElement xg = x;
    LaurentElement gen = LaurentElement::from_coeff(fld, M.generator());
    for (int j = 0; j < deg; ++j) {
        std::vector<LaurentElement> col = j == 0 ? cur : step_blocks(xg, mid);
        for (int i = 0; i < deg; ++i) mat[(size_t)i].push_back(col[(size_t)i]);
        if (j + 1 < deg) xg = xg * gen;
    }
    // cofactor determinant over mid
    struct Rec {
        static LaurentElement det(const std::vector<std::vector<LaurentElement>>& mm,
                                  std::vector<int> rows, std::vector<int> cols,
                                  const LaurentField& fld) {
            size_t n = rows.size();
            if (n == 1) return mm[(size_t)rows[0]][(size_t)cols[0]];
            LaurentElement acc(fld, fld.coeff.prec_cap());
            int sign = 1;
            for (size_t i = 0; i < n; ++i) {
                std::vector<int> r2;
                for (size_t j = 0; j < n; ++j)
                    if (j != i) r2.push_back(rows[j]);
                std::vector<int> c2(cols.begin() + 1, cols.end());
                LaurentElement term = mm[(size_t)rows[i]][(size_t)cols[0]] * det(mm, r2, c2, fld);
                acc = sign > 0 ? acc + term : acc - term;
                sign = -sign;
            }
            return acc;
        }
    };
    std::vector<int> rows((size_t)deg), cols((size_t)deg);
    for (int i = 0; i < deg; ++i) rows[(size_t)i] = cols[(size_t)i] = i;
    LaurentElement nrm = Rec::det(mat, rows, cols, mid);
    return laurent_norm(nrm, down);
}

bool lies_in(const LaurentElement& x, const LaurentField& down) {
    const LaurentField& fld = x.parent();
    if (!fld.coeff.same_tower(down.coeff) || down.coeff.top() > fld.coeff.top() ||
        down.nvars != fld.nvars)
        return false;
    int sd = down.coeff.dim();
    for (const auto& [idx, c] : x.coeffs()) {
        for (size_t i = (size_t)sd; i < c.coords().size(); ++i) {
            if (c.coords()[i] != 0) {
                // tolerate only below-precision residue
                std::vector<i64> cc = c.coords();
                for (size_t j = 0; j < (size_t)sd; ++j) cc[j] = 0;
                FieldElement rest = x.parent().coeff.from_coords(std::move(cc), c.denom_exp(),
                                                                 c.precision());
                if (!rest.is_zero()) return false;
                break;
            }
        }
    }
    return true;
}

LaurentElement project_to(const LaurentElement& x, const LaurentField& down) {
    if (!lies_in(x, down)) fail(Errc::not_a_subfield, "element does not lie in the smaller field");
    int scale = x.parent().coeff.e() / down.coeff.e();
    auto fdiv = [&](int a) { return a >= 0 ? a / scale : -((-a + scale - 1) / scale); };
    LaurentElement r(down, fdiv(x.tail_lo()), fdiv(x.tail_hi()));
    int sd = down.coeff.dim();
    for (const auto& [idx, c] : x.coeffs()) {
        std::vector<i64> blk(c.coords().begin(), c.coords().begin() + sd);
        FieldElement cb = down.coeff.from_coords(std::move(blk), c.denom_exp(),
                                                 std::min(fdiv(c.precision()), down.coeff.prec_cap(c.denom_exp())));
        r += LaurentElement::monomial(down, cb, idx);
    }
    return r;
}

MilnorSymbol norm_special(const MilnorSymbol& s, const LaurentField& down) {
    MilnorSymbol r;
    r.ambient = down;
    for (const auto& f : s.factors) {
        for (size_t i = 1; i < f.entries.size(); ++i) {
            if (!lies_in(f.entries[i], down))
                fail(Errc::shape_not_supported,
                     "norm_special needs all entries but the first in the base field");
        }
        SymbolFactor nf;
        nf.exp = f.exp;
        nf.entries.push_back(laurent_norm(f.entries[0], down));
        for (size_t i = 1; i < f.entries.size(); ++i) nf.entries.push_back(project_to(f.entries[i], down));
        r.factors.push_back(std::move(nf));
    }
    return r;
}

} // namespace reclab
