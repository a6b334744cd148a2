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

#include "reclab/local_field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace reclab {
namespace detail {

constexpr int kValInfinity = 1 << 28;

struct StepData {
    StepKind kind = StepKind::eisenstein;
    int deg = 1;
    int dim = 1; // absolute degree at this level
    int e = 1;   // cumulative ramification
    int f = 1;   // cumulative inertia
    std::vector<std::vector<i64>> poly; // coeff i as flat sub-level coords, i = 0..deg-1
    std::vector<std::vector<i64>> xpow; // X^{deg+i} mod poly as flat this-level coords, i = 0..deg-2
    std::vector<std::vector<i64>> powersums; // s_0..s_{deg-1} as flat sub-level coords
    std::vector<i64> gen_in_top;             // optional integer polynomial in the top generator
};

struct FieldData {
    i64 p = 0;
    int prec_p = 0;
    i64 q = 0;
    std::vector<StepData> steps;
    std::vector<std::vector<i64>> unif;        // per level
    std::vector<std::vector<i64>> unif_inv;    // per level
    std::vector<int> unif_inv_dp;              // per level
    std::vector<std::vector<int>> residue_idx; // per level
    std::vector<std::vector<i64>> dgen_dtop;   // per step (1-based); empty when unavailable

    int dim_at(int level) const { return level == 0 ? 1 : steps[(size_t)level - 1].dim; }
    int e_at(int level) const { return level == 0 ? 1 : steps[(size_t)level - 1].e; }
    int f_at(int level) const { return level == 0 ? 1 : steps[(size_t)level - 1].f; }

    void add_into(std::vector<i64>& a, const std::vector<i64>& b) const {
        for (size_t i = 0; i < a.size(); ++i) a[i] = addmod(a[i], b[i], q);
    }
    void scale_into(std::vector<i64>& a, i64 k) const {
        i64 kk = k % q;
        if (kk < 0) kk += q;
        for (auto& x : a) x = mulmod(x, kk, q);
    }

    std::vector<i64> mul_level(int level, const i64* a, const i64* b) const {
        if (level == 0) return {mulmod(a[0], b[0], q)};
        const StepData& st = steps[(size_t)level - 1];
        int sd = dim_at(level - 1);
        int deg = st.deg;
        std::vector<std::vector<i64>> conv((size_t)(2 * deg - 1));
        for (auto& blk : conv) blk.assign((size_t)sd, 0);
        for (int i = 0; i < deg; ++i) {
            const i64* ai = a + (size_t)i * sd;
            if (std::all_of(ai, ai + sd, [](i64 v) { return v == 0; })) continue;
            for (int j = 0; j < deg; ++j) {
                std::vector<i64> prod = mul_level(level - 1, ai, b + (size_t)j * sd);
                add_into(conv[(size_t)(i + j)], prod);
            }
        }
        std::vector<i64> out((size_t)st.dim, 0);
        for (int i = 0; i < deg; ++i)
            std::copy(conv[(size_t)i].begin(), conv[(size_t)i].end(), out.begin() + (size_t)i * sd);
        for (int t = deg; t <= 2 * deg - 2; ++t) {
            const std::vector<i64>& red = st.xpow[(size_t)(t - deg)];
            const std::vector<i64>& blk = conv[(size_t)t];
            if (std::all_of(blk.begin(), blk.end(), [](i64 v) { return v == 0; })) continue;
            for (int j = 0; j < deg; ++j) {
                std::vector<i64> prod = mul_level(level - 1, red.data() + (size_t)j * sd, blk.data());
                for (int s = 0; s < sd; ++s)
                    out[(size_t)j * sd + (size_t)s] = addmod(out[(size_t)j * sd + (size_t)s], prod[(size_t)s], q);
            }
        }
        return out;
    }

    std::vector<i64> mul_flat(int level, const std::vector<i64>& a, const std::vector<i64>& b) const {
        return mul_level(level, a.data(), b.data());
    }

    std::vector<i64> mul_by_gen(int level, const std::vector<i64>& a) const {
        const StepData& st = steps[(size_t)level - 1];
        int sd = dim_at(level - 1);
        int deg = st.deg;
        std::vector<i64> out((size_t)st.dim, 0);
        for (int j = 0; j < deg - 1; ++j)
            for (int s = 0; s < sd; ++s) out[(size_t)(j + 1) * sd + (size_t)s] = a[(size_t)j * sd + (size_t)s];
        const i64* topblk = a.data() + (size_t)(deg - 1) * sd;
        if (!std::all_of(topblk, topblk + sd, [](i64 v) { return v == 0; })) {
            for (int j = 0; j < deg; ++j) {
                std::vector<i64> prod = mul_level(level - 1, st.poly[(size_t)j].data(), topblk);
                for (int s = 0; s < sd; ++s)
                    out[(size_t)j * sd + (size_t)s] = submod(out[(size_t)j * sd + (size_t)s], prod[(size_t)s], q);
            }
        }
        return out;
    }

    int val_level(int level, const i64* a) const {
        if (level == 0) {
            int v = val_p(a[0], p, prec_p);
            return v == prec_p ? kValInfinity : v;
        }
        const StepData& st = steps[(size_t)level - 1];
        int sd = dim_at(level - 1);
        int best = kValInfinity;
        for (int j = 0; j < st.deg; ++j) {
            int v = val_level(level - 1, a + (size_t)j * sd);
            if (v >= kValInfinity / 2) continue;
            int here = st.kind == StepKind::eisenstein ? st.deg * v + j : v;
            best = std::min(best, here);
        }
        return best;
    }
};

} // namespace detail

using detail::FieldData;
using detail::kValInfinity;
using detail::StepData;

// ---------------------------------------------------------------------------
// construction helpers

namespace {

std::vector<int> extend_residue_idx(const FieldData& fd, const std::vector<int>& prev, int level) {
    const StepData& st = fd.steps[(size_t)level - 1];
    int sd = fd.dim_at(level - 1);
    std::vector<int> idx;
    int reach = st.kind == StepKind::unramified ? st.deg : 1;
    for (int j = 0; j < reach; ++j)
        for (int base : prev) idx.push_back(j * sd + base);
    return idx;
}

// residue-field evaluation of the step polynomial; used to verify that
// unramified steps stay irreducible mod p (degree <= 3: no-root criterion)
void validate_step(const FieldData& fd, int level, const StepData& st, const std::vector<int>& sub_res_idx) {
    if (st.deg < 2) fail(Errc::config_error, "tower step must have degree >= 2");
    auto val_of = [&](const std::vector<i64>& flat) { return fd.val_level(level - 1, flat.data()); };
    if (st.kind == StepKind::eisenstein) {
        if (val_of(st.poly[0]) != 1) fail(Errc::config_error, "Eisenstein step: constant term must have valuation 1");
        for (int i = 1; i < st.deg; ++i)
            if (val_of(st.poly[(size_t)i]) < 1)
                fail(Errc::config_error, "Eisenstein step: non-leading coefficient must have valuation >= 1");
        return;
    }
    if (st.deg > 3)
        fail(Errc::config_error, "unramified steps of degree > 3 are not supported by the validator");
    // enumerate the residue field of the subfield and evaluate
    int fdim = (int)sub_res_idx.size();
    int sd = fd.dim_at(level - 1);
    std::vector<i64> digit((size_t)fdim, 0);
    auto res_mul = [&](const std::vector<i64>& a, const std::vector<i64>& b) {
        std::vector<i64> fa((size_t)sd, 0), fb((size_t)sd, 0);
        for (int i = 0; i < fdim; ++i) {
            fa[(size_t)sub_res_idx[(size_t)i]] = a[(size_t)i];
            fb[(size_t)sub_res_idx[(size_t)i]] = b[(size_t)i];
        }
        std::vector<i64> prod = fd.mul_flat(level - 1, fa, fb);
        std::vector<i64> r((size_t)fdim);
        for (int i = 0; i < fdim; ++i) r[(size_t)i] = prod[(size_t)sub_res_idx[(size_t)i]] % fd.p;
        return r;
    };
    for (;;) {
        // evaluate poly at `digit`
        std::vector<i64> acc((size_t)fdim, 0);
        std::vector<i64> pw((size_t)fdim, 0);
        pw[0] = 1;
        for (int i = 0; i <= st.deg; ++i) {
            std::vector<i64> ci((size_t)fdim, 0);
            if (i < st.deg) {
                for (int k = 0; k < fdim; ++k) ci[(size_t)k] = st.poly[(size_t)i][(size_t)sub_res_idx[(size_t)k]] % fd.p;
            } else {
                ci[0] = 1;
            }
            std::vector<i64> term = res_mul(ci, pw);
            for (int k = 0; k < fdim; ++k) acc[(size_t)k] = (acc[(size_t)k] + term[(size_t)k]) % fd.p;
            if (i < st.deg) pw = res_mul(pw, digit);
        }
        if (std::all_of(acc.begin(), acc.end(), [](i64 v) { return v == 0; }))
            fail(Errc::config_error, "unramified step polynomial has a root mod p (not irreducible)");
        int i = 0;
        while (i < fdim && ++digit[(size_t)i] == fd.p) digit[(size_t)i++] = 0;
        if (i == fdim) break;
    }
}

} // namespace

LocalField LocalField::qp(i64 p, int prec_p) { return make(p, {}, prec_p); }

LocalField LocalField::make(i64 p, const std::vector<TowerStep>& steps, int prec_p) {
    if (p < 3 || !is_prime_u64((u64)p)) fail(Errc::invalid_prime, "p must be an odd prime >= 3");
    if (prec_p < 1) fail(Errc::config_error, "working precision must be >= 1");
    auto fd = std::make_shared<FieldData>();
    fd->p = p;
    fd->prec_p = prec_p;
    fd->q = pow_checked(p, prec_p);
    fd->residue_idx.push_back({0});

    for (const TowerStep& in : steps) {
        StepData st;
        st.kind = in.kind;
        st.deg = (int)in.poly.size();
        int level = (int)fd->steps.size() + 1;
        int sd = fd->dim_at(level - 1);
        st.dim = sd * st.deg;
        st.e = fd->e_at(level - 1) * (in.kind == StepKind::eisenstein ? st.deg : 1);
        st.f = fd->f_at(level - 1) * (in.kind == StepKind::unramified ? st.deg : 1);
        st.poly.assign((size_t)st.deg, std::vector<i64>((size_t)sd, 0));
        for (int i = 0; i < st.deg; ++i) {
            if ((int)in.poly[(size_t)i].size() != sd) fail(Errc::config_error, "step coefficient has wrong dimension");
            for (int s = 0; s < sd; ++s) {
                i64 v = in.poly[(size_t)i][(size_t)s] % fd->q;
                if (v < 0) v += fd->q;
                st.poly[(size_t)i][(size_t)s] = v;
            }
        }
        st.gen_in_top = in.gen_in_top;
        validate_step(*fd, level, st, fd->residue_idx.back());

        StepData& stored = fd->steps.emplace_back(std::move(st));
        // X^{deg+i} mod poly
        std::vector<i64> cur((size_t)stored.dim, 0);
        for (int j = 0; j < stored.deg; ++j)
            for (int s = 0; s < sd; ++s)
                cur[(size_t)j * sd + (size_t)s] = negmod(stored.poly[(size_t)j][(size_t)s], fd->q);
        for (int i = 0; i <= stored.deg - 2; ++i) {
            stored.xpow.push_back(cur);
            if (i < stored.deg - 2) cur = fd->mul_by_gen(level, cur);
        }
        // Newton power sums s_0..s_{deg-1}
        int deg = stored.deg;
        std::vector<std::vector<i64>> s((size_t)deg);
        s[0].assign((size_t)sd, 0);
        s[0][0] = (i64)deg % fd->q;
        for (int k = 1; k < deg; ++k) {
            std::vector<i64> acc = stored.poly[(size_t)(deg - k)];
            fd->scale_into(acc, (i64)k);
            for (int j = 1; j < k; ++j) {
                std::vector<i64> t = fd->mul_flat(level - 1, stored.poly[(size_t)(deg - j)], s[(size_t)(k - j)]);
                fd->add_into(acc, t);
            }
            for (auto& x : acc) x = negmod(x, fd->q);
            s[(size_t)k] = std::move(acc);
        }
        stored.powersums = std::move(s);
        fd->residue_idx.push_back(extend_residue_idx(*fd, fd->residue_idx.back(), level));
    }

    int L = (int)fd->steps.size();
    fd->unif.resize((size_t)L + 1);
    fd->unif_inv.resize((size_t)L + 1);
    fd->unif_inv_dp.assign((size_t)L + 1, 0);
    fd->dgen_dtop.resize((size_t)L + 1);

    for (int lev = 0; lev <= L; ++lev) {
        int src = 0;
        for (int k = 1; k <= lev; ++k)
            if (fd->steps[(size_t)k - 1].kind == StepKind::eisenstein) src = k;
        std::vector<i64> u((size_t)fd->dim_at(lev), 0);
        if (src == 0) u[0] = p % fd->q;
        else u[(size_t)fd->dim_at(src - 1)] = 1;
        fd->unif[(size_t)lev] = std::move(u);
    }

    for (int lev = 0; lev <= L; ++lev) {
        LocalField Fl(fd, lev);
        FieldElement pi = Fl.uniformizer();
        int e = fd->e_at(lev);
        FieldElement z = pi.pow(e).mul_p_power(-1).canonical();
        if (z.denom_exp() != 0 || !z.is_unit())
            fail(Errc::config_error, "tower data inconsistent (pi^e/p is not a unit)");
        FieldElement inv = (pi.pow(e - 1) * z.inv()).mul_p_power(-1);
        fd->unif_inv[(size_t)lev] = inv.coords();
        fd->unif_inv_dp[(size_t)lev] = inv.denom_exp();
    }

    if (L >= 1) {
        LocalField TopF(fd, L);
        bool top_eis = fd->steps[(size_t)L - 1].kind == StepKind::eisenstein;
        for (int k = 1; k <= L; ++k) {
            const StepData& st = fd->steps[(size_t)k - 1];
            if (k == L && top_eis) {
                fd->dgen_dtop[(size_t)k] = TopF.one().coords();
            } else if (st.kind == StepKind::unramified) {
                fd->dgen_dtop[(size_t)k] = TopF.zero().coords();
            } else if (!st.gen_in_top.empty() && top_eis) {
                FieldElement gen = TopF.generator();
                FieldElement acc = TopF.zero();
                FieldElement gp = TopF.one();
                for (size_t i = 1; i < st.gen_in_top.size(); ++i) {
                    acc += gp.scaled((i64)i * st.gen_in_top[i]);
                    if (i + 1 < st.gen_in_top.size()) gp *= gen;
                }
                fd->dgen_dtop[(size_t)k] = acc.coords();
            }
        }
    }

    return LocalField(fd, L);
}

LocalField LocalField::cyclotomic(i64 p, int n, int prec_p) {
    return cyclotomic_tower(p, std::vector<int>{n}, prec_p);
}

namespace {

// (1+X)^m - 1 coefficients mod q (m small)
std::vector<i64> one_plus_x_pow_minus_one(i64 m, i64 q) {
    std::vector<i64> row((size_t)m + 1, 0);
    row[0] = 1;
    for (i64 i = 1; i <= m; ++i) {
        std::vector<i64> nxt((size_t)m + 1, 0);
        for (i64 j = 0; j <= i; ++j) {
            i64 a = row[(size_t)j];
            i64 b = j >= 1 ? row[(size_t)j - 1] : 0;
            nxt[(size_t)j] = addmod(a, b, q);
        }
        row = std::move(nxt);
    }
    row[0] = 0;
    return row;
}

// minimal polynomial of pi_n = zeta_{p^n} - 1 over Q_p:
// ((1+X)^{p^n} - 1) / ((1+X)^{p^{n-1}} - 1), monic of degree p^{n-1}(p-1)
std::vector<i64> cyclotomic_pin_poly(i64 p, int n, i64 q) {
    i64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    std::vector<i64> num = one_plus_x_pow_minus_one(pn, q);
    std::vector<i64> den = one_plus_x_pow_minus_one(pn / p, q);
    num.erase(num.begin());
    den.erase(den.begin());
    int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
    std::vector<i64> quot((size_t)(dn - dd) + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
        i64 c = num[(size_t)(k + dd)];
        quot[(size_t)k] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j)
            num[(size_t)(k + j)] = submod(num[(size_t)(k + j)], mulmod(c, den[(size_t)j], q), q);
    }
    return quot;
}

// f^(m)(X) for f = (1+X)^p - 1, as integer coefficients mod q
std::vector<i64> iterate_cyclo_f(i64 p, int m, i64 q) {
    std::vector<i64> cur = {0, 1};
    for (int it = 0; it < m; ++it) {
        std::vector<i64> base = cur;
        base[0] = addmod(base[0], 1, q);
        std::vector<i64> acc = {1};
        for (i64 i = 0; i < p; ++i) {
            std::vector<i64> nxt(acc.size() + base.size() - 1, 0);
            for (size_t a = 0; a < acc.size(); ++a) {
                if (acc[a] == 0) continue;
                for (size_t b = 0; b < base.size(); ++b)
                    nxt[a + b] = addmod(nxt[a + b], mulmod(acc[a], base[b], q), q);
            }
            acc = std::move(nxt);
        }
        acc[0] = submod(acc[0], 1, q);
        cur = std::move(acc);
    }
    return cur;
}

} // namespace

LocalField LocalField::cyclotomic_tower(i64 p, const std::vector<int>& levels, int prec_p) {
    if (levels.empty()) fail(Errc::config_error, "cyclotomic tower needs at least one level");
    for (size_t i = 0; i < levels.size(); ++i)
        if (levels[i] < 1 || (i > 0 && levels[i] <= levels[i - 1]))
            fail(Errc::config_error, "cyclotomic levels must be strictly increasing and >= 1");
    i64 q = pow_checked(p, prec_p);
    auto phi = [&](int n) {
        i64 e = p - 1;
        for (int i = 0; i < n - 1; ++i) e *= p;
        return (int)e;
    };
    std::vector<TowerStep> steps;
    {
        TowerStep st;
        st.kind = StepKind::eisenstein;
        std::vector<i64> poly = cyclotomic_pin_poly(p, levels[0], q);
        int deg = (int)poly.size() - 1;
        st.poly.resize((size_t)deg);
        for (int i = 0; i < deg; ++i) st.poly[(size_t)i] = {poly[(size_t)i]};
        st.gen_in_top = iterate_cyclo_f(p, levels.back() - levels[0], q);
        steps.push_back(std::move(st));
    }
    for (size_t li = 1; li < levels.size(); ++li) {
        int diff = levels[li] - levels[li - 1];
        std::vector<i64> fpoly = iterate_cyclo_f(p, diff, q);
        int deg = (int)fpoly.size() - 1;
        int dim_prev = phi(levels[li - 1]);
        int gen_idx_prev = li == 1 ? 1 : phi(levels[li - 2]); // flat index of the previous generator
        TowerStep st;
        st.kind = StepKind::eisenstein;
        st.poly.resize((size_t)deg);
        for (int i = 0; i < deg; ++i) {
            std::vector<i64> c((size_t)dim_prev, 0);
            c[0] = fpoly[(size_t)i];
            st.poly[(size_t)i] = std::move(c);
        }
        // constant coefficient -= pi_{previous level}
        st.poly[0][(size_t)gen_idx_prev] = submod(st.poly[0][(size_t)gen_idx_prev], 1, q);
        st.gen_in_top = iterate_cyclo_f(p, levels.back() - levels[li], q);
        steps.push_back(std::move(st));
    }
    return make(p, steps, prec_p);
}

// ---------------------------------------------------------------------------
// LocalField accessors

i64 LocalField::p() const { return data_->p; }
int LocalField::prec_p() const { return data_->prec_p; }
i64 LocalField::modulus() const { return data_->q; }
int LocalField::levels() const { return (int)data_->steps.size(); }
int LocalField::dim() const { return data_->dim_at(top_); }
int LocalField::e() const { return data_->e_at(top_); }
int LocalField::f() const { return data_->f_at(top_); }
int LocalField::dim_at(int level) const { return data_->dim_at(level); }
int LocalField::e_at(int level) const { return data_->e_at(level); }
StepKind LocalField::step_kind(int step) const { return data_->steps[(size_t)step - 1].kind; }
int LocalField::step_degree(int step) const { return data_->steps[(size_t)step - 1].deg; }

LocalField LocalField::subfield(int level) const {
    if (level < 0 || level > top_) fail(Errc::not_a_subfield, "subfield level out of range");
    return LocalField(data_, level);
}

int LocalField::prec_cap(int dp) const { return e() * (data_->prec_p - dp); }

FieldElement LocalField::zero() const {
    return FieldElement(data_, top_, std::vector<i64>((size_t)dim(), 0), 0, prec_cap());
}

FieldElement LocalField::one() const { return from_int(1); }

FieldElement LocalField::from_int(i64 x) const {
    std::vector<i64> c((size_t)dim(), 0);
    i64 v = x % data_->q;
    if (v < 0) v += data_->q;
    c[0] = v;
    return FieldElement(data_, top_, std::move(c), 0, prec_cap());
}

FieldElement LocalField::from_coords(std::vector<i64> coords, int dp, int prec) const {
    if ((int)coords.size() != dim()) fail(Errc::config_error, "coordinate vector has wrong dimension");
    for (auto& x : coords) {
        x %= data_->q;
        if (x < 0) x += data_->q;
    }
    return FieldElement(data_, top_, std::move(coords), dp, std::min(prec, prec_cap(dp)));
}

FieldElement LocalField::generator() const {
    if (top_ == 0) fail(Errc::config_error, "Q_p has no step generator");
    std::vector<i64> c((size_t)dim(), 0);
    c[(size_t)data_->dim_at(top_ - 1)] = 1;
    return FieldElement(data_, top_, std::move(c), 0, prec_cap());
}

FieldElement LocalField::generator_of_step(int k) const {
    if (k < 1 || k > top_) fail(Errc::not_a_subfield, "step out of range");
    std::vector<i64> c((size_t)dim(), 0);
    c[(size_t)data_->dim_at(k - 1)] = 1;
    return FieldElement(data_, top_, std::move(c), 0, prec_cap());
}

FieldElement LocalField::uniformizer() const {
    return FieldElement(data_, top_, data_->unif[(size_t)top_], 0, prec_cap());
}

FieldElement LocalField::pi_inverse() const {
    int dp = data_->unif_inv_dp[(size_t)top_];
    return FieldElement(data_, top_, data_->unif_inv[(size_t)top_], dp, prec_cap(dp));
}

FieldElement LocalField::one_plus_generator() const { return one() + generator(); }

// ---------------------------------------------------------------------------
// FieldElement basics

LocalField FieldElement::field() const { return LocalField(fd_, level_); }
i64 FieldElement::p() const { return fd_->p; }

void FieldElement::require_same(const FieldElement& o) const {
    if (fd_ != o.fd_ || level_ != o.level_) fail(Errc::ambient_mismatch, "operands belong to different fields");
}

FieldElement FieldElement::canonical() const {
    FieldElement r = *this;
    while (r.dp_ > 0 && std::all_of(r.c_.begin(), r.c_.end(), [&](i64 x) { return x % fd_->p == 0; })) {
        for (auto& x : r.c_) x /= fd_->p;
        r.dp_ -= 1;
    }
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same(o);
    const FieldData& fd = *fd_;
    int dp = std::max(dp_, o.dp_);
    std::vector<i64> a = c_, b = o.c_;
    if (dp_ < dp) fd.scale_into(a, pow_checked(fd.p, dp - dp_));
    if (o.dp_ < dp) fd.scale_into(b, pow_checked(fd.p, dp - o.dp_));
    fd.add_into(a, b);
    int e = fd.e_at(level_);
    int prec = std::min({prec_, o.prec_, e * (fd.prec_p - dp)});
    return FieldElement(fd_, level_, std::move(a), dp, prec).canonical();
}

FieldElement FieldElement::operator-() const {
    std::vector<i64> c = c_;
    for (auto& x : c) x = negmod(x, fd_->q);
    return FieldElement(fd_, level_, std::move(c), dp_, prec_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same(o);
    const FieldData& fd = *fd_;
    std::vector<i64> c = fd.mul_flat(level_, c_, o.c_);
    int dp = dp_ + o.dp_;
    auto va = valuation_opt(), vb = o.valuation_opt();
    int e = fd.e_at(level_);
    int cap = e * (fd.prec_p - dp);
    int prec;
    if (!va && !vb) prec = prec_ + o.prec_;
    else if (!va) prec = prec_ + *vb;
    else if (!vb) prec = o.prec_ + *va;
    else prec = std::min(prec_ + *vb, o.prec_ + *va);
    return FieldElement(fd_, level_, std::move(c), dp, std::min(prec, cap)).canonical();
}

FieldElement FieldElement::scaled(i64 k) const {
    std::vector<i64> c = c_;
    fd_->scale_into(c, k);
    return FieldElement(fd_, level_, std::move(c), dp_, prec_).canonical();
}

FieldElement FieldElement::mul_p_power(int k) const {
    FieldElement r = *this;
    int e = fd_->e_at(level_);
    if (k >= 0) {
        int cancel = std::min(k, r.dp_);
        r.dp_ -= cancel;
        if (k > cancel) fd_->scale_into(r.c_, pow_checked(fd_->p, k - cancel));
        r.prec_ = std::min(r.prec_ + e * k, e * (fd_->prec_p - r.dp_));
    } else {
        r.dp_ += -k;
        if (fd_->prec_p - r.dp_ <= 0) fail(Errc::precision_exhausted, "denominator exceeds the working modulus");
        r.prec_ = std::min(r.prec_ + e * k, e * (fd_->prec_p - r.dp_));
    }
    return r.canonical();
}

FieldElement FieldElement::div_exact_int(i64 k) const {
    if (k == 0) fail(Errc::non_invertible, "division by zero integer");
    bool neg = k < 0;
    if (neg) k = -k;
    int a = 0;
    while (k % fd_->p == 0) {
        k /= fd_->p;
        ++a;
    }
    FieldElement r = scaled(invmod_unit(k % fd_->q, fd_->p, fd_->prec_p)).mul_p_power(-a);
    return neg ? -r : r;
}

std::optional<int> FieldElement::valuation_opt() const {
    int vraw = fd_->val_level(level_, c_.data());
    if (vraw >= kValInfinity / 2) return std::nullopt;
    int v = vraw - fd_->e_at(level_) * dp_;
    if (v >= prec_) return std::nullopt;
    return v;
}

int FieldElement::valuation() const {
    auto v = valuation_opt();
    if (!v) fail(Errc::precision_exhausted, "valuation indistinguishable from infinity at this precision");
    return *v;
}

bool FieldElement::is_unit() const {
    auto v = valuation_opt();
    return v && *v == 0;
}

bool FieldElement::equals(const FieldElement& o) const { return (*this - o).is_zero(); }

bool FieldElement::equals_mod(const FieldElement& o, int piv) const {
    FieldElement d = *this - o;
    if (d.prec_ < piv) fail(Errc::precision_exhausted, "comparison beyond certified precision");
    auto v = d.valuation_opt();
    return !v || *v >= piv;
}

FieldElement FieldElement::with_precision(int prec) const {
    FieldElement r = *this;
    r.prec_ = std::min(prec, fd_->e_at(level_) * (fd_->prec_p - dp_));
    return r;
}

FieldElement FieldElement::inv() const {
    const FieldData& fd = *fd_;
    auto vo = valuation_opt();
    if (!vo) fail(Errc::non_invertible, "inverse of an element indistinguishable from 0");
    int v = *vo;
    LocalField F = field();
    FieldElement u = *this;
    if (v > 0) {
        FieldElement piinv = F.pi_inverse();
        for (int i = 0; i < v; ++i) u *= piinv;
    } else if (v < 0) {
        FieldElement pi = F.uniformizer();
        for (int i = 0; i < -v; ++i) u *= pi;
    }
    u = u.canonical();
    if (u.dp_ != 0) fail(Errc::non_invertible, "internal: unit part retained a denominator");

    int D = (int)u.c_.size();
    std::vector<std::vector<i64>> M((size_t)D, std::vector<i64>((size_t)D, 0));
    for (int j = 0; j < D; ++j) {
        std::vector<i64> basis((size_t)D, 0);
        basis[(size_t)j] = 1;
        std::vector<i64> col = fd.mul_flat(level_, u.c_, basis);
        for (int i = 0; i < D; ++i) M[(size_t)i][(size_t)j] = col[(size_t)i];
    }
    std::vector<i64> rhs((size_t)D, 0);
    rhs[0] = 1;
    std::vector<bool> colused((size_t)D, false);
    std::vector<int> pivcol((size_t)D, -1);
    for (int r = 0; r < D; ++r) {
        int pr = -1, pc = -1;
        for (int r2 = r; r2 < D && pr < 0; ++r2)
            for (int c = 0; c < D; ++c)
                if (!colused[(size_t)c] && M[(size_t)r2][(size_t)c] % fd.p != 0) {
                    pr = r2;
                    pc = c;
                    break;
                }
        if (pr < 0) fail(Errc::non_invertible, "multiplication matrix not invertible at working modulus");
        if (pr != r) {
            std::swap(M[(size_t)pr], M[(size_t)r]);
            std::swap(rhs[(size_t)pr], rhs[(size_t)r]);
        }
        colused[(size_t)pc] = true;
        pivcol[(size_t)r] = pc;
        i64 ipiv = invmod_unit(M[(size_t)r][(size_t)pc], fd.p, fd.prec_p);
        for (int c = 0; c < D; ++c) M[(size_t)r][(size_t)c] = mulmod(M[(size_t)r][(size_t)c], ipiv, fd.q);
        rhs[(size_t)r] = mulmod(rhs[(size_t)r], ipiv, fd.q);
        for (int r2 = 0; r2 < D; ++r2) {
            if (r2 == r) continue;
            i64 m = M[(size_t)r2][(size_t)pc];
            if (m == 0) continue;
            for (int c = 0; c < D; ++c)
                M[(size_t)r2][(size_t)c] = submod(M[(size_t)r2][(size_t)c], mulmod(m, M[(size_t)r][(size_t)c], fd.q), fd.q);
            rhs[(size_t)r2] = submod(rhs[(size_t)r2], mulmod(m, rhs[(size_t)r], fd.q), fd.q);
        }
    }
    std::vector<i64> sol((size_t)D, 0);
    for (int r = 0; r < D; ++r) sol[(size_t)pivcol[(size_t)r]] = rhs[(size_t)r];
    FieldElement ui(fd_, level_, std::move(sol), 0, u.prec_);
    FieldElement r = ui;
    if (v > 0) {
        FieldElement piinv = F.pi_inverse();
        for (int i = 0; i < v; ++i) r *= piinv;
    } else if (v < 0) {
        FieldElement pi = F.uniformizer();
        for (int i = 0; i < -v; ++i) r *= pi;
    }
    int e = fd.e_at(level_);
    return r.with_precision(std::min({r.precision(), prec_ - 2 * v, e * (fd.prec_p - r.denom_exp())}));
}

FieldElement FieldElement::pow(i64 n) const {
    if (n < 0) return inv().pow(-n);
    FieldElement r = field().one();
    FieldElement b = *this;
    u64 e = (u64)n;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::div_pi_exact(int k) const {
    if (k == 0) return *this;
    LocalField F = field();
    FieldElement r = *this;
    if (k > 0) {
        FieldElement piinv = F.pi_inverse();
        for (int i = 0; i < k; ++i) r *= piinv;
    } else {
        FieldElement pi = F.uniformizer();
        for (int i = 0; i < -k; ++i) r *= pi;
    }
    r = r.canonical();
    auto v = r.valuation_opt();
    if (v && *v < 0) fail(Errc::division_mismatch, "division by pi^k is not exact");
    return r;
}

FieldElement FieldElement::embed_to(const LocalField& bigger) const {
    if (bigger.data_ptr() != fd_.get()) fail(Errc::not_a_subfield, "embedding across unrelated towers");
    if (bigger.top() < level_) fail(Errc::not_a_subfield, "embedding into a smaller field");
    std::vector<i64> c((size_t)bigger.dim(), 0);
    std::copy(c_.begin(), c_.end(), c.begin());
    int scale = fd_->e_at(bigger.top()) / fd_->e_at(level_);
    int prec = std::min(prec_ * scale, bigger.prec_cap(dp_));
    return FieldElement(fd_, bigger.top(), std::move(c), dp_, prec);
}

// ---------------------------------------------------------------------------
// trace / norm / different

FieldElement step_trace(const FieldElement& x) {
    const FieldData* fd = x.field().data_ptr();
    int level = x.level();
    if (level == 0) fail(Errc::not_a_subfield, "no step below Q_p");
    const StepData& st = fd->steps[(size_t)level - 1];
    int sd = fd->dim_at(level - 1);
    LocalField sub = x.field().subfield(level - 1);
    std::vector<i64> acc((size_t)sd, 0);
    for (int j = 0; j < st.deg; ++j) {
        std::vector<i64> blk(x.coords().begin() + (size_t)j * sd, x.coords().begin() + (size_t)(j + 1) * sd);
        std::vector<i64> t = fd->mul_flat(level - 1, blk, st.powersums[(size_t)j]);
        for (int s = 0; s < sd; ++s) acc[(size_t)s] = addmod(acc[(size_t)s], t[(size_t)s], fd->q);
    }
    int estep = st.kind == StepKind::eisenstein ? st.deg : 1;
    int xp = x.precision();
    int prec = xp >= 0 ? xp / estep : -((-xp + estep - 1) / estep);
    return sub.from_coords(std::move(acc), x.denom_exp(), prec).canonical();
}

FieldElement det_matrix(std::vector<std::vector<FieldElement>> m, const LocalField& F) {
    int n = (int)m.size();
    FieldElement det = F.one();
    int sign = 1;
    for (int r = 0; r < n; ++r) {
        int pr = -1, pc = -1, best = kValInfinity;
        for (int i = r; i < n; ++i)
            for (int j = r; j < n; ++j) {
                auto v = m[(size_t)i][(size_t)j].valuation_opt();
                if (v && *v < best) {
                    best = *v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) {
            int prec = m[(size_t)r][(size_t)r].precision();
            return F.zero().with_precision(std::min(det.precision(), prec));
        }
        if (pr != r) {
            std::swap(m[(size_t)pr], m[(size_t)r]);
            sign = -sign;
        }
        if (pc != r) {
            for (int i = 0; i < n; ++i) std::swap(m[(size_t)i][(size_t)pc], m[(size_t)i][(size_t)r]);
            sign = -sign;
        }
        FieldElement piv = m[(size_t)r][(size_t)r];
        det *= piv;
        FieldElement ipiv = piv.inv();
        for (int i = r + 1; i < n; ++i) {
            FieldElement f = m[(size_t)i][(size_t)r] * ipiv;
            if (f.is_zero()) continue;
            for (int j = r; j < n; ++j) m[(size_t)i][(size_t)j] -= f * m[(size_t)r][(size_t)j];
        }
    }
    return sign < 0 ? -det : det;
}

namespace {

FieldElement step_norm(const FieldElement& x) {
    const FieldData* fd = x.field().data_ptr();
    int level = x.level();
    const StepData& st = fd->steps[(size_t)level - 1];
    int sd = fd->dim_at(level - 1);
    LocalField sub = x.field().subfield(level - 1);
    int estep = st.kind == StepKind::eisenstein ? st.deg : 1;
    std::vector<std::vector<FieldElement>> M((size_t)st.deg);
    std::vector<i64> cur = x.coords();
    int dp = x.denom_exp();
    int prec = std::min(x.precision() / estep + 1, sub.prec_cap(dp));
    for (int j = 0; j < st.deg; ++j) {
        for (int i = 0; i < st.deg; ++i) {
            std::vector<i64> blk(cur.begin() + (size_t)i * sd, cur.begin() + (size_t)(i + 1) * sd);
            M[(size_t)i].push_back(sub.from_coords(std::move(blk), dp, prec));
        }
        if (j + 1 < st.deg) cur = fd->mul_by_gen(level, cur);
    }
    return det_matrix(std::move(M), sub);
}

} // namespace

std::pair<FieldElement, FieldElement> FieldElement::trace_norm(const LocalField& down_to) const {
    return {trace_to(down_to), norm_to(down_to)};
}

FieldElement FieldElement::trace_to(const LocalField& down_to) const {
    if (down_to.data_ptr() != fd_.get() || down_to.top() > level_)
        fail(Errc::not_a_subfield, "trace target is not a member of the tower");
    FieldElement t = *this;
    for (int lev = level_; lev > down_to.top(); --lev) t = step_trace(t);
    return t;
}

FieldElement FieldElement::norm_to(const LocalField& down_to) const {
    if (down_to.data_ptr() != fd_.get() || down_to.top() > level_)
        fail(Errc::not_a_subfield, "norm target is not a member of the tower");
    FieldElement n = *this;
    for (int lev = level_; lev > down_to.top(); --lev) n = step_norm(n);
    return n;
}

int different_valuation(const LocalField& L, const LocalField& K) {
    if (!L.same_tower(K) || K.top() > L.top()) fail(Errc::not_a_subfield, "different: K must be a member of L's tower");
    const FieldData* fd = L.data_ptr();
    int total = 0;
    for (int step = K.top() + 1; step <= L.top(); ++step) {
        const StepData& st = fd->steps[(size_t)step - 1];
        LocalField Fs = L.subfield(step);
        LocalField sub = L.subfield(step - 1);
        FieldElement gen = Fs.generator();
        FieldElement acc = Fs.zero();
        FieldElement gp = Fs.one();
        for (int i = 1; i < st.deg; ++i) {
            FieldElement ci = sub.from_coords(st.poly[(size_t)i], 0, sub.prec_cap()).embed_to(Fs);
            acc += ci.scaled(i) * gp;
            gp *= gen;
        }
        acc += gp.scaled(st.deg);
        total += acc.valuation() * (fd->e_at(L.top()) / fd->e_at(step));
    }
    return total;
}

FieldElement algebra_norm(const std::vector<FieldElement>& minpoly, const std::vector<FieldElement>& g) {
    if (minpoly.empty()) fail(Errc::config_error, "algebra_norm: empty minimal polynomial");
    LocalField F = minpoly[0].field();
    int d = (int)minpoly.size();
    std::vector<FieldElement> cur = g;
    while ((int)cur.size() > d) {
        FieldElement lead = cur.back();
        cur.pop_back();
        size_t k = cur.size();
        for (int i = 0; i < d; ++i) cur[k - (size_t)d + (size_t)i] -= lead * minpoly[(size_t)i];
    }
    std::vector<FieldElement> col((size_t)d, F.zero());
    for (size_t i = 0; i < cur.size(); ++i) col[i] = cur[i];
    std::vector<std::vector<FieldElement>> M((size_t)d, std::vector<FieldElement>((size_t)d, F.zero()));
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) M[(size_t)i][(size_t)j] = col[(size_t)i];
        if (j + 1 < d) {
            FieldElement lead = col[(size_t)d - 1];
            for (int i = d - 1; i > 0; --i) col[(size_t)i] = col[(size_t)i - 1];
            col[0] = F.zero();
            for (int i = 0; i < d; ++i) col[(size_t)i] -= lead * minpoly[(size_t)i];
        }
    }
    return det_matrix(std::move(M), F);
}

// ---------------------------------------------------------------------------
// derivative w.r.t. the top uniformizer

namespace {

FieldElement deriv_rec(const FieldElement& x, const LocalField& topF) {
    const FieldData* fd = topF.data_ptr();
    int level = x.level();
    if (level == 0) return topF.zero();
    const StepData& st = fd->steps[(size_t)level - 1];
    if (fd->dgen_dtop[(size_t)level].empty())
        fail(Errc::no_representation, "no representation of a tower generator in the top uniformizer");
    FieldElement dgen = topF.from_coords(fd->dgen_dtop[(size_t)level], 0, topF.prec_cap());
    LocalField subF = topF.subfield(level - 1);
    int sd = fd->dim_at(level - 1);
    FieldElement gen = topF.subfield(level).generator().embed_to(topF);
    int estep = st.kind == StepKind::eisenstein ? st.deg : 1;
    int prec = std::min(x.precision() / estep + 1, subF.prec_cap(x.denom_exp()));
    FieldElement acc = topF.zero();
    FieldElement gp = topF.one();     // gen^{j}
    FieldElement gpm = topF.zero();   // gen^{j-1}
    for (int j = 0; j < st.deg; ++j) {
        std::vector<i64> blk(x.coords().begin() + (size_t)j * sd, x.coords().begin() + (size_t)(j + 1) * sd);
        FieldElement aj = subF.from_coords(std::move(blk), x.denom_exp(), prec);
        FieldElement daj = deriv_rec(aj, topF);
        acc += daj * gp;
        if (j >= 1) acc += aj.embed_to(topF) * gpm.scaled(j) * dgen;
        gpm = gp;
        if (j + 1 < st.deg) gp *= gen;
    }
    return acc;
}

} // namespace

FieldElement FieldElement::derivative_dtop() const {
    LocalField topF = field();
    if (topF.top() == 0) fail(Errc::no_representation, "d/dT_d undefined on Q_p");
    return deriv_rec(*this, topF);
}

// ---------------------------------------------------------------------------
// residue field

int LocalField::residue_dim() const { return (int)data_->residue_idx[(size_t)top_].size(); }

std::vector<i64> LocalField::residue(const FieldElement& x) const {
    FieldElement c = x.canonical();
    if (c.denom_exp() != 0) fail(Errc::domain_violation, "residue of a non-integral element");
    if (c.precision() < 1) fail(Errc::precision_exhausted, "residue needs precision >= 1");
    std::vector<i64> r;
    r.reserve(data_->residue_idx[(size_t)top_].size());
    for (int idx : data_->residue_idx[(size_t)top_]) r.push_back(c.coords()[(size_t)idx] % data_->p);
    return r;
}

FieldElement LocalField::lift_residue(const std::vector<i64>& r) const {
    std::vector<i64> c((size_t)dim(), 0);
    const auto& idx = data_->residue_idx[(size_t)top_];
    for (size_t i = 0; i < idx.size() && i < r.size(); ++i) {
        i64 v = r[i] % data_->p;
        if (v < 0) v += data_->p;
        c[(size_t)idx[i]] = v;
    }
    return from_coords(std::move(c), 0, prec_cap());
}

std::vector<i64> LocalField::residue_mul(const std::vector<i64>& a, const std::vector<i64>& b) const {
    return residue(lift_residue(a) * lift_residue(b));
}

std::vector<i64> LocalField::residue_pow(const std::vector<i64>& a, u64 e) const {
    std::vector<i64> r((size_t)residue_dim(), 0);
    r[0] = 1;
    std::vector<i64> base = a;
    while (e) {
        if (e & 1) r = residue_mul(r, base);
        base = residue_mul(base, base);
        e >>= 1;
    }
    return r;
}

std::vector<i64> LocalField::residue_root_pn(const std::vector<i64>& a, int n) const {
    if (std::all_of(a.begin(), a.end(), [](i64 v) { return v == 0; })) return a;
    int f = residue_dim();
    std::vector<i64> r = a;
    for (int i = 0; i < n; ++i) {
        u64 e = 1;
        for (int j = 0; j < f - 1; ++j) e *= (u64)data_->p;
        r = residue_pow(r, e);
    }
    return r;
}

// ---------------------------------------------------------------------------
// p-th roots (branching digit lift, then Newton)

std::vector<FieldElement> LocalField::pth_roots(const FieldElement& x) const {
    const i64 p = data_->p;
    if (!x.is_unit()) fail(Errc::domain_violation, "pth_roots expects a unit");
    int e_ = e();
    if (e_ % (int)(p - 1) != 0) {
        // without mu_p the residue route gives the unique candidate directly
    }
    int jstar = e_ / (int)(p - 1); // boundary level when mu_p is present
    FieldElement pi = uniformizer();
    FieldElement pue = from_int((i64)p).div_pi_exact(e_); // unit p/pi^e
    std::vector<i64> ue = residue(pue);

    // y = y0 (1 + t), adjusted one graded level at a time; branching happens
    // only at the Artin-Schreier boundary m = p*jstar. The homogeneous boundary
    // solutions tau^p + (p/pi^e) tau = 0 are exactly the mu_p-directions, so the
    // start seeds one candidate per root of unity.
    std::vector<FieldElement> cand;
    {
        FieldElement y0 = lift_residue(residue_root_pn(residue(x), 1));
        int fdim = residue_dim();
        std::vector<i64> dg((size_t)fdim, 0);
        for (;;) {
            std::vector<i64> lhs = residue_pow(dg, (u64)p);
            std::vector<i64> term = residue_mul(ue, dg);
            bool hom = true;
            for (int i = 0; i < fdim; ++i)
                if ((lhs[(size_t)i] + term[(size_t)i]) % p != 0) hom = false;
            if (hom) cand.push_back(y0 * (one() + lift_residue(dg) * pi.pow(jstar)));
            int i = 0;
            while (i < fdim && ++dg[(size_t)i] == p) dg[(size_t)i++] = 0;
            if (i == fdim) break;
        }
    }
    std::vector<FieldElement> roots;
    int guard = 0;
    while (!cand.empty()) {
        if (++guard > 4 * x.precision() + 64) fail(Errc::non_convergent, "pth_roots did not stabilize");
        std::vector<FieldElement> next;
        for (const FieldElement& y : cand) {
            FieldElement c = x * y.pow(p).inv() - one();
            auto vm = c.valuation_opt();
            // refinement ends when the residual dies or its usable precision does;
            // accept y as a root at precision within the Hensel-uniqueness slack
            auto accept = [&] {
                FieldElement res = y.pow(p) - x;
                auto vr = res.valuation_opt();
                if (!vr || *vr >= x.precision() - 2 * e_ - 4) {
                    bool dup = false;
                    for (const auto& z : roots)
                        if ((z - y).is_zero()) dup = true;
                    if (!dup) roots.push_back(y);
                }
            };
            if (!vm) {
                accept();
                continue;
            }
            int m = *vm;
            FieldElement cm = c.div_pi_exact(m);
            if (cm.precision() < 1) {
                accept();
                continue;
            }
            std::vector<i64> r = residue(cm);
            if (m < p * jstar && m % (int)p == 0) {
                // Frobenius regime: tau^p = r has the unique residue solution
                std::vector<i64> tau = residue_root_pn(r, 1);
                next.push_back(y * (one() + lift_residue(tau) * pi.pow(m / (int)p)));
            } else if (m == p * jstar) {
                // boundary: tau^p + (p/pi^e) tau = r over the residue field
                int fdim = residue_dim();
                std::vector<i64> dg((size_t)fdim, 0);
                bool found = false;
                for (;;) {
                    std::vector<i64> lhs = residue_pow(dg, (u64)p);
                    std::vector<i64> term = residue_mul(ue, dg);
                    bool eq = true;
                    for (int i = 0; i < fdim; ++i)
                        if ((lhs[(size_t)i] + term[(size_t)i]) % p != ((r[(size_t)i] % p) + p) % p) eq = false;
                    if (eq) {
                        found = true;
                        next.push_back(y * (one() + lift_residue(dg) * pi.pow(jstar)));
                    }
                    int i = 0;
                    while (i < fdim && ++dg[(size_t)i] == p) dg[(size_t)i++] = 0;
                    if (i == fdim) break;
                }
                (void)found; // no solution: the candidate dies
            } else if (m > p * jstar) {
                // Hensel regime: linear in tau at level m - e
                std::vector<i64> uinv = residue_pow(ue, (u64)(pow_checked(p, residue_dim()) - 2));
                std::vector<i64> tau = residue_mul(r, uinv);
                next.push_back(y * (one() + lift_residue(tau) * pi.pow(m - e_)));
            }
            // p*jstar > m with p not dividing m: no p-th root exists on this branch
        }
        cand = std::move(next);
        if ((int)cand.size() > 64) fail(Errc::non_convergent, "pth_roots: branch explosion");
    }
    return roots;
}

bool LocalField::is_pn_power(const FieldElement& x, int n) const {
    if (n == 0) return true;
    for (const auto& r : pth_roots(x))
        if (is_pn_power(r, n - 1)) return true;
    return false;
}

FieldElement coerce_into(const FieldElement& c, const LocalField& L) {
    if (L.data_ptr() == c.field().data_ptr()) return c.embed_to(L);
    if (c.level() != 0 || c.p() != L.p())
        fail(Errc::ambient_mismatch, "cannot transport a non-rational element across towers");
    LocalField base = L.subfield(0);
    int prec = std::min(c.precision(), base.prec_cap(c.denom_exp()));
    return base.from_coords({c.coords()[0]}, c.denom_exp(), prec).embed_to(L);
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    if (dp_) os << "/p^" << dp_;
    os << " + O(pi^" << prec_ << ")";
    return os.str();
}

} // namespace reclab
