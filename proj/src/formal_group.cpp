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

#include "reclab/formal_group.hpp"

#include <algorithm>

namespace reclab {

namespace {

// l_F = integral of 1/F_X(0, X); exp = reversion; iota solves F(X, iota) = 0
void attach_log_exp(FormalGroupLaw& G, int deg) {
    LocalField K = G.field();
    USeries fx0 = u_zero(K, deg); // F_X(0, Y) = sum_j F_{1,j} Y^j
    for (int j = 0; j <= std::min(deg, G.F.dmax - 1); ++j) fx0.c[(size_t)j] = G.F.at(1, j);
    USeries integrand = u_inv_series(fx0, deg - 1);
    G.log = u_integrate(u_trunc(integrand, deg - 1));
    G.exp = u_reversion(G.log, deg);
    // iota = exp(-log(X))
    USeries neglog = u_scale(G.log, K.from_int(-1));
    G.neg = u_compose(G.exp, neglog, deg);
}

} // namespace

FormalGroupLaw fgl_multiplicative(const LocalField& K, int dmax) {
    FormalGroupLaw G;
    G.source = "multiplicative";
    G.F = b_zero(K, dmax);
    G.F.at(1, 0) = K.one();
    G.F.at(0, 1) = K.one();
    if (dmax >= 2) G.F.at(1, 1) = K.one();
    attach_log_exp(G, std::max(dmax, 2));
    return G;
}

FormalGroupLaw fgl_additive(const LocalField& K, int dmax) {
    FormalGroupLaw G;
    G.source = "additive";
    G.F = b_zero(K, dmax);
    G.F.at(1, 0) = K.one();
    G.F.at(0, 1) = K.one();
    attach_log_exp(G, std::max(dmax, 2));
    return G;
}

namespace {

void check_lubin_tate(const USeries& f, const FieldElement& pi, i64 q) {
    LocalField K = f.field();
    if (f.degree() < 1 || !f.at(0).is_zero()) fail(Errc::not_lubin_tate, "f(0) must vanish");
    if (!f.at(1).equals(pi)) fail(Errc::not_lubin_tate, "f'(0) must equal pi");
    for (int i = 2; i <= f.degree(); ++i) {
        FieldElement c = f.at(i);
        if (i == (int)q) c -= K.one();
        auto v = c.valuation_opt();
        if (v && *v < 1) fail(Errc::not_lubin_tate, "f must reduce to X^q mod pi");
    }
    if (f.degree() < (int)q) fail(Errc::not_lubin_tate, "f must reduce to X^q mod pi");
}

} // namespace

USeries lubin_tate_hom(const USeries& f, const USeries& g, const FieldElement& lin,
                       const FieldElement& pi, int deg) {
    LocalField K = f.field();
    USeries phi = u_zero(K, deg);
    phi.c[1] = lin;
    std::vector<FieldElement> pipow; // pi^k
    pipow.push_back(K.one());
    for (int k = 1; k <= deg; ++k) pipow.push_back(pipow.back() * pi);
    for (int k = 2; k <= deg; ++k) {
        // error e = f(phi) - phi(g), zero mod deg k; correct with e_k/(pi^k - pi)
        USeries e = u_sub(u_compose(u_trunc(f, k), u_trunc(phi, k), k),
                          u_compose(u_trunc(phi, k), u_trunc(g, k), k));
        FieldElement ek = e.at(k);
        if (ek.is_zero()) continue;
        FieldElement denom = pipow[(size_t)k] - pi;
        FieldElement corr = ek * denom.inv();
        auto v = corr.valuation_opt();
        if (v && *v < 0) fail(Errc::non_convergent, "Lubin-Tate correction left the integer ring");
        phi.c[(size_t)k] = phi.c[(size_t)k] + corr;
    }
    // verify
    USeries lhs = u_compose(u_trunc(f, deg), phi, deg);
    USeries rhs = u_compose(phi, u_trunc(g, deg), deg);
    for (int i = 0; i <= deg; ++i)
        if (!lhs.at(i).equals(rhs.at(i))) fail(Errc::non_convergent, "Lubin-Tate iteration did not close");
    return phi;
}

FormalGroupLaw lubin_tate_build(const USeries& f, const FieldElement& pi, i64 q, int dmax) {
    check_lubin_tate(f, pi, q);
    LocalField K = f.field();
    FormalGroupLaw G;
    G.source = "lubin-tate";
    G.F = b_zero(K, dmax);
    G.F.at(1, 0) = K.one();
    G.F.at(0, 1) = K.one();
    std::vector<FieldElement> pipow;
    pipow.push_back(K.one());
    for (int k = 1; k <= dmax; ++k) pipow.push_back(pipow.back() * pi);
    for (int k = 2; k <= dmax; ++k) {
        // e = f(F(X,Y)) - F(f(X), f(Y)): homogeneous degree-k part fixes F_k
        // f(F): substitute the bivariate truncation into f
        // lhs = f(F) by Horner (f has no constant term)
        BSeries acc = b_zero(K, dmax);
        for (int i = f.degree(); i >= 1; --i) {
            acc = b_mul(acc, G.F);
            acc.at(0, 0) += f.at(i);
        }
        BSeries lhs = b_mul(acc, G.F);
        // rhs = F(f(X), f(Y)): substitute univariate f into both slots
        USeries fx = u_trunc(f, k);
        // build bivariate from substitution: each monomial X^iY^j -> f(X)^i f(Y)^j
        std::vector<USeries> fpow;
        fpow.push_back(u_trunc(u_from_ints(K, {1}), k));
        for (int i = 1; i <= k; ++i) fpow.push_back(u_mul(fpow.back(), fx, k));
        BSeries rhs = b_zero(K, dmax);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; i + j <= k; ++j) {
                if (G.F.at(i, j).is_zero()) continue;
                for (int a = 0; a <= k; ++a)
                    for (int b = 0; a + b <= k; ++b) {
                        FieldElement t = fpow[(size_t)i].at(a) * fpow[(size_t)j].at(b) * G.F.at(i, j);
                        if (a + b <= dmax) rhs.at(a, b) += t;
                    }
            }
        FieldElement denom = pipow[(size_t)k] - pi;
        FieldElement dinv = denom.inv();
        for (int i = 0; i <= k; ++i) {
            int j = k - i;
            if (j < 0 || j > k) continue;
            FieldElement e = lhs.at(i, j) - rhs.at(i, j);
            if (e.is_zero()) continue;
            FieldElement corr = e * dinv;
            auto v = corr.valuation_opt();
            if (v && *v < 0) fail(Errc::non_convergent, "Lubin-Tate correction left the integer ring");
            G.F.at(i, j) += corr;
        }
    }
    // functional equation check to dmax
    {
        BSeries fF = b_zero(K, dmax);
        {
            BSeries acc = b_zero(K, dmax);
            for (int i = f.degree(); i >= 1; --i) {
                acc = b_mul(acc, G.F);
                acc.at(0, 0) += f.at(i);
            }
            fF = b_mul(acc, G.F);
        }
        BSeries Fff = b_zero(K, dmax);
        {
            std::vector<USeries> fpow;
            fpow.push_back(u_trunc(u_from_ints(K, {1}), dmax));
            for (int i = 1; i <= dmax; ++i) fpow.push_back(u_mul(fpow.back(), u_trunc(f, dmax), dmax));
            for (int i = 0; i <= dmax; ++i)
                for (int j = 0; i + j <= dmax; ++j) {
                    if (G.F.at(i, j).is_zero()) continue;
                    for (int a = 0; a <= dmax; ++a)
                        for (int b = 0; a + b <= dmax; ++b) {
                            if (a + b > dmax) continue;
                            Fff.at(a, b) += fpow[(size_t)i].at(a) * fpow[(size_t)j].at(b) * G.F.at(i, j);
                        }
                }
        }
        if (!b_equal_mod(fF, Fff, std::max(1, K.prec_cap() - 2 * dmax)))
            fail(Errc::non_convergent, "constructed law fails the functional equation");
    }
    attach_log_exp(G, std::max(dmax, 2));
    return G;
}

USeries fgl_times_int(const FormalGroupLaw& F, i64 a, int deg) {
    LocalField K = F.field();
    USeries x = u_zero(K, deg);
    x.c[1] = K.one();
    bool negate = a < 0;
    if (negate) a = -a;
    USeries acc = u_zero(K, deg); // [0] = 0
    for (i64 i = 0; i < a; ++i) {
        // acc = F(acc, X)
        acc = b_subst_uu(F.F, acc, x, deg);
    }
    if (negate) acc = u_compose(u_trunc(F.neg, deg), acc, deg);
    return acc;
}

namespace {

template <typename Elem, typename FromCoeff>
Elem fg_add_generic(const FormalGroupLaw& G, const Elem& x, const Elem& y, FromCoeff from_coeff) {
    std::vector<Elem> xpow, ypow;
    xpow.push_back(from_coeff(G.field().one()));
    ypow.push_back(from_coeff(G.field().one()));
    for (int i = 1; i <= G.F.dmax; ++i) {
        xpow.push_back(xpow.back() * x);
        ypow.push_back(ypow.back() * y);
    }
    Elem acc = from_coeff(G.field().zero());
    for (int i = 0; i <= G.F.dmax; ++i)
        for (int j = 0; i + j <= G.F.dmax; ++j) {
            const FieldElement& c = G.F.at(i, j);
            if (c.is_zero()) continue;
            acc += (xpow[(size_t)i] * ypow[(size_t)j]) * from_coeff(c);
        }
    return acc;
}

} // namespace

FieldElement fg_add(const FormalGroupLaw& G, const FieldElement& x, const FieldElement& y) {
    auto vx = x.valuation_opt(), vy = y.valuation_opt();
    int mx = vx ? *vx : x.precision();
    int my = vy ? *vy : y.precision();
    if (mx < 1 || my < 1) fail(Errc::not_in_maximal_ideal, "formal sum requires v >= 1");
    LocalField L = x.field();
    auto from_coeff = [&](const FieldElement& c) { return coerce_into(c, L); };
    FieldElement r = fg_add_generic(G, x, y, from_coeff);
    return r.with_precision(std::min(r.precision(), (G.F.dmax + 1) * std::min(mx, my)));
}

FieldElement fg_neg(const FormalGroupLaw& G, const FieldElement& x) { return u_eval(G.neg, x); }

FieldElement fg_sub(const FormalGroupLaw& G, const FieldElement& x, const FieldElement& y) {
    return fg_add(G, x, fg_neg(G, y));
}

FieldElement fg_times(const FormalGroupLaw& G, i64 a, const FieldElement& x) {
    i64 aa = a >= 0 ? a : -a;
    FieldElement acc = x.field().zero();
    for (i64 i = 0; i < aa; ++i) acc = fg_add(G, acc, x);
    if (a < 0) acc = fg_neg(G, acc);
    return acc;
}

LaurentElement fg_add(const FormalGroupLaw& G, const LaurentElement& x, const LaurentElement& y) {
    auto vx = x.valuation_opt(), vy = y.valuation_opt();
    int mx = vx ? *vx : x.tail();
    int my = vy ? *vy : y.tail();
    if (mx < 1 || my < 1) fail(Errc::not_in_maximal_ideal, "formal sum requires v >= 1");
    const LaurentField& fld = x.parent();
    auto from_coeff = [&](const FieldElement& c) {
        return LaurentElement::from_coeff(fld, coerce_into(c, fld.coeff));
    };
    LaurentElement r = fg_add_generic(G, x, y, from_coeff);
    return r.truncated_tail((G.F.dmax + 1) * std::min(mx, my));
}

LaurentElement fg_neg(const FormalGroupLaw& G, const LaurentElement& x) { return u_eval_tower(G.neg, x); }

LaurentElement fg_sub(const FormalGroupLaw& G, const LaurentElement& x, const LaurentElement& y) {
    return fg_add(G, x, fg_neg(G, y));
}

LaurentElement fg_times(const FormalGroupLaw& G, i64 a, const LaurentElement& x) {
    i64 aa = a >= 0 ? a : -a;
    LaurentElement acc(x.parent(), x.parent().coeff.prec_cap());
    for (i64 i = 0; i < aa; ++i) acc = fg_add(G, acc, x);
    if (a < 0) acc = fg_neg(G, acc);
    return acc;
}

// ---------------------------------------------------------------------------
// torsion

USeries isogeny_iterate(const USeries& f, int n, int deg) {
    USeries r = u_zero(f.field(), deg);
    r.c[1] = f.field().one();
    for (int i = 0; i < n; ++i) r = u_compose(u_trunc(f, deg), r, deg);
    return r;
}

TorsionData torsion_cyclotomic(const FormalGroupLaw& F, const USeries& f, int n, const LocalField& ambient) {
    TorsionData t;
    t.level = n;
    t.ambient = ambient;
    t.gen = ambient.generator();
    t.f = u_embed(f, ambient);
    USeries fn = isogeny_iterate(t.f, n, std::max(F.dmax(), (int)(f.degree()) * 2));
    FieldElement at = u_eval(fn, t.gen);
    if (!at.is_zero()) fail(Errc::ambient_too_small, "generator is not pi^n-torsion in the ambient field");
    if (n >= 1) {
        USeries fn1 = isogeny_iterate(t.f, n - 1, fn.degree());
        FieldElement below = u_eval(fn1, t.gen);
        if (below.is_zero()) fail(Errc::root_not_found, "generator has level below n");
    }
    return t;
}

FieldElement hensel_refine_root(const USeries& fn, const FieldElement& seed) {
    USeries d = u_derive(fn);
    FieldElement x = seed;
    for (int it = 0; it < 64; ++it) {
        FieldElement fx = u_eval(fn, x);
        if (fx.is_zero()) return x;
        FieldElement dfx = u_eval(d, x);
        auto vf = fx.valuation_opt();
        auto vd = dfx.valuation_opt();
        if (!vd || (vf && *vf <= 2 * *vd)) fail(Errc::root_not_found, "Hensel refinement does not converge from this seed");
        x = x - fx * dfx.inv();
    }
    fail(Errc::root_not_found, "Hensel refinement did not stabilize");
}

TorsionData torsion_level1(const FormalGroupLaw& F, const USeries& f, int work_deg) {
    LocalField K = f.field();
    if (K.top() != 0) fail(Errc::shape_not_supported, "torsion_level1 builds over Q_p only");
    auto [cpoly, unit] = weierstrass_prep(f, work_deg);
    (void)unit;
    int q = (int)cpoly.size();
    if (!cpoly[0].is_zero()) fail(Errc::not_lubin_tate, "isogeny must vanish at 0");
    // P = X^q + c_{q-1}X^{q-1} + ... + c_1 X = X * P1, P1 Eisenstein of degree q-1
    std::vector<std::vector<i64>> poly;
    for (int i = 1; i < q; ++i) {
        FieldElement ci = cpoly[(size_t)i].canonical();
        if (ci.denom_exp() != 0) fail(Errc::non_convergent, "distinguished part not integral");
        poly.push_back(ci.coords());
    }
    TowerStep st;
    st.kind = StepKind::eisenstein;
    st.poly = std::move(poly);
    LocalField ambient = LocalField::make(K.p(), {st}, K.prec_p());
    TorsionData t;
    t.level = 1;
    t.ambient = ambient;
    t.gen = ambient.generator();
    t.f = u_embed(f, ambient); // coefficients transport via coercion
    FieldElement at = u_eval(u_trunc(t.f, work_deg), t.gen);
    if (!at.is_zero()) fail(Errc::root_not_found, "constructed generator does not vanish under f");
    (void)F;
    return t;
}

void enumerate_torsion(const FormalGroupLaw& F, TorsionData& t) {
    i64 pn = 1;
    for (int i = 0; i < t.level; ++i) pn *= t.ambient.p();
    t.all.clear();
    t.all.push_back(t.ambient.zero());
    FieldElement cur = t.ambient.zero();
    for (i64 a = 1; a < pn; ++a) {
        cur = fg_add(F, cur, t.gen);
        t.all.push_back(cur);
    }
}

// ---------------------------------------------------------------------------
// norm series

NormSeriesResult norm_series(const USeries& g, const FormalGroupLaw& F, const USeries& f, int n,
                             const TorsionData& torsion, int work_deg) {
    if (!g.at(0).is_zero()) fail(Errc::config_error, "norm_series requires g(0) = 0");
    if (!g.at(1).is_unit()) fail(Errc::config_error, "norm_series requires g'(0) a unit");
    if ((int)torsion.all.size() == 0) fail(Errc::torsion_missing, "norm_series needs the full kappa_n enumeration");
    LocalField A = torsion.ambient;
    LocalField K = g.field();
    USeries gA = u_embed(g, A);
    BSeries FA = b_embed(F.F, A);
    // s(X) = prod_v g(F(X, v))
    USeries s = u_zero(A, work_deg);
    s.c[0] = A.one();
    for (const FieldElement& v : torsion.all) {
        // F(X, v) as a univariate series in X
        USeries Fv = u_zero(A, work_deg);
        std::vector<FieldElement> vpow;
        vpow.push_back(A.one());
        for (int j = 1; j <= FA.dmax; ++j) vpow.push_back(vpow.back() * v);
        for (int i = 0; i <= std::min(FA.dmax, work_deg); ++i) {
            FieldElement acc = A.zero();
            for (int j = 0; i + j <= FA.dmax; ++j) acc += FA.at(i, j) * vpow[(size_t)j];
            Fv.c[(size_t)i] = acc;
        }
        s = u_mul(s, u_eval_poly(gA, Fv, work_deg), work_deg);
    }
    // divide: s = r(f^{(n)})
    USeries fn = isogeny_iterate(u_embed(f, A), n, work_deg);
    i64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= A.p();
    USeries rem = s;
    USeries r_over_A = u_zero(A, work_deg);
    USeries fnk = u_zero(A, work_deg);
    fnk.c[0] = A.one();
    int maxk = work_deg;
    for (int k = 0; k <= maxk; ++k) {
        // lowest nonvanishing coefficient of fnk is at X^k with value (pi^n)^k
        FieldElement lead = fnk.at(k);
        FieldElement ck = rem.at(k) * lead.inv();
        auto v = ck.valuation_opt();
        if (v && *v < 0) fail(Errc::division_mismatch, "norm series quotient left the integer ring");
        r_over_A.c[(size_t)k] = ck;
        rem = u_sub(rem, u_scale(fnk, ck));
        for (int i = 0; i <= k; ++i)
            if (!rem.at(i).is_zero()) fail(Errc::division_mismatch, "norm series division has a remainder");
        if (k < maxk) fnk = u_mul(fnk, fn, work_deg);
        bool remzero = true;
        for (const auto& cc : rem.c)
            if (!cc.is_zero()) remzero = false;
        if (remzero && k >= 1) break;
    }
    // coefficients must lie in K
    NormSeriesResult out;
    out.r = u_zero(K, r_over_A.degree());
    for (int i = 0; i <= r_over_A.degree(); ++i) {
        FieldElement ci = r_over_A.at(i).canonical();
        FieldElement proj = K.from_coords({ci.coords().empty() ? 0 : ci.coords()[0]}, ci.denom_exp(),
                                          K.prec_cap(ci.denom_exp()));
        if (!(ci - proj.embed_to(A)).is_zero())
            fail(Errc::division_mismatch, "norm series coefficient is not rational over K");
        out.r.c[(size_t)i] = proj.with_precision(std::min(proj.precision(), ci.precision()));
    }
    out.r_prime0 = out.r.at(1);
    // product formula: r'(0) = g'(0) prod_{v != 0} g(v) / pi^n
    FieldElement prod = A.one();
    for (const FieldElement& v : torsion.all) {
        if (v.is_zero()) continue;
        prod *= u_eval(gA, v);
    }
    FieldElement piA = coerce_into(f.at(1), A);
    FieldElement expected = prod * coerce_into(g.at(1), A) * piA.pow(n).inv();
    auto ve = expected.valuation_opt();
    if (ve && *ve < 0) fail(Errc::division_mismatch, "r'(0) product formula is not integral");
    if (!(coerce_into(out.r_prime0, A) - expected).is_zero())
        fail(Errc::division_mismatch, "r'(0) disagrees with the product formula");
    if (!out.r_prime0.is_unit()) fail(Errc::division_mismatch, "r'(0) is not a unit");
    return out;
}

std::vector<FgDigit> fg_digit_expansion(const LaurentElement& y, const FormalGroupLaw& F, int n,
                                        int target_prec) {
    const LaurentField& fld = y.parent();
    LocalField L = fld.coeff;
    auto vy = y.valuation_opt();
    if (vy && *vy < 1) fail(Errc::not_in_maximal_ideal, "digit expansion requires v(y) >= 1");
    i64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= L.p();
    // dividing by pi^k costs ~k/e denominator digits; stay clear of the modulus
    int depth_cap = L.e() * (L.prec_p() - 3);
    int N = std::min({y.tail(), L.prec_cap(), depth_cap});
    if (target_prec > 0) N = std::min(N, target_prec);
    std::vector<FgDigit> digits;
    LaurentElement acc(fld, L.prec_cap()); // running formal sum
    FieldElement pi = L.uniformizer();
    for (int k = 1; k < N; ++k) {
        LaurentElement resid = fg_sub(F, y, acc);
        auto v = resid.valuation_opt();
        if (!v) break;
        if (*v < k) fail(Errc::non_convergent, "digit expansion lost a digit");
        if (*v > k) continue;
        // residue of resid / pi^k in k_L((T...)): decompose as sum gamma^{p^n} T^i
        LaurentElement unit_part = resid.scale(pi.pow(k).inv());
        // collect digit residues per class of the index mod p^n
        std::map<MultiIndex, std::map<MultiIndex, std::vector<i64>>> parts; // ibar -> (j -> residue)
        for (const auto& [idx, c] : unit_part.coeffs()) {
            auto cv = c.valuation_opt();
            if (!cv || *cv >= 1) continue;
            MultiIndex ibar((size_t)fld.nvars), jj((size_t)fld.nvars);
            for (int t = 0; t < fld.nvars; ++t) {
                int i = idx[(size_t)t];
                int r = ((i % (int)pn) + (int)pn) % (int)pn;
                ibar[(size_t)t] = r;
                jj[(size_t)t] = (i - r) / (int)pn;
            }
            std::vector<i64> res = L.residue(c);
            parts[ibar][jj] = L.residue_root_pn(res, n);
        }
        for (auto& [ibar, body] : parts) {
            LaurentElement gamma(fld, L.prec_cap());
            for (auto& [jj, res] : body)
                gamma += LaurentElement::monomial(fld, L.lift_residue(res), jj);
            if (gamma.empty()) continue;
            FgDigit d;
            d.idx = ibar;
            d.k = k;
            d.gamma = gamma;
            digits.push_back(d);
            // acc = acc (+) gamma^{p^n} T^ibar pi^k
            LaurentElement term = gamma.pow(pn);
            term = term.shift(ibar).scale(pi.pow(k));
            acc = fg_add(F, acc, term);
        }
    }
    return digits;
}

LaurentElement fg_digit_reassemble(const std::vector<FgDigit>& digits, const FormalGroupLaw& F,
                                   const LaurentField& fld, int n) {
    i64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= fld.coeff.p();
    FieldElement pi = fld.coeff.uniformizer();
    LaurentElement acc(fld, fld.coeff.prec_cap());
    for (const FgDigit& d : digits) {
        LaurentElement term = d.gamma.pow(pn).shift(d.idx).scale(pi.pow(d.k));
        acc = fg_add(F, acc, term);
    }
    return acc;
}

} // namespace reclab
