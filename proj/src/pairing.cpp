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

#include "reclab/pairing.hpp"

#include "reclab/derivations.hpp"

#include <algorithm>
#include <numeric>

namespace reclab {

// ---------------------------------------------------------------------------
// values in kappa_n

bool PairingValue::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [&](i64 c) { return c % modulus == 0; });
}

PairingValue pv_make(i64 p, int n, i64 coord) {
    PairingValue v;
    v.level = n;
    v.modulus = 1;
    for (int i = 0; i < n; ++i) v.modulus *= p;
    i64 c = coord % v.modulus;
    if (c < 0) c += v.modulus;
    v.coords = {c};
    return v;
}

PairingValue pv_add(const PairingValue& a, const PairingValue& b) {
    if (a.level != b.level || a.coords.size() != b.coords.size())
        fail(Errc::ambient_mismatch, "pairing values at different levels");
    PairingValue r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = (r.coords[i] + b.coords[i]) % r.modulus;
    return r;
}

PairingValue pv_neg(const PairingValue& a) {
    PairingValue r = a;
    for (auto& c : r.coords) c = (r.modulus - c % r.modulus) % r.modulus;
    return r;
}

PairingValue pv_scale(i64 k, const PairingValue& a) {
    PairingValue r = a;
    i64 kk = k % r.modulus;
    if (kk < 0) kk += r.modulus;
    for (auto& c : r.coords) c = mulmod(c, kk, r.modulus);
    return r;
}

bool pv_equal(const PairingValue& a, const PairingValue& b) {
    if (a.level != b.level || a.coords.size() != b.coords.size()) return false;
    for (size_t i = 0; i < a.coords.size(); ++i)
        if ((a.coords[i] - b.coords[i]) % a.modulus != 0) return false;
    return true;
}

PairingValue pv_reduce(const PairingValue& a, int n) {
    if (n > a.level) fail(Errc::config_error, "cannot raise a pairing value's level");
    i64 p = 1;
    // recover p from modulus = p^level
    i64 m = a.modulus;
    for (i64 cand = 2; cand * cand <= m; ++cand) {
        if (m % cand == 0) {
            p = cand;
            break;
        }
    }
    if (p == 1) p = m;
    PairingValue r;
    r.level = n;
    r.modulus = 1;
    for (int i = 0; i < n; ++i) r.modulus *= p;
    for (i64 c : a.coords) r.coords.push_back(c % r.modulus);
    return r;
}

// ---------------------------------------------------------------------------
// logs

FieldElement padic_log(const FieldElement& u) {
    LocalField L = u.field();
    FieldElement w = u - L.one();
    auto vw = w.valuation_opt();
    if (!vw || *vw < 1) fail(Errc::domain_violation, "padic_log requires a principal unit");
    int m = *vw;
    int e = L.e();
    i64 p = L.p();
    int target = L.prec_cap();
    // cutoff K with k*m - e*ceil(log_p k) >= target for all k >= K
    int K = 1;
    for (int k = 1; k < 8 * (target + e + 4); ++k) {
        int lg = 0;
        i64 pw = 1;
        while (pw < k) {
            pw *= p;
            ++lg;
        }
        if (k * m - e * lg < target + 1) K = k + 1;
    }
    FieldElement acc = L.zero();
    FieldElement wp = L.one();
    for (int k = 1; k <= K; ++k) {
        wp *= w;
        FieldElement term = wp.div_exact_int(k);
        acc = (k % 2 == 1) ? acc + term : acc - term;
    }
    return acc;
}

USeries lt_log(const USeries& f, const FieldElement& pi, int deg) {
    LocalField K = f.field();
    USeries l = u_zero(K, deg);
    l.c[1] = K.one();
    // f^k tables
    std::vector<USeries> fpow;
    fpow.push_back(u_trunc(u_from_ints(K, {1}), deg));
    USeries ftr = u_trunc(f, deg);
    for (int k = 1; k <= deg; ++k) fpow.push_back(u_mul(fpow.back(), ftr, deg));
    std::vector<FieldElement> pipow;
    pipow.push_back(K.one());
    for (int j = 1; j <= deg; ++j) pipow.push_back(pipow.back() * pi);
    for (int j = 2; j <= deg; ++j) {
        // l_j (pi^j - pi) = - sum_{k<j} l_k [X^j] f^k
        FieldElement acc = K.zero();
        for (int k = 1; k < j; ++k) {
            if (l.at(k).is_zero()) continue;
            acc += l.at(k) * fpow[(size_t)k].at(j);
        }
        FieldElement denom = pipow[(size_t)j] - pi;
        l.c[(size_t)j] = -(acc * denom.inv());
    }
    return l;
}

USeries lt_exp(const USeries& f, const FieldElement& pi, int deg) {
    LocalField K = f.field();
    USeries ex = u_zero(K, deg);
    ex.c[1] = K.one();
    std::vector<FieldElement> pipow;
    pipow.push_back(K.one());
    for (int j = 1; j <= deg; ++j) pipow.push_back(pipow.back() * pi);
    for (int j = 2; j <= deg; ++j) {
        // pi^j e_j = [X^j] f(ex_{<j}) + pi e_j  =>  e_j (pi^j - pi) = [X^j] f(ex_{<j})
        USeries partial = u_trunc(ex, j - 1);
        USeries fex = u_eval_poly(u_trunc(f, j), u_trunc(partial, j), j);
        FieldElement rhs = fex.at(j);
        FieldElement denom = pipow[(size_t)j] - pi;
        ex.c[(size_t)j] = rhs * denom.inv();
    }
    return ex;
}

// ---------------------------------------------------------------------------
// root finding in the maximal ideal

std::vector<FieldElement> element_roots(const USeries& g, const LocalField& F) {
    USeries gF = u_embed(g, F);
    USeries dg = u_derive(gF);
    i64 p = F.p();
    int fdim = F.residue_dim();
    std::vector<std::vector<i64>> digits;
    {
        std::vector<i64> d((size_t)fdim, 0);
        for (;;) {
            digits.push_back(d);
            int i = 0;
            while (i < fdim && ++d[(size_t)i] == p) d[(size_t)i++] = 0;
            if (i == fdim) break;
        }
    }
    FieldElement pi = F.uniformizer();
    std::vector<FieldElement> cand = {F.zero()};
    int depth = std::min(F.prec_cap() - 1, 3 * F.e() + 6);
    FieldElement pik = pi;
    for (int k = 1; k <= depth; ++k) {
        std::vector<FieldElement> next;
        for (const FieldElement& y : cand) {
            for (const auto& dgt : digits) {
                FieldElement y2 = y + F.lift_residue(dgt) * pik;
                FieldElement err = u_eval(u_trunc(gF, gF.degree()), y2);
                auto v = err.valuation_opt();
                if (!v || *v >= k + 1) {
                    bool dup = false;
                    for (const auto& z : next) {
                        auto vd = (z - y2).valuation_opt();
                        if (!vd || *vd >= k + 1) {
                            dup = true;
                            break;
                        }
                    }
                    if (!dup) next.push_back(y2);
                }
            }
        }
        cand = std::move(next);
        if (cand.empty()) return {};
        if ((int)cand.size() > 256) fail(Errc::non_convergent, "element_roots: branch explosion");
        pik *= pi;
    }
    std::vector<FieldElement> roots;
    for (FieldElement y : cand) {
        bool ok = true;
        for (int it = 0; it < 2 * F.prec_p() + 8; ++it) {
            FieldElement err = u_eval(gF, y);
            auto v = err.valuation_opt();
            if (!v) break;
            FieldElement dfy = u_eval(dg, y);
            auto vd = dfy.valuation_opt();
            if (!vd || *v <= 2 * *vd) {
                ok = false;
                break;
            }
            y = y - err * dfy.inv();
        }
        if (!ok || !u_eval(gF, y).is_zero()) continue;
        bool dup = false;
        for (const auto& z : roots)
            if ((z - y).is_zero()) dup = true;
        if (!dup) roots.push_back(y);
    }
    return roots;
}

// ---------------------------------------------------------------------------
// classical engines

namespace {

void check_flat_cyclotomic(const LocalField& L, int n) {
    i64 p = L.p();
    i64 phi = p - 1;
    for (int i = 1; i < n; ++i) phi *= p;
    if (L.levels() < 1 || L.dim() != (int)phi || L.e() != (int)phi)
        fail(Errc::domain_violation, "expected the level-n cyclotomic field");
    // zeta = 1 + pi must have exact order p^n
    FieldElement zeta = L.one() + L.generator();
    i64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    if (!(zeta.pow(pn) - L.one()).is_zero())
        fail(Errc::domain_violation, "generator is not zeta_{p^n} - 1");
    if (n >= 1 && (zeta.pow(pn / p) - L.one()).is_zero())
        fail(Errc::domain_violation, "generator has too small an order");
}

FieldElement trace_div_pn(const FieldElement& y, int n) {
    LocalField L = y.field();
    LocalField Qp = L.subfield(0);
    FieldElement t = y.trace_to(Qp);
    return t.mul_p_power(-n);
}

PairingValue finish_value(const FieldElement& tS, i64 p, int n) {
    FieldElement c = tS.canonical();
    auto v = c.valuation_opt();
    if (v && *v < 0) fail(Errc::division_mismatch, "pairing value is not integral");
    if (c.precision() < n)
        fail(Errc::precision_exhausted, "pairing value not certified mod pi^n; raise the working precision");
    if (c.denom_exp() > 0) {
        // integral at precision but carries an uncertified fractional tail
        fail(Errc::precision_exhausted, "pairing value representation exhausted");
    }
    i64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    return pv_make(p, n, c.coords().empty() ? 0 : c.coords()[0] % pn);
}

} // namespace

PairingValue artin_hasse_classical(const FieldElement& u, int n) {
    LocalField L = u.field();
    check_flat_cyclotomic(L, n);
    i64 p = L.p();
    FieldElement w = u - L.one();
    auto vw = w.valuation_opt();
    i64 bound = 2;
    for (int i = 0; i < n - 1; ++i) bound *= p;
    if (!vw) {
        // u = 1 at precision: the value is 0
        return pv_make(p, n, 0);
    }
    if (*vw <= (int)bound) fail(Errc::domain_violation, "artin_hasse_classical requires v(u-1) > 2 p^{n-1}");
    FieldElement lg = padic_log(u);
    return finish_value(trace_div_pn(-lg, n), p, n);
}

USeries canonical_representation(const FieldElement& w) {
    LocalField L = w.field();
    if (L.top() != 1) fail(Errc::no_representation, "canonical representation needs a single-step field");
    FieldElement c = w.canonical();
    if (c.denom_exp() != 0) fail(Errc::no_representation, "representing series of a non-integral element");
    LocalField Qp = L.subfield(0);
    USeries g;
    for (i64 x : c.coords()) g.c.push_back(Qp.from_int(x));
    return g;
}

FieldElement iwasawa_psi(const FieldElement& w, int n, const USeries& g) {
    LocalField L = w.field();
    check_flat_cyclotomic(L, n);
    auto vw = (w - L.one()).valuation_opt();
    if (vw && *vw < 1) fail(Errc::domain_violation, "psi expects a principal unit");
    FieldElement pi = L.generator();
    // evaluate g and g' at pi directly
    FieldElement at = L.zero(), dat = L.zero();
    FieldElement pw = L.one();
    for (int i = 0; i <= g.degree(); ++i) {
        FieldElement gi = coerce_into(g.at(i), L);
        at += gi * pw;
        if (i + 1 <= g.degree()) {
            FieldElement gi1 = coerce_into(g.at(i + 1), L);
            dat += gi1.scaled(i + 1) * pw;
        }
        pw *= pi;
    }
    if (!(at - w).is_zero()) fail(Errc::representation_mismatch, "g(pi_n) != w at the working precision");
    FieldElement zeta = L.one() + pi;
    return -(zeta * w.inv() * dat);
}

PairingValue iwasawa_pairing(const FieldElement& u, const FieldElement& w, int n, const USeries* g) {
    LocalField L = u.field();
    check_flat_cyclotomic(L, n);
    i64 p = L.p();
    FieldElement du = u - L.one();
    auto vu = du.valuation_opt();
    i64 bound = 2;
    for (int i = 0; i < n - 1; ++i) bound *= p;
    if (vu && *vu <= (int)bound)
        fail(Errc::domain_violation, "iwasawa_pairing requires v(u-1) > 2 p^{n-1}");
    USeries rep = g ? *g : canonical_representation(w);
    FieldElement psi = iwasawa_psi(w, n, rep);
    FieldElement lg = padic_log(u);
    return finish_value(trace_div_pn(psi * lg, n), p, n);
}

// ---------------------------------------------------------------------------
// planning

namespace {

Rational rat_reduce(Rational r) {
    if (r.den < 0) {
        r.den = -r.den;
        r.num = -r.num;
    }
    i64 g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

Rational rat_add(Rational a, Rational b) { return rat_reduce({a.num * b.den + b.num * a.den, a.den * b.den}); }
Rational rat_sub(Rational a, Rational b) { return rat_reduce({a.num * b.den - b.num * a.den, a.den * b.den}); }
bool rat_ge(Rational a, Rational b) { return a.num * b.den >= b.num * a.den; }

// floor( rho*log_p(a/b) + rho/(p-1) ), exact via power comparisons
int floor_log_term(i64 p, int rho, i64 a, i64 b) {
    auto le = [&](i64 j) {
        // j <= rho log_p(a/b) + rho/(p-1)
        // <=> p^{j(p-1) - rho} <= (a/b)^{rho(p-1)}
        i64 ex = j * (p - 1) - rho;
        u64 re = (u64)(rho * (p - 1));
        BigNat lhs = BigNat::pow((u64)b, re);
        if (ex > 0) lhs = lhs.mul(BigNat::pow((u64)p, (u64)ex));
        BigNat rhs = BigNat::pow((u64)a, re);
        if (ex < 0) rhs = rhs.mul(BigNat::pow((u64)p, (u64)(-ex)));
        return lhs.cmp(rhs) <= 0;
    };
    int j = -8 * rho - 8;
    while (le(j + 1)) ++j;
    return j;
}

// r >= log_2(t)/(p-1), r rational
bool ge_log2_term(Rational r, i64 t, i64 p) {
    if (r.num < 0) return false;
    // r (p-1) >= log_2 t   <=>  2^{num (p-1)} >= t^{den}
    BigNat lhs = BigNat::pow(2, (u64)(r.num * (p - 1)));
    BigNat rhs = BigNat::pow((u64)t, (u64)r.den);
    return lhs.cmp(rhs) >= 0;
}

} // namespace

std::optional<int> admissible_witness(int n, int t, int rho) {
    // exists kappa with t-1-n >= rho kappa >= n
    int lo = (n + rho - 1) / rho;
    if (rho * lo <= t - 1 - n) return lo;
    return std::nullopt;
}

PairingPlan plan_parameters(int n, i64 p, int rho, int h, i64 qS, int vLp, Rational vD_L_K,
                            Rational vD_K2rho1, const Rational* c1_override) {
    PairingPlan plan;
    plan.n = n;
    plan.rho = rho;
    if (c1_override) plan.c1 = rat_reduce(*c1_override);
    else {
        // closed form requires K/S unramified
        i64 qh = 1;
        for (int i = 0; i < h; ++i) qh *= qS;
        if (qh <= 1) fail(Errc::unramified_assumption_violated, "cannot form c1 = 1/(rho(q^h-1))");
        plan.c1 = rat_reduce({1, rho * (qh - 1)});
    }
    plan.c2 = rat_reduce(rat_add(rat_add({2, p - 1}, {2 * p, (i64)rho * (p - 1) * (p - 1)}), vD_K2rho1));
    plan.m = n + 2 + floor_log_term(p, rho, vLp, p - 1);
    // smallest k with (k - m)/rho - c1 - c2 - vD >= log_2(2k + rho + 1)/(p-1)
    // and k + rho + 1 >= c1 rho
    for (int k = std::max(1, n);; ++k) {
        if (k > 1 << 20) fail(Errc::plan_invalid, "no feasible k found");
        Rational lhs = rat_sub(rat_sub(rat_sub({k - plan.m, rho}, plan.c1), plan.c2), vD_L_K);
        i64 t = 2 * (i64)k + rho + 1;
        if (!ge_log2_term(lhs, t, p)) continue;
        if (!rat_ge({(i64)k + rho + 1, 1}, {plan.c1.num * rho, plan.c1.den})) continue;
        plan.k = k;
        plan.t = (int)t;
        break;
    }
    auto kappa = admissible_witness(plan.k, plan.t, rho);
    if (!kappa) fail(Errc::plan_invalid, "constructed plan is not admissible");
    plan.kappa = *kappa;
    plan.valid = true;
    return plan;
}

// ---------------------------------------------------------------------------
// engine context

namespace {

USeries cyclotomic_isogeny(const LocalField& Qp) {
    i64 p = Qp.p();
    std::vector<i64> c((size_t)p + 1, 0);
    i64 binom = 1;
    for (i64 k = 1; k <= p; ++k) {
        binom = binom * (p - k + 1) / k;
        c[(size_t)k] = binom;
    }
    return u_from_ints(Qp, c);
}

bool series_equal(const USeries& a, const USeries& b) {
    int d = std::max(a.degree(), b.degree());
    for (int i = 0; i <= d; ++i) {
        FieldElement ai = i <= a.degree() ? a.at(i) : a.field().zero();
        FieldElement bi = i <= b.degree() ? b.at(i) : b.field().zero();
        if (!(ai - coerce_into(bi, ai.field())).is_zero()) return false;
    }
    return true;
}

} // namespace

PairingContext make_context(i64 p, int d, int n, int s, const USeries* custom_f,
                            const ContextOptions& opt) {
    if (d < 1 || n < 1 || s < n) fail(Errc::config_error, "context requires d >= 1, s >= n >= 1");
    PairingContext ctx;
    ctx.p = p;
    ctx.d = d;
    ctx.n = n;
    ctx.s = s;
    int prec_p = opt.prec_p > 0 ? opt.prec_p : 4 * n + 2 * s + 8;
    std::vector<int> levels = s > n ? std::vector<int>{n, s} : std::vector<int>{n};
    ctx.tower = LocalField::cyclotomic_tower(p, levels, prec_p);
    ctx.Qp = ctx.tower.subfield(0);
    ctx.Kn = ctx.tower.subfield(1);
    ctx.Ks = ctx.tower;
    ctx.Ln = LaurentField{ctx.Kn, d - 1, opt.window};
    ctx.Ls = LaurentField{ctx.Ks, d - 1, opt.window};
    ctx.f = custom_f ? u_embed(*custom_f, ctx.Qp) : cyclotomic_isogeny(ctx.Qp);
    ctx.cyclotomic_f = series_equal(ctx.f, cyclotomic_isogeny(ctx.Qp));
    int dmax = opt.dmax > 0 ? opt.dmax : 2 * (int)p;
    ctx.F = lubin_tate_build(ctx.f, ctx.Qp.from_int(p), p, dmax);
    int log_deg = opt.log_deg > 0 ? opt.log_deg : (n + s + 4) * ctx.Ks.e();
    ctx.logF = lt_log(ctx.f, ctx.Qp.from_int(p), log_deg);
    if (ctx.cyclotomic_f) {
        ctx.e_s = ctx.Ks.generator();
    } else {
        // primitive root of f^{(s)} in K_s
        USeries fs = isogeny_iterate(ctx.f, s, ctx.f.degree() * (int)pow_checked(p, s - 1) + 1);
        auto roots = element_roots(fs, ctx.Ks);
        USeries fs1 = isogeny_iterate(ctx.f, s - 1, fs.degree());
        std::optional<FieldElement> pick;
        for (const auto& r : roots) {
            if (r.is_zero()) continue;
            if (!u_eval(u_embed(fs1, ctx.Ks), r).is_zero()) {
                if (!pick) pick = r;
            }
        }
        if (!pick) fail(Errc::root_not_found, "no primitive level-s torsion point found");
        ctx.e_s = *pick;
    }
    if (s > n) {
        USeries fsn = isogeny_iterate(ctx.f, s - n, ctx.f.degree() * (int)pow_checked(p, s - n - 1 >= 0 ? s - n - 1 : 0) + 1);
        ctx.e_n = u_eval(u_embed(fsn, ctx.Ks), ctx.e_s);
    } else {
        ctx.e_n = ctx.e_s;
    }
    ctx.lprime_es = u_eval(u_derive(u_embed(ctx.logF, ctx.Ks)), ctx.e_s);
    ctx.des_dtop = ctx.e_s.derivative_dtop();
    return ctx;
}

LaurentElement ctx_embed_x(const PairingContext& ctx, const LaurentElement& x) {
    if (x.parent().same(ctx.Ls)) return x;
    return x.embed_coeff_to(ctx.Ls);
}

LaurentElement ctx_log_of(const PairingContext& ctx, const LaurentElement& x_in_Ls) {
    auto v = x_in_Ls.valuation_opt();
    if (v && *v < 1) fail(Errc::not_in_maximal_ideal, "pairing point must lie in the maximal ideal");
    return u_eval_tower(ctx.logF, x_in_Ls);
}

// ---------------------------------------------------------------------------
// the shared QL/derivation core

namespace {

MultiIndex all_ones(int nvars) { return MultiIndex((size_t)nvars, 1); }

// value = [ T_{Ls/Qp}( kernel(alpha-factor) * l(x) ) ](e_n) summed over factors
PairingValue engine_core(const PairingContext& ctx, const MilnorSymbol& alpha,
                         const LaurentElement& x, int n, const LaurentElement* kolyvagin_kernel) {
    if (!alpha.ambient.same(ctx.Ls))
        fail(Errc::ambient_mismatch, "symbol must live over the level-s field of the context");
    LaurentElement lx = ctx_log_of(ctx, ctx_embed_x(ctx, x));
    FieldElement acc = ctx.Qp.zero().with_precision(ctx.Qp.prec_cap());
    FieldElement scalar = (ctx.lprime_es * ctx.des_dtop).inv();
    for (const SymbolFactor& fac : alpha.factors) {
        if ((int)fac.entries.size() != ctx.d)
            fail(Errc::config_error, "symbol arity does not match the context dimension");
        for (const auto& e : fac.entries)
            if (e.is_zero()) fail(Errc::zero_entry, "symbol entry vanishes at precision");
        LaurentElement J = jacobian_det(fac.entries);
        LaurentElement P = fac.entries[0];
        for (size_t i = 1; i < fac.entries.size(); ++i) P = P * fac.entries[i];
        LaurentElement A = J * P.inv();
        FieldElement t;
        MultiIndex zero_idx((size_t)ctx.Ls.nvars, 0);
        if (kolyvagin_kernel) {
            A = A * (*kolyvagin_kernel);
            t = product_coefficient(A, lx, zero_idx).trace_to(ctx.Qp);
        } else {
            A = A.shift(all_ones(ctx.Ls.nvars)).scale(scalar);
            t = product_coefficient(A, lx, zero_idx).trace_to(ctx.Qp);
            t = t.mul_p_power(-ctx.s);
        }
        acc += t.scaled(fac.exp);
    }
    return finish_value(acc, ctx.p, n);
}

} // namespace

PairingValue lubin_tate_wiles(const PairingContext& ctx, const MilnorSymbol& alpha,
                              const LaurentElement& x, int n) {
    // for L = K_n{{T...}} the bound reads s >= 2n
    if (ctx.s < 2 * n) fail(Errc::plan_invalid, "auxiliary torsion level too small: need s >= 2n here");
    return engine_core(ctx, alpha, x, n, nullptr);
}

PairingValue iwasawa_gen_higher(const PairingContext& ctx, const MilnorSymbol& alpha,
                                const LaurentElement& x) {
    if (ctx.s != ctx.n) fail(Errc::config_error, "iwasawa_gen_higher runs on a context with s = n");
    // v(x) >= 2 v_L(p) / (rho (q-1)) with rho = 1, q = p
    int vLp = ctx.Kn.e();
    int need = (2 * vLp + (int)ctx.p - 2) / ((int)ctx.p - 1);
    auto v = x.valuation_opt();
    if (!v || *v < need)
        fail(Errc::domain_violation, "x violates the valuation condition of the generalized formula");
    return engine_core(ctx, alpha, x, ctx.n, nullptr);
}

LaurentElement cbar_cyclotomic(const PairingContext& ctx) {
    if (!ctx.cyclotomic_f)
        fail(Errc::invariant_missing,
             "closed-form invariant only available for the cyclotomic Lubin-Tate series");
    FieldElement c = ctx.Ks.from_int(-1).mul_p_power(-ctx.s);
    return LaurentElement::from_coeff(ctx.Ls, c);
}

PairingValue kolyvagin_pairing(const PairingContext& ctx, const MilnorSymbol& alpha,
                               const LaurentElement& x, int n, const LaurentElement* cbar) {
    if (ctx.s < 2 * n || ctx.s <= n)
        fail(Errc::plan_invalid, "kolyvagin_pairing needs the auxiliary level s >= 2n, s > n");
    LaurentElement cb = cbar ? *cbar : cbar_cyclotomic(ctx);
    // gamma = -cbar / (l'(e_s) de_s/dT_d); kernel = T_1...T_{d-1} gamma
    LaurentElement gamma = (-cb).scale((ctx.lprime_es * ctx.des_dtop).inv());
    LaurentElement kernel = gamma.shift(all_ones(ctx.Ls.nvars));
    return engine_core(ctx, alpha, x, n, &kernel);
}

PairingValue artin_hasse_higher(const PairingContext& ctx, const std::vector<LaurentElement>& units,
                                const LaurentElement& x, const HigherAhOptions& opt) {
    if (ctx.s != ctx.n) fail(Errc::config_error, "artin_hasse_higher runs on a context with s = n");
    if ((int)units.size() != ctx.d - 1) fail(Errc::config_error, "need d-1 units");
    for (const auto& u : units) {
        auto v = u.valuation_opt();
        if (!v || *v != 0) fail(Errc::domain_violation, "entries must be units of the ring of integers");
    }
    LaurentElement lx = ctx_log_of(ctx, ctx_embed_x(ctx, x));
    // J' = det[ du_i/dT_j ], (d-1)x(d-1) over the Laurent variables only
    LaurentElement Jp = LaurentElement::from_coeff(ctx.Ls, ctx.Ks.one());
    if (ctx.d >= 2) {
        std::vector<std::vector<LaurentElement>> m((size_t)ctx.d - 1);
        for (int i = 0; i < ctx.d - 1; ++i)
            for (int j = 1; j <= ctx.d - 1; ++j) m[(size_t)i].push_back(units[(size_t)i].partial_t(j));
        // reuse cofactor expansion via jacobian machinery: inline determinant
        struct Rec {
            static LaurentElement det(const std::vector<std::vector<LaurentElement>>& mm,
                                      std::vector<int> rows, std::vector<int> cols,
                                      const LaurentField& fld) {
                size_t nn = rows.size();
                if (nn == 1) return mm[(size_t)rows[0]][(size_t)cols[0]];
                LaurentElement acc(fld, fld.coeff.prec_cap());
                int sign = 1;
                for (size_t i = 0; i < nn; ++i) {
                    std::vector<int> r2;
                    for (size_t j = 0; j < nn; ++j)
                        if (j != i) r2.push_back(rows[j]);
                    std::vector<int> c2(cols.begin() + 1, cols.end());
                    LaurentElement term = mm[(size_t)rows[i]][(size_t)cols[0]] * det(mm, r2, c2, fld);
                    acc = sign > 0 ? acc + term : acc - term;
                    sign = -sign;
                }
                return acc;
            }
        };
        std::vector<int> rows((size_t)ctx.d - 1), cols((size_t)ctx.d - 1);
        for (int i = 0; i < ctx.d - 1; ++i) rows[(size_t)i] = cols[(size_t)i] = i;
        Jp = Rec::det(m, rows, cols, ctx.Ls);
    }
    LaurentElement Pinv = LaurentElement::from_coeff(ctx.Ls, ctx.Ks.one());
    for (const auto& u : units) Pinv = Pinv * u;
    Pinv = Pinv.inv();
    FieldElement t;
    MultiIndex zero_idx((size_t)ctx.Ls.nvars, 0);
    if (opt.stronger_form) {
        if (!ctx.cyclotomic_f)
            fail(Errc::domain_violation, "the stronger form is specific to the multiplicative law");
        LaurentElement A = (Jp * Pinv).shift(all_ones(ctx.Ls.nvars));
        t = product_coefficient(A, lx, zero_idx).trace_to(ctx.Qp).mul_p_power(-ctx.n);
    } else {
        // kernel: T-bar / (xi^n l_g'(e_g) e_g)
        USeries g = opt.g ? u_embed(*opt.g, ctx.Qp) : ctx.f;
        FieldElement xi = opt.xi ? coerce_into(*opt.xi, ctx.Qp) : ctx.Qp.from_int(ctx.p);
        FieldElement e_g;
        USeries lg = lt_log(g, ctx.Qp.from_int(ctx.p), ctx.logF.degree());
        if (series_equal(g, ctx.f)) {
            e_g = ctx.e_n;
        } else {
            // e_g = [1]_{f,g}(e_{f,n}) with g(phi) = phi(f)
            USeries phi = lubin_tate_hom(g, ctx.f, ctx.Qp.one(), ctx.Qp.from_int(ctx.p),
                                         std::max(24, 2 * ctx.Ks.e()));
            e_g = u_eval(u_embed(phi, ctx.Ks), ctx.e_n);
        }
        FieldElement lgp = u_eval(u_derive(u_embed(lg, ctx.Ks)), e_g);
        FieldElement denom = coerce_into(xi, ctx.Ks).pow(ctx.n) * lgp * e_g;
        LaurentElement A = (Jp * Pinv).shift(all_ones(ctx.Ls.nvars)).scale(denom.inv());
        t = product_coefficient(A, lx, zero_idx).trace_to(ctx.Qp);
    }
    return finish_value(t, ctx.p, ctx.n);
}

PairingValue zinoviev_direct(const PairingContext& ctx, const LaurentElement& x) {
    if (ctx.s != ctx.n || !ctx.cyclotomic_f)
        fail(Errc::config_error, "the direct route is the multiplicative s = n case");
    LaurentElement lx = ctx_log_of(ctx, ctx_embed_x(ctx, x));
    FieldElement c = coefficient_map_c(lx);
    FieldElement t = c.trace_to(ctx.Qp).mul_p_power(-ctx.n);
    return finish_value(t, ctx.p, ctx.n);
}

// ---------------------------------------------------------------------------
// fitting the invariant from supplied pairing values

LaurentElement cbar_fit(const PairingContext& ctx, const std::vector<LaurentElement>& us,
                        const std::vector<i64>& values, int k, int support_radius) {
    if (us.size() != values.size() || us.empty())
        fail(Errc::config_error, "cbar_fit needs matching unit/value lists");
    i64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= ctx.p;
    // unknown coefficients of cbar on basis elements b * T^idx, idx in [-r, r]
    // (single Laurent variable at fitting scale), with a global 1/p^s scale
    if (ctx.Ls.nvars > 1) fail(Errc::shape_not_supported, "fitting is implemented for d <= 2");
    int r = support_radius;
    int D = ctx.Ks.dim();
    int nunk = (ctx.Ls.nvars == 1 ? (2 * r + 1) : 1) * D;
    std::vector<std::vector<i64>> M;
    std::vector<i64> rhs;
    for (size_t j = 0; j < us.size(); ++j) {
        LaurentElement logu = [&] {
            // coefficientwise log of the principal unit u
            LaurentElement w = us[j] - LaurentElement::from_coeff(ctx.Ls, ctx.Ks.one());
            auto v = w.valuation_opt();
            if (!v || *v < 1) fail(Errc::domain_violation, "fitting units must be principal");
            LaurentElement acc(ctx.Ls, ctx.Ks.prec_cap());
            LaurentElement wp = LaurentElement::from_coeff(ctx.Ls, ctx.Ks.one());
            int Kmax = ctx.Ks.prec_cap() / *v + ctx.Ks.e() + 4;
            for (int kk = 1; kk <= Kmax; ++kk) {
                wp = wp * w;
                LaurentElement term = wp.scale(ctx.Ks.from_int(1).div_exact_int(kk));
                acc = (kk % 2 == 1) ? acc + term : acc - term;
            }
            return acc;
        }();
        std::vector<i64> row;
        for (int idx = (ctx.Ls.nvars == 1 ? -r : 0); idx <= (ctx.Ls.nvars == 1 ? r : 0); ++idx) {
            for (int b = 0; b < D; ++b) {
                std::vector<i64> coords((size_t)D, 0);
                coords[(size_t)b] = 1;
                FieldElement basis = ctx.Ks.from_coords(std::move(coords), 0, ctx.Ks.prec_cap());
                LaurentElement cb = ctx.Ls.nvars == 1
                                        ? LaurentElement::monomial(ctx.Ls, basis.mul_p_power(-ctx.s), {idx})
                                        : LaurentElement::from_coeff(ctx.Ls, basis.mul_p_power(-ctx.s));
                FieldElement t = generalized_trace(logu * cb, ctx.Qp).canonical();
                if (t.denom_exp() > 0) fail(Errc::precision_exhausted, "fitting matrix not integral");
                row.push_back(t.coords()[0] % pk);
            }
        }
        M.push_back(std::move(row));
        rhs.push_back(((values[j] % pk) + pk) % pk);
    }
    // Gaussian elimination mod p^k with valuation pivoting
    int rows = (int)M.size();
    std::vector<i64> sol((size_t)nunk, 0);
    std::vector<bool> colused((size_t)nunk, false);
    std::vector<std::pair<int, int>> pivots;
    int rr = 0;
    for (int c = 0; c < nunk && rr < rows; ++c) {
        int best = -1, bestv = k + 1;
        for (int i = rr; i < rows; ++i) {
            int v = val_p(M[(size_t)i][(size_t)c] % pk, ctx.p, k);
            if (v < bestv) {
                bestv = v;
                best = i;
            }
        }
        if (best < 0 || bestv > 0) continue; // need unit pivots for a clean solve
        std::swap(M[(size_t)best], M[(size_t)rr]);
        std::swap(rhs[(size_t)best], rhs[(size_t)rr]);
        i64 ipiv = invmod_unit(M[(size_t)rr][(size_t)c], ctx.p, k);
        for (int cc = 0; cc < nunk; ++cc) M[(size_t)rr][(size_t)cc] = mulmod(M[(size_t)rr][(size_t)cc], ipiv, pk);
        rhs[(size_t)rr] = mulmod(rhs[(size_t)rr], ipiv, pk);
        for (int i = 0; i < rows; ++i) {
            if (i == rr) continue;
            i64 f = M[(size_t)i][(size_t)c];
            if (f == 0) continue;
            for (int cc = 0; cc < nunk; ++cc)
                M[(size_t)i][(size_t)cc] = submod(M[(size_t)i][(size_t)cc], mulmod(f, M[(size_t)rr][(size_t)cc], pk), pk);
            rhs[(size_t)i] = submod(rhs[(size_t)i], mulmod(f, rhs[(size_t)rr], pk), pk);
        }
        colused[(size_t)c] = true;
        pivots.push_back({rr, c});
        ++rr;
    }
    for (int i = rr; i < rows; ++i)
        if (rhs[(size_t)i] % pk != 0)
            fail(Errc::invariant_missing, "supplied pairing values are inconsistent with any invariant");
    for (auto [prow, pcol] : pivots) sol[(size_t)pcol] = rhs[(size_t)prow];
    // assemble cbar
    LaurentElement cb(ctx.Ls, ctx.Ks.prec_cap());
    int u = 0;
    for (int idx = (ctx.Ls.nvars == 1 ? -r : 0); idx <= (ctx.Ls.nvars == 1 ? r : 0); ++idx) {
        std::vector<i64> coords((size_t)D, 0);
        bool any = false;
        for (int b = 0; b < D; ++b, ++u) {
            coords[(size_t)b] = sol[(size_t)(u)];
            any |= sol[(size_t)u] != 0;
        }
        if (!any) continue;
        FieldElement ce = ctx.Ks.from_coords(std::move(coords), 0, ctx.Ks.prec_cap()).mul_p_power(-ctx.s);
        cb += ctx.Ls.nvars == 1 ? LaurentElement::monomial(ctx.Ls, ce, {idx})
                                : LaurentElement::from_coeff(ctx.Ls, ce);
    }
    return cb;
}

} // namespace reclab
