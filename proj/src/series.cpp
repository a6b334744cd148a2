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

#include "reclab/series.hpp"

#include <algorithm>

namespace reclab {

USeries u_from_ints(const LocalField& F, const std::vector<i64>& coeffs) {
    USeries r;
    for (i64 v : coeffs) r.c.push_back(F.from_int(v));
    if (r.c.empty()) r.c.push_back(F.zero());
    return r;
}

USeries u_zero(const LocalField& F, int deg) {
    USeries r;
    r.c.assign((size_t)deg + 1, F.zero());
    return r;
}

USeries u_trunc(const USeries& a, int deg) {
    USeries r = a;
    if ((int)r.c.size() > deg + 1) r.c.resize((size_t)deg + 1);
    while ((int)r.c.size() < deg + 1) r.c.push_back(a.field().zero());
    return r;
}

USeries u_add(const USeries& a, const USeries& b) {
    USeries r = u_trunc(a, std::max(a.degree(), b.degree()));
    for (int i = 0; i <= b.degree(); ++i) r.c[(size_t)i] += b.at(i);
    return r;
}

USeries u_sub(const USeries& a, const USeries& b) {
    USeries r = u_trunc(a, std::max(a.degree(), b.degree()));
    for (int i = 0; i <= b.degree(); ++i) r.c[(size_t)i] -= b.at(i);
    return r;
}

USeries u_scale(const USeries& a, const FieldElement& k) {
    USeries r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

USeries u_mul(const USeries& a, const USeries& b, int deg) {
    USeries r = u_zero(a.field(), deg);
    for (int i = 0; i <= std::min(deg, a.degree()); ++i) {
        if (a.at(i).is_zero()) continue;
        for (int j = 0; j <= std::min(deg - i, b.degree()); ++j) r.c[(size_t)(i + j)] += a.at(i) * b.at(j);
    }
    return r;
}

USeries u_compose(const USeries& outer, const USeries& inner, int deg) {
    if (inner.degree() >= 0 && !inner.at(0).is_zero())
        fail(Errc::config_error, "series composition requires inner(0) = 0");
    // Horner from the top
    USeries r = u_zero(outer.field(), deg);
    for (int i = std::min(deg, outer.degree()); i >= 0; --i) {
        r = u_mul(r, inner, deg);
        r.c[0] += outer.at(i);
    }
    return r;
}

USeries u_eval_poly(const USeries& outer, const USeries& inner, int deg) {
    USeries r = u_zero(outer.field(), deg);
    for (int i = outer.degree(); i >= 0; --i) {
        r = u_mul(r, inner, deg);
        r.c[0] += outer.at(i);
    }
    return r;
}

USeries u_derive(const USeries& a) {
    USeries r = u_zero(a.field(), std::max(0, a.degree() - 1));
    for (int i = 1; i <= a.degree(); ++i) r.c[(size_t)(i - 1)] = a.at(i).scaled(i);
    return r;
}

USeries u_integrate(const USeries& a) {
    USeries r = u_zero(a.field(), a.degree() + 1);
    for (int i = 0; i <= a.degree(); ++i) r.c[(size_t)(i + 1)] = a.at(i).div_exact_int(i + 1);
    return r;
}

USeries u_inv_series(const USeries& a, int deg) {
    if (!a.at(0).is_unit()) fail(Errc::non_invertible, "series inverse requires a unit constant term");
    USeries r = u_zero(a.field(), deg);
    FieldElement c0inv = a.at(0).inv();
    r.c[0] = c0inv;
    for (int k = 1; k <= deg; ++k) {
        FieldElement acc = a.field().zero();
        for (int j = 1; j <= std::min(k, a.degree()); ++j) acc += a.at(j) * r.c[(size_t)(k - j)];
        r.c[(size_t)k] = -(c0inv * acc);
    }
    return r;
}

USeries u_reversion(const USeries& a, int deg) {
    if (!a.at(0).is_zero() || !a.at(1).is_unit())
        fail(Errc::config_error, "reversion requires a(0)=0 and a'(0) a unit");
    LocalField F = a.field();
    USeries g = u_zero(F, deg);
    FieldElement lininv = a.at(1).inv();
    if (deg >= 1) g.c[1] = lininv;
    for (int k = 2; k <= deg; ++k) {
        // a(g) = X must hold up to degree k
        USeries ag = u_compose(u_trunc(a, k), u_trunc(g, k), k);
        FieldElement errk = ag.at(k);
        g.c[(size_t)k] = -(lininv * errk);
    }
    return g;
}

USeries u_embed(const USeries& a, const LocalField& bigger) {
    USeries r;
    for (const auto& x : a.c) r.c.push_back(coerce_into(x, bigger));
    return r;
}

namespace {

FieldElement u_eval_impl(const USeries& a, const FieldElement& x, bool truncated) {
    auto vx = x.valuation_opt();
    int tail = 1 << 28;
    if (!vx) tail = x.precision() * (a.degree() + 1);
    else if (*vx >= 1) tail = *vx * (a.degree() + 1);
    else fail(Errc::not_in_maximal_ideal, "series evaluation requires v(x) >= 1");
    FieldElement r = x.field().zero();
    for (int i = a.degree(); i >= 0; --i) {
        r = r * x + coerce_into(a.at(i), x.field());
    }
    if (!truncated) return r;
    return r.with_precision(std::min(r.precision(), tail));
}

LaurentElement u_eval_tower_impl(const USeries& a, const LaurentElement& x, bool truncated) {
    auto vx = x.valuation_opt();
    int tail = 1 << 28;
    if (!vx) tail = x.tail() * (a.degree() + 1);
    else if (*vx >= 1) tail = *vx * (a.degree() + 1);
    else fail(Errc::not_in_maximal_ideal, "series evaluation requires v(x) >= 1");
    const LaurentField& fld = x.parent();
    LaurentElement r(fld, fld.coeff.prec_cap());
    for (int i = a.degree(); i >= 0; --i) {
        r = r * x + LaurentElement::from_coeff(fld, coerce_into(a.at(i), fld.coeff));
    }
    if (!truncated) return r;
    return r.truncated_tail(tail);
}

} // namespace

FieldElement u_eval(const USeries& a, const FieldElement& x) { return u_eval_impl(a, x, true); }

LaurentElement u_eval_tower(const USeries& a, const LaurentElement& x) {
    return u_eval_tower_impl(a, x, true);
}

FieldElement u_eval_exact(const USeries& a, const FieldElement& x) { return u_eval_impl(a, x, false); }

LaurentElement u_eval_tower_exact(const USeries& a, const LaurentElement& x) {
    return u_eval_tower_impl(a, x, false);
}

std::pair<std::vector<FieldElement>, USeries> weierstrass_prep(const USeries& g, int work_deg) {
    LocalField F = g.field();
    int n = -1;
    for (int i = 0; i <= g.degree(); ++i) {
        auto v = g.at(i).valuation_opt();
        if (v && *v == 0) {
            n = i;
            break;
        }
        if (!v && g.at(i).precision() < 1)
            fail(Errc::all_coefficients_non_unit,
                 "cannot locate the first unit coefficient at this precision");
    }
    if (n < 0) fail(Errc::all_coefficients_non_unit, "no unit coefficient up to the working degree");
    if (n > 0) {
        auto v0 = g.at(0).valuation_opt();
        if (v0 && *v0 < 1) fail(Errc::config_error, "weierstrass_prep expects g(0) in the maximal ideal");
    }

    // P = X^n + c (deg c < n), U unit series; iterate delta_c = low(r/U), delta_U = U*tau(r/U)
    std::vector<FieldElement> cpoly((size_t)n, F.zero());
    USeries U = u_zero(F, work_deg);
    for (int i = n; i <= std::min(g.degree(), n + work_deg); ++i) U.c[(size_t)(i - n)] = g.at(i);
    int maxit = F.prec_cap() + 8;
    for (int it = 0; it < maxit; ++it) {
        // r = g - (X^n + c) U
        USeries xnU = u_zero(F, work_deg);
        for (int i = 0; i + n <= work_deg; ++i) xnU.c[(size_t)(i + n)] = U.at(i);
        USeries cU = u_zero(F, work_deg);
        for (int i = 0; i < n; ++i) {
            if (cpoly[(size_t)i].is_zero()) continue;
            for (int j = 0; i + j <= work_deg && j <= U.degree(); ++j)
                cU.c[(size_t)(i + j)] += cpoly[(size_t)i] * U.at(j);
        }
        USeries r = u_sub(u_trunc(g, work_deg), u_add(xnU, cU));
        bool done = true;
        for (const auto& x : r.c)
            if (!x.is_zero()) done = false;
        if (done) break;
        if (it + 1 == maxit) fail(Errc::non_convergent, "weierstrass_prep failed to stabilize");
        USeries D = u_mul(r, u_inv_series(U, work_deg), work_deg);
        for (int i = 0; i < n; ++i) cpoly[(size_t)i] += D.at(i);
        USeries tauD = u_zero(F, work_deg);
        for (int i = n; i <= work_deg; ++i) tauD.c[(size_t)(i - n)] = D.at(i);
        U = u_add(U, u_mul(U, tauD, work_deg));
    }
    for (int i = 0; i < n; ++i) {
        auto v = cpoly[(size_t)i].valuation_opt();
        if (v && *v < 1) fail(Errc::non_convergent, "weierstrass_prep produced a non-distinguished part");
    }
    return {cpoly, U};
}

// ---------------------------------------------------------------------------

BSeries b_zero(const LocalField& F, int dmax) {
    BSeries r;
    r.dmax = dmax;
    r.c.assign((size_t)(dmax + 1) * (size_t)(dmax + 1), F.zero());
    return r;
}

BSeries b_add(const BSeries& a, const BSeries& b) {
    BSeries r = a;
    for (int i = 0; i <= a.dmax; ++i)
        for (int j = 0; i + j <= a.dmax; ++j) r.at(i, j) += b.at(i, j);
    return r;
}

BSeries b_sub(const BSeries& a, const BSeries& b) {
    BSeries r = a;
    for (int i = 0; i <= a.dmax; ++i)
        for (int j = 0; i + j <= a.dmax; ++j) r.at(i, j) -= b.at(i, j);
    return r;
}

BSeries b_mul(const BSeries& a, const BSeries& b) {
    BSeries r = b_zero(a.field(), a.dmax);
    for (int i = 0; i <= a.dmax; ++i)
        for (int j = 0; i + j <= a.dmax; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int k = 0; i + j + k <= a.dmax; ++k)
                for (int l = 0; i + j + k + l <= a.dmax; ++l) r.at(i + k, j + l) += a.at(i, j) * b.at(k, l);
        }
    return r;
}

BSeries b_embed(const BSeries& a, const LocalField& bigger) {
    BSeries r;
    r.dmax = a.dmax;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(coerce_into(x, bigger));
    return r;
}

USeries b_subst_uu(const BSeries& F, const USeries& s, const USeries& t, int deg) {
    LocalField K = F.field();
    std::vector<USeries> spow, tpow;
    spow.push_back(u_from_ints(K, {1}));
    tpow.push_back(u_from_ints(K, {1}));
    for (int i = 1; i <= F.dmax; ++i) {
        spow.push_back(u_mul(spow.back(), s, deg));
        tpow.push_back(u_mul(tpow.back(), t, deg));
    }
    USeries r = u_zero(K, deg);
    for (int i = 0; i <= F.dmax; ++i)
        for (int j = 0; i + j <= F.dmax; ++j) {
            if (F.at(i, j).is_zero()) continue;
            r = u_add(r, u_scale(u_mul(spow[(size_t)i], tpow[(size_t)j], deg), F.at(i, j)));
        }
    return r;
}

bool b_equal_mod(const BSeries& a, const BSeries& b, int piv) {
    for (int i = 0; i <= a.dmax; ++i)
        for (int j = 0; i + j <= a.dmax; ++j)
            if (!a.at(i, j).equals_mod(b.at(i, j), piv)) return false;
    return true;
}

} // namespace reclab
