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

#include "reclab/oracle.hpp"

#include <algorithm>
#include <map>
#include <cstdio>
#include <cstdlib>
#include <random>

namespace reclab {

bool is_pn_power_full(const LocalField& L, const FieldElement& x, int n) {
    auto v = x.valuation_opt();
    if (!v) fail(Errc::precision_exhausted, "power test on an element indistinguishable from 0");
    i64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= L.p();
    if (*v % pn != 0) return false;
    FieldElement u = *v == 0 ? x : x * L.uniformizer().pow(-*v);
    // x = pi^v u: x is a p^n power iff u * (pi^{v}... ) is; since v = pn*w,
    // x = (pi^w)^{pn} * u and the question reduces to the unit part
    return L.is_pn_power(u, n);
}

namespace {

// is x expressible over the selected generators modulo p^n-th powers?
bool expressible(const LocalField& L, const std::vector<FieldElement>& sel, const FieldElement& x,
                 i64 pn, int n) {
    size_t k = sel.size();
    std::vector<i64> expv(k, 0);
    for (;;) {
        FieldElement cand = x;
        for (size_t i = 0; i < k; ++i)
            if (expv[i]) cand *= sel[i].pow(pn - expv[i]);
        if (L.is_pn_power(cand, n)) return true;
        size_t i = 0;
        while (i < k && ++expv[i] == pn) expv[i++] = 0;
        if (i == k) return false;
    }
}

} // namespace

UnitClassGroup unit_classes(const LocalField& L, int n) {
    UnitClassGroup G;
    G.L = L;
    G.n = n;
    i64 p = L.p();
    G.pn = 1;
    for (int i = 0; i < n; ++i) G.pn *= p;
    int dim = L.dim();
    // torsion: an element of exact order p^n derived from 1 + generator
    FieldElement zeta = L.one() + L.generator();
    {
        int a = 0;
        FieldElement z = zeta;
        while (a < 20 && !(z - L.one()).is_zero()) {
            z = z.pow(p);
            ++a;
        }
        if (a < n) fail(Errc::torsion_missing, "mu_{p^n} is not contained in this field");
        for (int i = 0; i < a - n; ++i) zeta = zeta.pow(p);
    }
    // greedy independent selection: the uniformizer, the torsion, then
    // principal units 1 + b pi^j over the standard range
    G.gens.push_back(L.uniformizer());
    std::vector<FieldElement> units = {zeta};
    int e = L.e();
    int jmax = (int)p * e / ((int)p - 1) + 1;
    int fdim = L.residue_dim();
    for (int j = 1; j <= jmax && (int)units.size() < dim + 1; ++j) {
        for (int r = 0; r < fdim && (int)units.size() < dim + 1; ++r) {
            std::vector<i64> res((size_t)fdim, 0);
            res[(size_t)r] = 1;
            FieldElement cand = L.one() + L.lift_residue(res) * L.uniformizer().pow(j);
            if (!expressible(L, units, cand, G.pn, n)) units.push_back(cand);
        }
    }
    for (auto& u : units) G.gens.push_back(u);
    if ((int)G.gens.size() != dim + 2)
        fail(Errc::index_mismatch, "could not assemble the expected unit-class generators");
    G.class_count = 1;
    for (int i = 0; i < n * (dim + 2); ++i) G.class_count *= p;
    // completeness by counting at small scale: no nontrivial product of
    // generators may be a p^n-th power
    if (G.class_count <= 2048) {
        std::vector<i64> expv((size_t)dim + 2, 0);
        for (;;) {
            int i = 0;
            while (i < dim + 2 && ++expv[(size_t)i] == G.pn) expv[(size_t)i++] = 0;
            if (i == dim + 2) break;
            FieldElement prod = L.one();
            for (size_t gidx = 0; gidx < G.gens.size(); ++gidx)
                if (expv[gidx]) prod *= G.gens[gidx].pow(expv[gidx]);
            if (is_pn_power_full(L, prod, n))
                fail(Errc::index_mismatch, "unit-class generators are dependent");
        }
        G.fully_verified = true;
    }
    return G;
}

std::vector<i64> class_of(const UnitClassGroup& G, const FieldElement& x) {
    const LocalField& L = G.L;
    auto v = x.valuation_opt();
    if (!v) fail(Errc::precision_exhausted, "class of an element indistinguishable from 0");
    i64 e0 = ((*v % G.pn) + G.pn) % G.pn;
    FieldElement u = x * L.uniformizer().pow(-*v);
    int rest = (int)G.gens.size() - 1;
    std::vector<i64> expv((size_t)rest, 0);
    for (;;) {
        FieldElement cand = u;
        for (int i = 0; i < rest; ++i)
            if (expv[(size_t)i]) cand *= G.gens[(size_t)i + 1].pow(G.pn - expv[(size_t)i]);
        if (L.is_pn_power(cand, G.n)) {
            std::vector<i64> full;
            full.push_back(e0);
            for (i64 t : expv) full.push_back(t);
            return full;
        }
        int i = 0;
        while (i < rest && ++expv[(size_t)i] == G.pn) expv[(size_t)i++] = 0;
        if (i == rest) break;
    }
    fail(Errc::index_mismatch, "element class not found; generators incomplete");
}

namespace {

std::vector<std::vector<i64>> subgroup_closure(const std::vector<std::vector<i64>>& gens, i64 pn,
                                               size_t dim) {
    std::map<std::vector<i64>, bool> seen;
    std::vector<i64> zero(dim, 0);
    seen[zero] = true;
    std::vector<std::vector<i64>> frontier = {zero};
    while (!frontier.empty()) {
        std::vector<std::vector<i64>> next;
        for (const auto& f : frontier) {
            for (const auto& g : gens) {
                std::vector<i64> s(dim);
                for (size_t i = 0; i < dim; ++i) s[i] = (f[i] + g[i]) % pn;
                if (!seen.count(s)) {
                    seen[s] = true;
                    next.push_back(s);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::vector<i64>> out;
    for (auto& [k, _] : seen) out.push_back(k);
    return out;
}

} // namespace

NormGroup norm_group(const UnitClassGroup& G, const FieldElement& b) {
    const LocalField& L = G.L;
    NormGroup N;
    if (is_pn_power_full(L, b, G.n)) {
        N.full = true;
        return N;
    }
    // the monogenic model L[Y]/(Y^{p^n} - b) requires b to not even be a p-th power
    if (is_pn_power_full(L, b, 1))
        fail(Errc::shape_not_supported,
             "norm_group expects b outside (L^x)^p so that Y^{p^n} - b is irreducible");
    int deg = (int)G.pn;
    LocalField F = L;
    std::vector<FieldElement> minpoly;
    minpoly.push_back(-b);
    for (int i = 1; i < deg; ++i) minpoly.push_back(F.zero());
    i64 want = G.class_count / G.pn;
    // norm a generating set of the extension's classes: Y, the base generators,
    // and seeded random units of every filtration level until the Kummer index
    // p^n is reached (local class field theory caps the image at that index)
    std::vector<std::vector<i64>> vecs;
    std::mt19937_64 rng(0xC0FFEE);
    auto push_norm = [&](const std::vector<FieldElement>& g) {
        FieldElement nm = algebra_norm(minpoly, g);
        auto v = nm.valuation_opt();
        if (!v) return;
        // heavily divided candidates can exhaust the working precision
        if (nm.precision() < 2 * G.n * F.e() + 2) return;
        if (nm.precision() - *v < 2 * G.n * F.e() + 2) return;
        vecs.push_back(class_of(G, nm));
        N.members = subgroup_closure(vecs, G.pn, (size_t)G.gens.size());
    };
    {
        std::vector<FieldElement> y((size_t)deg, F.zero());
        y[1] = F.one();
        push_norm(y);
    }
    for (const FieldElement& g : G.gens) {
        if ((i64)N.members.size() >= want) break;
        std::vector<FieldElement> c((size_t)deg, F.zero());
        c[0] = g;
        push_norm(c);
    }
    std::uniform_int_distribution<i64> dc(0, F.modulus() - 1);
    std::uniform_int_distribution<int> dj(-2, 2);
    FieldElement pi = F.uniformizer();
    // W = Y - c0 (residue-matched shift) has positive valuation in the
    // extension; units 1 + r W^a pi^j sweep every filtration level that
    // random polynomials only hit with probability p^-level
    FieldElement c0 = b.is_unit() ? F.lift_residue(F.residue_root_pn(F.residue(b), G.n)) : F.zero();
    std::vector<std::vector<FieldElement>> wpow; // W^a mod (Y^deg - b)
    {
        std::vector<FieldElement> one_((size_t)deg, F.zero());
        one_[0] = F.one();
        wpow.push_back(one_);
        for (int a = 1; a < deg; ++a) {
            std::vector<FieldElement> cur = wpow.back();
            FieldElement lead = cur[(size_t)deg - 1];
            for (int i = deg - 1; i >= 1; --i) cur[(size_t)i] = cur[(size_t)i - 1] - c0 * cur[(size_t)i];
            cur[0] = -(c0 * cur[0]);
            cur[0] += lead * b; // Y^deg = b
            wpow.push_back(cur);
        }
    }
    int fdim = F.residue_dim();
    i64 p = F.p();
    int jrange = (int)p * F.e() / ((int)p - 1) + 3;
    for (int a = 0; a < deg && (i64)N.members.size() < want; ++a) {
        for (int j = -jrange; j <= jrange && (i64)N.members.size() < want; ++j) {
            for (int r = 0; r < fdim && (i64)N.members.size() < want; ++r) {
                std::vector<i64> res((size_t)fdim, 0);
                res[(size_t)r] = 1;
                FieldElement coeff = F.lift_residue(res) * pi.pow(j);
                std::vector<FieldElement> g((size_t)deg, F.zero());
                g[0] = F.one();
                for (int i = 0; i < deg; ++i) g[(size_t)i] += coeff * wpow[(size_t)a][(size_t)i];
                if (g[0].is_zero()) continue;
                push_norm(g);
            }
        }
    }
    for (int it = 0; it < 400 && (i64)N.members.size() < want; ++it) {
        std::vector<FieldElement> g((size_t)deg, F.zero());
        for (int a = 0; a < deg; ++a) {
            std::vector<i64> coords((size_t)F.dim());
            for (auto& x : coords) x = dc(rng) % 2000;
            g[(size_t)a] = F.from_coords(std::move(coords), 0, F.prec_cap()) * pi.pow(dj(rng));
        }
        if (g[0].is_zero()) continue;
        push_norm(g);
    }
    if ((i64)N.members.size() != want) {
        if (std::getenv("RECLAB_ORACLE_DEBUG"))
            std::fprintf(stderr, "norm_group: span %zu want %lld (gens %zu)\n", N.members.size(),
                         (long long)want, vecs.size());
        fail(Errc::index_mismatch, "norm subgroup has the wrong index at this precision");
    }
    N.gens = std::move(vecs);
    return N;
}

bool norm_group_contains(const NormGroup& N, const std::vector<i64>& cls, i64 pn) {
    if (N.full) return true;
    for (const auto& m : N.members) {
        if (m.size() != cls.size()) continue;
        bool eq = true;
        for (size_t i = 0; i < m.size(); ++i)
            if ((m[i] - cls[i]) % pn != 0) eq = false;
        if (eq) return true;
    }
    return false;
}

bool hilbert_trivial(const UnitClassGroup& G, const FieldElement& a, const FieldElement& b) {
    NormGroup N = norm_group(G, b);
    if (N.full) return true;
    return norm_group_contains(N, class_of(G, a), G.pn);
}

} // namespace reclab
