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

#include "reclab/check.hpp"

#include <functional>
#include <random>

#include "reclab/derivations.hpp"
#include "reclab/oracle.hpp"
#include "reclab/pairing.hpp"

namespace reclab {

namespace {

struct Sweep {
    std::mt19937_64 rng;
    CheckReport report;

    explicit Sweep(const std::string& suite, u64 seed) : rng(seed) { report.suite = suite; }

    void run(const std::string& name, int cases, const std::function<bool(std::mt19937_64&)>& body) {
        CheckLine line;
        line.name = name;
        for (int i = 0; i < cases; ++i) {
            ++line.cases;
            bool ok = false;
            try {
                ok = body(rng);
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) ++line.failures;
        }
        report.lines.push_back(line);
    }
};

FieldElement rand_elem(const LocalField& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> d(0, 2000);
    std::vector<i64> c((size_t)F.dim());
    for (auto& x : c) x = d(rng);
    return F.from_coords(std::move(c), 0, F.prec_cap());
}

FieldElement rand_deep_unit(const LocalField& F, std::mt19937_64& rng, int depth) {
    return F.one() + rand_elem(F, rng) * F.uniformizer().pow(depth);
}

LaurentElement rand_tower(const LaurentField& fld, std::mt19937_64& rng, int spread = 2) {
    std::uniform_int_distribution<int> di(-spread, spread);
    LaurentElement r(fld, fld.coeff.prec_cap());
    for (int t = 0; t < 3; ++t)
        r += LaurentElement::monomial(fld, rand_elem(fld.coeff, rng), MultiIndex{di(rng)});
    return r;
}

USeries cyclo_f(const LocalField& K) {
    i64 p = K.p();
    std::vector<i64> c((size_t)p + 1, 0);
    i64 binom = 1;
    for (i64 k = 1; k <= p; ++k) {
        binom = binom * (p - k + 1) / k;
        c[(size_t)k] = binom;
    }
    return u_from_ints(K, c);
}

CheckReport check_local(const CheckOptions& opt) {
    Sweep s("local", opt.seed);
    int prec = opt.precision ? opt.precision : 12;
    LocalField L = LocalField::cyclotomic(opt.p, 1, prec);
    LocalField Qp = L.subfield(0);
    s.run("valuation additivity", opt.samples, [&](std::mt19937_64& rng) {
        FieldElement x = rand_elem(L, rng), y = rand_elem(L, rng);
        auto vx = x.valuation_opt(), vy = y.valuation_opt();
        if (!vx || !vy) return true;
        return (x * y).valuation() == *vx + *vy;
    });
    s.run("inverse round-trip", opt.samples, [&](std::mt19937_64& rng) {
        FieldElement x = rand_elem(L, rng);
        if (x.is_zero()) return true;
        return (x * x.inv() - L.one()).is_zero();
    });
    s.run("trace/norm transitivity", opt.samples / 2 + 1, [&](std::mt19937_64& rng) {
        LocalField T = LocalField::cyclotomic_tower(opt.p, {1, 2}, prec);
        FieldElement x = rand_elem(T, rng);
        FieldElement a = x.trace_to(T.subfield(0));
        FieldElement b = x.trace_to(T.subfield(1)).trace_to(T.subfield(0));
        return a.equals(b);
    });
    s.run("different valuation (cyclotomic)", 1, [&](std::mt19937_64&) {
        int e = L.e();
        return different_valuation(L, Qp) == e - 1;
    });
    return s.report;
}

CheckReport check_laurent(const CheckOptions& opt) {
    Sweep s("laurent", opt.seed);
    int prec = opt.precision ? opt.precision : 12;
    LocalField L = LocalField::cyclotomic(opt.p, 1, prec);
    LocalField Qp = L.subfield(0);
    LaurentField fld{L, 1, opt.window};
    s.run("c-map linearity", opt.samples, [&](std::mt19937_64& rng) {
        LaurentElement a = rand_tower(fld, rng), b = rand_tower(fld, rng);
        FieldElement al = rand_elem(L, rng);
        FieldElement lhs = coefficient_map_c(a.scale(al) + b);
        FieldElement rhs = al * coefficient_map_c(a) + coefficient_map_c(b);
        return (lhs - rhs).is_zero();
    });
    s.run("inversion round-trip", opt.samples, [&](std::mt19937_64& rng) {
        LaurentElement x = rand_tower(fld, rng);
        if (!x.valuation_opt()) return true;
        return (coefficient_map_c(x * x.inv()) - L.one()).is_zero();
    });
    s.run("rl1 duality sampling", opt.samples, [&](std::mt19937_64& rng) {
        int B = rl1_bound(fld, Qp);
        int mu1 = mu1_bound(fld);
        LaurentElement m = rand_tower(fld, rng).scale(L.uniformizer().pow(mu1));
        LaurentElement x = rand_tower(fld, rng).scale(L.uniformizer().pow(B));
        auto vx = x.valuation_opt();
        if (!vx || *vx < B) return true;
        FieldElement t = generalized_trace(x * m, Qp);
        auto vt = t.valuation_opt();
        return !vt || *vt >= 0;
    });
    return s.report;
}

CheckReport check_fgl(const CheckOptions& opt) {
    Sweep s("fgl", opt.seed);
    int prec = opt.precision ? opt.precision : 14;
    int dmax = opt.dmax ? opt.dmax : 8;
    LocalField Qp = LocalField::qp(opt.p, prec);
    USeries f = cyclo_f(Qp);
    FormalGroupLaw F = lubin_tate_build(f, Qp.from_int(opt.p), opt.p, dmax);
    int piv = Qp.prec_cap() - 2 * dmax;
    s.run("unit and commutativity", 1, [&](std::mt19937_64&) {
        for (int i = 0; i <= dmax; ++i) {
            FieldElement expect = i == 1 ? Qp.one() : Qp.zero();
            if (!F.F.at(i, 0).equals_mod(expect, piv)) return false;
            for (int j = 0; i + j <= dmax; ++j)
                if (!F.F.at(i, j).equals_mod(F.F.at(j, i), piv)) return false;
        }
        return true;
    });
    s.run("log homomorphism", 1, [&](std::mt19937_64&) {
        USeries X = u_zero(Qp, dmax), Y = u_zero(Qp, dmax);
        X.c[1] = Qp.one();
        Y.c[2] = Qp.one();
        USeries fxy = b_subst_uu(F.F, X, Y, dmax);
        USeries lhs = u_compose(u_trunc(F.log, dmax), fxy, dmax);
        USeries rhs = u_add(u_compose(u_trunc(F.log, dmax), X, dmax), u_compose(u_trunc(F.log, dmax), Y, dmax));
        for (int k = 0; k <= dmax; ++k)
            if (!lhs.at(k).equals_mod(rhs.at(k), piv)) return false;
        return true;
    });
    s.run("exp(log) = id", 1, [&](std::mt19937_64&) {
        USeries id = u_compose(u_trunc(F.exp, dmax), u_trunc(F.log, dmax), dmax);
        if (!id.at(1).equals_mod(Qp.one(), piv)) return false;
        for (int k = 2; k <= dmax; ++k) {
            auto v = id.at(k).valuation_opt();
            if (v && *v < piv) return false;
        }
        return true;
    });
    s.run("[a][b] = [ab]", 3, [&](std::mt19937_64& rng) {
        std::uniform_int_distribution<i64> d(2, 4);
        i64 a = d(rng), b = d(rng);
        USeries ea = fgl_times_int(F, a, dmax);
        USeries eb = fgl_times_int(F, b, dmax);
        USeries eab = fgl_times_int(F, a * b, dmax);
        USeries comp = u_compose(ea, eb, dmax);
        for (int k = 0; k <= dmax; ++k)
            if (!comp.at(k).equals_mod(eab.at(k), piv - 4)) return false;
        return true;
    });
    return s.report;
}

CheckReport check_derivations(const CheckOptions& opt) {
    Sweep s("derivations", opt.seed);
    int prec = opt.precision ? opt.precision : 14;
    LocalField tower = LocalField::cyclotomic_tower(opt.p, {1, 2}, prec);
    LocalField Qp = tower.subfield(0);
    LaurentField fld{tower, 1, opt.window};
    int B = rl1_bound(fld, Qp);
    int e = tower.e();
    int m = 3;
    ModuleTarget target{fld, B, B + m * e - 1};
    int ann = annihilator_valuation(fld, Qp);
    LaurentElement w = LaurentElement::monomial(fld, tower.uniformizer().pow(target.vperiod - ann), {-1});
    DerivationSpec spec = make_derivation(target, w, Qp);
    s.run("alternating", opt.samples, [&](std::mt19937_64& rng) {
        LaurentElement a = rand_tower(fld, rng);
        return module_equal(target, derivation_apply(spec, {a, a}), LaurentElement(fld, fld.coeff.prec_cap()));
    });
    s.run("leibniz", opt.samples, [&](std::mt19937_64& rng) {
        LaurentElement a = rand_tower(fld, rng), b = rand_tower(fld, rng), c = rand_tower(fld, rng);
        LaurentElement lhs = derivation_apply(spec, {a * b, c});
        LaurentElement rhs = derivation_apply(spec, {a, c}) * b + derivation_apply(spec, {b, c}) * a;
        return module_equal(target, lhs, rhs);
    });
    s.run("determinant identity", opt.samples, [&](std::mt19937_64& rng) {
        LaurentElement a = rand_tower(fld, rng), b = rand_tower(fld, rng);
        LaurentElement lhs = derivation_apply(spec, {a, b});
        LaurentElement rhs = jacobian_det({a, b}) * spec.w;
        return module_equal(target, lhs, rhs);
    });
    return s.report;
}

CheckReport check_symbols(const CheckOptions& opt) {
    Sweep s("symbols", opt.seed);
    int prec = opt.precision ? opt.precision : 12;
    LocalField tower = LocalField::cyclotomic_tower(opt.p, {1, 2}, prec);
    LocalField K1 = tower.subfield(1);
    LaurentField big{tower, 1, opt.window};
    LaurentField mid{K1, 1, opt.window};
    s.run("steinberg detector", opt.samples / 2 + 1, [&](std::mt19937_64& rng) {
        FieldElement a0 = rand_elem(tower, rng);
        if (a0.is_zero() || (tower.one() - a0).is_zero()) return true;
        LaurentElement a = LaurentElement::from_coeff(big, a0);
        LaurentElement b = LaurentElement::from_coeff(big, tower.one()) - a;
        return steinberg_trivial(symbol_new(big, {a, b}), 6);
    });
    s.run("norm multiplicativity", opt.samples / 4 + 1, [&](std::mt19937_64& rng) {
        LaurentElement x = rand_tower(big, rng, 1);
        LaurentElement y = rand_tower(big, rng, 1);
        auto vx = x.valuation_opt(), vy = y.valuation_opt();
        if (!vx || !vy) return true;
        return laurent_norm(x * y, mid).equals_mod(laurent_norm(x, mid) * laurent_norm(y, mid), 6);
    });
    return s.report;
}

CheckReport check_pairing(const CheckOptions& opt) {
    Sweep s("pairing", opt.seed);
    LocalField L = LocalField::cyclotomic(opt.p, 1, opt.precision ? opt.precision : 14);
    s.run("iwasawa = artin-hasse on zeta", opt.samples, [&](std::mt19937_64& rng) {
        FieldElement u = rand_deep_unit(L, rng, 3);
        return pv_equal(artin_hasse_classical(u, 1), iwasawa_pairing(u, L.one_plus_generator(), 1));
    });
    s.run("kernel of p^n-th powers", opt.samples, [&](std::mt19937_64& rng) {
        FieldElement u = rand_deep_unit(L, rng, 1);
        return artin_hasse_classical(u.pow(pow_checked(opt.p, 1)), 1).is_zero();
    });
    PairingContext ctx = make_context(opt.p, 2, 1, 1, nullptr, {});
    s.run("higher engine alternating", opt.samples / 4 + 1, [&](std::mt19937_64& rng) {
        LaurentElement a = LaurentElement::from_coeff(ctx.Ln, rand_deep_unit(ctx.Kn, rng, 1));
        FieldElement pi = ctx.Kn.uniformizer();
        std::uniform_int_distribution<i64> d(1, 200);
        LaurentElement x = LaurentElement::from_coeff(ctx.Ln, pi.pow(2).scaled(d(rng)));
        return iwasawa_gen_higher(ctx, symbol_new(ctx.Ln, {a, a}), x).is_zero();
    });
    return s.report;
}

CheckReport check_oracle(const CheckOptions& opt) {
    Sweep s("oracle", opt.seed);
    if (opt.p != 3) {
        CheckLine l;
        l.name = "oracle sweeps run at p = 3 desk scale";
        l.cases = 1;
        l.failures = 1;
        s.report.lines.push_back(l);
        return s.report;
    }
    LocalField L = LocalField::cyclotomic(3, 1, opt.precision ? opt.precision : 12);
    UnitClassGroup G = unit_classes(L, 1);
    s.run("class count", 1, [&](std::mt19937_64&) { return G.class_count == 81 && G.fully_verified; });
    s.run("p-th powers are trivial", opt.samples / 5 + 1, [&](std::mt19937_64& rng) {
        FieldElement u = rand_elem(L, rng);
        if (u.is_zero()) return true;
        FieldElement b = L.from_int(3);
        return hilbert_trivial(G, u.pow(3), b);
    });
    s.run("AH triviality matches the norm oracle", 10, [&](std::mt19937_64& rng) {
        FieldElement u = rand_deep_unit(L, rng, 3);
        bool ah = artin_hasse_classical(u, 1).is_zero();
        bool nm = hilbert_trivial(G, u, L.one_plus_generator());
        return ah == nm;
    });
    return s.report;
}

} // namespace

std::vector<std::string> check_suite_names() {
    return {"local", "laurent", "fgl", "derivations", "symbols", "pairing", "oracle"};
}

CheckReport run_check_suite(const std::string& suite, const CheckOptions& opt) {
    if (suite == "local") return check_local(opt);
    if (suite == "laurent") return check_laurent(opt);
    if (suite == "fgl") return check_fgl(opt);
    if (suite == "derivations") return check_derivations(opt);
    if (suite == "symbols") return check_symbols(opt);
    if (suite == "pairing") return check_pairing(opt);
    if (suite == "oracle") return check_oracle(opt);
    fail(Errc::config_error, "unknown check suite: " + suite);
}

} // namespace reclab
