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

#include "reclab/json_io.hpp"

namespace reclab {

namespace {

json digits_of(i64 x, i64 p, int m) {
    json a = json::array();
    for (i64 d : to_digits(x, p, m)) a.push_back(d);
    return a;
}

i64 digits_back(const json& a, i64 p, int m) {
    std::vector<i64> d;
    for (const auto& x : a) d.push_back(x.get<i64>());
    return from_digits(d, p, m);
}

std::vector<i64> coeff_from_json(const json& j, const LocalField& sub, i64 p, int prec_p) {
    std::vector<i64> c((size_t)sub.dim(), 0);
    if (j.is_number_integer()) {
        i64 v = j.get<i64>() % pow_checked(p, prec_p);
        if (v < 0) v += pow_checked(p, prec_p);
        c[0] = v;
        return c;
    }
    const json& coords = j.at("coords");
    if ((int)coords.size() != sub.dim()) fail(Errc::config_error, "coefficient has wrong dimension");
    for (size_t i = 0; i < coords.size(); ++i) c[i] = digits_back(coords[i], p, prec_p);
    return c;
}

} // namespace

json field_to_json(const LocalField& F) {
    json tower = json::array();
    for (int k = 1; k <= F.top(); ++k) {
        json step;
        step["kind"] = F.step_kind(k) == StepKind::eisenstein ? "eisenstein" : "unramified";
        json poly = json::array();
        LocalField sub = F.subfield(k - 1);
        LocalField cur = F.subfield(k);
        // gen^deg = -(c_{deg-1} gen^{deg-1} + ... + c_0): export the c_i blockwise
        FieldElement gend = cur.generator().pow(F.step_degree(k));
        int sd = sub.dim();
        for (int i = 0; i < F.step_degree(k); ++i) {
            std::vector<i64> blk(gend.coords().begin() + (size_t)i * sd,
                                 gend.coords().begin() + (size_t)(i + 1) * sd);
            FieldElement ci = -sub.from_coords(std::move(blk), 0, sub.prec_cap());
            json coords = json::array();
            for (i64 x : ci.coords()) coords.push_back(digits_of(x, F.p(), F.prec_p()));
            poly.push_back(json{{"coords", coords}});
        }
        step["poly"] = poly;
        tower.push_back(step);
    }
    json j;
    j["p"] = F.p();
    j["tower"] = tower;
    return j;
}

LocalField field_from_json(const json& j, int prec_p) {
    i64 p = j.at("p").get<i64>();
    std::vector<TowerStep> steps;
    LocalField partial = LocalField::qp(p, prec_p);
    if (j.contains("tower")) {
        for (const auto& stepj : j.at("tower")) {
            TowerStep st;
            std::string kind = stepj.at("kind").get<std::string>();
            if (kind == "eisenstein") st.kind = StepKind::eisenstein;
            else if (kind == "unramified") st.kind = StepKind::unramified;
            else fail(Errc::config_error, "unknown step kind");
            for (const auto& cj : stepj.at("poly"))
                st.poly.push_back(coeff_from_json(cj, partial, p, prec_p));
            steps.push_back(st);
            partial = LocalField::make(p, steps, prec_p);
        }
    }
    return LocalField::make(p, steps, prec_p);
}

json elem_to_json(const FieldElement& x) {
    LocalField F = x.field();
    json coords = json::array();
    for (i64 c : x.coords()) coords.push_back(digits_of(c, F.p(), F.prec_p()));
    json j;
    j["coords"] = coords;
    j["precision"] = x.precision();
    if (x.denom_exp() != 0) j["denom_exp"] = x.denom_exp();
    return j;
}

FieldElement elem_from_json(const json& j, const LocalField& F) {
    const json& coords = j.at("coords");
    if ((int)coords.size() != F.dim()) fail(Errc::config_error, "element has wrong dimension");
    std::vector<i64> c;
    for (const auto& a : coords) c.push_back(digits_back(a, F.p(), F.prec_p()));
    int dp = j.value("denom_exp", 0);
    int prec = j.value("precision", F.prec_cap(dp));
    return F.from_coords(std::move(c), dp, prec);
}

json laurent_to_json(const LaurentElement& x) {
    json coeffs = json::array();
    for (const auto& [idx, c] : x.coeffs()) {
        json e;
        e["idx"] = idx;
        e["value"] = elem_to_json(c);
        coeffs.push_back(e);
    }
    json j;
    j["coeffs"] = coeffs;
    j["precision"] = x.tail();
    json window = json::array();
    if (!x.coeffs().empty()) {
        for (int t = 0; t < x.parent().nvars; ++t) {
            int lo = 1 << 28, hi = -(1 << 28);
            for (const auto& [idx, c] : x.coeffs()) {
                lo = std::min(lo, idx[(size_t)t]);
                hi = std::max(hi, idx[(size_t)t]);
            }
            window.push_back(json::array({lo, hi}));
        }
    }
    j["window"] = window;
    return j;
}

LaurentElement laurent_from_json(const json& j, const LaurentField& fld) {
    int prec = j.value("precision", fld.coeff.prec_cap());
    LaurentElement r(fld, fld.coeff.prec_cap());
    for (const auto& e : j.at("coeffs")) {
        MultiIndex idx;
        for (const auto& i : e.at("idx")) idx.push_back(i.get<int>());
        if ((int)idx.size() != fld.nvars) fail(Errc::config_error, "coefficient index has wrong arity");
        r += LaurentElement::monomial(fld, elem_from_json(e.at("value"), fld.coeff), idx);
    }
    return r.truncated_tail(prec);
}

json fgl_to_json(const FormalGroupLaw& G) {
    json coeffs = json::array();
    for (int i = 0; i <= G.F.dmax; ++i)
        for (int jj = 0; i + jj <= G.F.dmax; ++jj) {
            if (G.F.at(i, jj).is_zero()) continue;
            coeffs.push_back(json::array({i, jj, elem_to_json(G.F.at(i, jj))}));
        }
    json j;
    j["fgl"] = {{"source", G.source}, {"coeffs", coeffs}, {"dmax", G.F.dmax}};
    return j;
}

json symbol_to_json(const MilnorSymbol& s) {
    json factors = json::array();
    for (const auto& f : s.factors) {
        json entries = json::array();
        for (const auto& e : f.entries) entries.push_back(laurent_to_json(e));
        factors.push_back(json{{"entries", entries}, {"exp", f.exp}});
    }
    return json{{"factors", factors}};
}

MilnorSymbol symbol_from_json(const json& j, const LaurentField& fld) {
    MilnorSymbol s;
    s.ambient = fld;
    for (const auto& fj : j.at("factors")) {
        SymbolFactor f;
        f.exp = fj.value("exp", (i64)1);
        for (const auto& ej : fj.at("entries")) f.entries.push_back(laurent_from_json(ej, fld));
        if ((int)f.entries.size() != fld.dim()) fail(Errc::config_error, "symbol factor arity mismatch");
        s.factors.push_back(std::move(f));
    }
    return s;
}

json pv_to_json(const PairingValue& v, i64 p) {
    json coords = json::array();
    for (i64 c : v.coords) coords.push_back(digits_of(c, p, v.level));
    return json{{"coords", coords}, {"level", v.level}};
}

json plan_to_json(const PairingPlan& plan) {
    return json{{"n", plan.n},
                {"m", plan.m},
                {"k", plan.k},
                {"t", plan.t},
                {"rho", plan.rho},
                {"kappa", plan.kappa},
                {"c1", json::array({plan.c1.num, plan.c1.den})},
                {"c2", json::array({plan.c2.num, plan.c2.den})},
                {"valid", plan.valid}};
}

} // namespace reclab
