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

#include "reclab.h"

#include <cstring>
#include <string>

#include "reclab/check.hpp"
#include "reclab/json_io.hpp"
#include "reclab/oracle.hpp"

namespace {

thread_local std::string g_last_error;

using namespace reclab;

struct FieldHandle {
    LocalField F;
};

rl_status status_of(const Error& e) {
    g_last_error = std::string(errc_name(e.code())) + ": " + e.what();
    int c = (int)e.code();
    if (c >= 1 && c <= 25) return (rl_status)c;
    return RL_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
rl_status guarded(Fn&& fn) {
    try {
        fn();
        return RL_OK;
    } catch (const Error& e) {
        return status_of(e);
    } catch (const json::exception& e) {
        g_last_error = std::string("bad request: ") + e.what();
        return RL_ERR_BAD_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RL_ERR_INTERNAL;
    }
}

int env_default_precision(int fallback) {
    const char* env = std::getenv("RECLAB_PRECISION");
    if (!env) return fallback;
    int v = std::atoi(env);
    return v > 0 ? v : fallback;
}

// shared engine-request evaluation, also used by the CLI through rl_pair_eval
json eval_pair_request(const json& req) {
    std::string engine = req.at("engine").get<std::string>();
    i64 p = req.at("p").get<i64>();
    int n = req.at("level").get<int>();
    json out;
    out["engine"] = engine;
    if (engine == "ah" || engine == "iwasawa") {
        int prec = env_default_precision(req.value("precision", 0));
        if (prec == 0) prec = 6 * n + 6;
        LocalField L = req.contains("field") ? field_from_json(req.at("field"), prec)
                                             : LocalField::cyclotomic(p, n, prec);
        FieldElement u = elem_from_json(req.at("u"), L);
        PairingValue v;
        if (engine == "ah") {
            v = artin_hasse_classical(u, n);
        } else {
            FieldElement w = elem_from_json(req.at("w"), L);
            if (req.contains("g")) {
                USeries g = u_from_ints(L.subfield(0), req.at("g").get<std::vector<i64>>());
                v = iwasawa_pairing(u, w, n, &g);
            } else {
                v = iwasawa_pairing(u, w, n);
            }
        }
        out["coords"] = pv_to_json(v, p)["coords"];
        out["level"] = n;
        out["params"] = json{{"p", p}, {"precision", prec}};
        return out;
    }
    int d = req.value("d", 2);
    int s = req.value("s", engine == "kolyvagin" || engine == "wiles" ? 2 * n : n);
    ContextOptions opt;
    opt.prec_p = env_default_precision(req.value("precision", 0));
    opt.window = req.value("window", 16);
    opt.dmax = req.value("dmax", 0);
    std::optional<USeries> custom;
    PairingContext ctx = [&] {
        if (req.contains("f_series")) {
            LocalField Qp = LocalField::qp(p, opt.prec_p > 0 ? opt.prec_p : 4 * n + 2 * s + 8);
            custom = u_from_ints(Qp, req.at("f_series").get<std::vector<i64>>());
            return make_context(p, d, n, s, &*custom, opt);
        }
        return make_context(p, d, n, s, nullptr, opt);
    }();
    LaurentElement x = laurent_from_json(req.at("x"), ctx.Ln);
    PairingValue v;
    if (engine == "kolyvagin") {
        MilnorSymbol alpha = symbol_from_json(req.at("alpha"), ctx.Ls);
        if (req.contains("cbar")) {
            LaurentElement cb = laurent_from_json(req.at("cbar"), ctx.Ls);
            v = kolyvagin_pairing(ctx, alpha, x, n, &cb);
        } else {
            v = kolyvagin_pairing(ctx, alpha, x, n, nullptr);
        }
    } else if (engine == "wiles") {
        MilnorSymbol alpha = symbol_from_json(req.at("alpha"), ctx.Ls);
        v = lubin_tate_wiles(ctx, alpha, x, n);
    } else if (engine == "iwasawa-gen") {
        MilnorSymbol alpha = symbol_from_json(req.at("alpha"), ctx.Ln);
        v = iwasawa_gen_higher(ctx, alpha, x);
    } else if (engine == "ah-higher") {
        std::vector<LaurentElement> units;
        for (const auto& uj : req.at("units")) units.push_back(laurent_from_json(uj, ctx.Ln));
        HigherAhOptions ho;
        ho.stronger_form = req.value("stronger", false);
        std::optional<USeries> g;
        std::optional<FieldElement> xi;
        if (req.contains("g_series")) {
            g = u_from_ints(ctx.Qp, req.at("g_series").get<std::vector<i64>>());
            ho.g = &*g;
        }
        if (req.contains("xi")) {
            xi = elem_from_json(req.at("xi"), ctx.Qp);
            ho.xi = &*xi;
        } else {
            out["xi"] = "default-pi";
        }
        v = artin_hasse_higher(ctx, units, x, ho);
    } else {
        fail(Errc::config_error, "unknown engine: " + engine);
    }
    out["coords"] = pv_to_json(v, p)["coords"];
    out["level"] = n;
    out["params"] = json{{"p", p}, {"d", d}, {"s", s}, {"precision", ctx.Ks.prec_p()}};
    if (req.value("plan", std::string()) == "auto") {
        int e = ctx.Kn.e();
        i64 pm1 = 1;
        for (int i = 0; i < n - 1; ++i) pm1 *= p;
        Rational vDLK{(i64)n * e - pm1, e};
        Rational vDK1{(i64)(p - 1) - 1, p - 1};
        out["plan"] = plan_to_json(plan_parameters(n, p, 1, 1, p, e, vDLK, vDK1));
    }
    return out;
}

} // namespace

extern "C" {

const char* rl_version(void) { return "reclab 0.1.0"; }

const char* rl_last_error(void) { return g_last_error.c_str(); }

void rl_string_free(char* s) { std::free(s); }

rl_status rl_field_from_json(const char* desc_json, int prec_p, rl_field** out) {
    if (!desc_json || !out) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        json j = json::parse(desc_json);
        auto* h = new FieldHandle{field_from_json(j, env_default_precision(prec_p > 0 ? prec_p : 12))};
        *out = (rl_field*)h;
    });
}

rl_status rl_field_cyclotomic(int64_t p, int n, int prec_p, rl_field** out) {
    if (!out) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        auto* h = new FieldHandle{LocalField::cyclotomic(p, n, env_default_precision(prec_p > 0 ? prec_p : 12))};
        *out = (rl_field*)h;
    });
}

void rl_field_free(rl_field* f) { delete (FieldHandle*)f; }

rl_status rl_field_info(const rl_field* f, char** out_json) {
    if (!f || !out_json) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        const LocalField& F = ((const FieldHandle*)f)->F;
        json j;
        j["p"] = F.p();
        j["degree"] = F.dim();
        j["e"] = F.e();
        j["f"] = F.f();
        j["precision_p"] = F.prec_p();
        j["different"] = different_valuation(F, F.subfield(0));
        j["tower"] = field_to_json(F)["tower"];
        *out_json = dup_string(j.dump());
    });
}

rl_status rl_log_eval(const rl_field* f, const char* elem_json, char** out_json) {
    if (!f || !elem_json || !out_json) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        const LocalField& F = ((const FieldHandle*)f)->F;
        FieldElement u = elem_from_json(json::parse(elem_json), F);
        *out_json = dup_string(elem_to_json(padic_log(u)).dump());
    });
}

rl_status rl_elem_op(const rl_field* f, const char* op, const char* a_json, const char* b_json,
                     char** out_json) {
    if (!f || !op || !a_json || !out_json) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        const LocalField& F = ((const FieldHandle*)f)->F;
        FieldElement a = elem_from_json(json::parse(a_json), F);
        std::string o = op;
        json out;
        if (o == "add" || o == "mul" || o == "sub") {
            if (!b_json) fail(Errc::config_error, "binary op needs two operands");
            FieldElement b = elem_from_json(json::parse(b_json), F);
            FieldElement r = o == "add" ? a + b : o == "mul" ? a * b : a - b;
            out = elem_to_json(r);
        } else if (o == "inv") {
            out = elem_to_json(a.inv());
        } else if (o == "pow") {
            if (!b_json) fail(Errc::config_error, "pow needs an integer exponent");
            out = elem_to_json(a.pow(json::parse(b_json).get<i64>()));
        } else if (o == "val") {
            auto v = a.valuation_opt();
            out = json{{"valuation", v ? json(*v) : json(nullptr)}, {"precision", a.precision()}};
        } else if (o == "trace" || o == "norm") {
            auto [t, nr] = a.trace_norm(F.subfield(0));
            out = elem_to_json(o == "trace" ? t : nr);
        } else {
            fail(Errc::config_error, "unknown element op: " + o);
        }
        *out_json = dup_string(out.dump());
    });
}

rl_status rl_pair_eval(const char* request_json, char** out_json) {
    if (!request_json || !out_json) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] { *out_json = dup_string(eval_pair_request(json::parse(request_json)).dump()); });
}

rl_status rl_plan(const char* request_json, char** out_json) {
    if (!request_json || !out_json) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        json req = json::parse(request_json);
        int n = req.at("n").get<int>();
        i64 p = req.at("p").get<i64>();
        int rho = req.value("rho", 1);
        int h = req.value("h", 1);
        i64 qS = req.value("qS", p);
        // defaults describe L = Q_p(zeta_{p^n}), K = S = Q_p
        i64 e = p - 1;
        for (int i = 0; i < n - 1; ++i) e *= p;
        i64 pm1 = 1;
        for (int i = 0; i < n - 1; ++i) pm1 *= p;
        Rational vDLK{(i64)n * e - pm1, e};
        Rational vDK1{p - 2, p - 1};
        if (req.contains("vD_L_K")) vDLK = {req.at("vD_L_K").at(0).get<i64>(), req.at("vD_L_K").at(1).get<i64>()};
        if (req.contains("vD_K2rho1"))
            vDK1 = {req.at("vD_K2rho1").at(0).get<i64>(), req.at("vD_K2rho1").at(1).get<i64>()};
        PairingPlan plan = plan_parameters(n, p, rho, h, qS, (int)e, vDLK, vDK1);
        *out_json = dup_string(plan_to_json(plan).dump());
    });
}

rl_status rl_oracle_hilbert(const char* request_json, char** out_json) {
    if (!request_json || !out_json) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        json req = json::parse(request_json);
        i64 p = req.at("p").get<i64>();
        int n = req.at("n").get<int>();
        int prec = env_default_precision(req.value("precision", 12));
        LocalField L = req.contains("field") ? field_from_json(req.at("field"), prec)
                                             : LocalField::cyclotomic(p, n, prec);
        UnitClassGroup G = unit_classes(L, n);
        FieldElement a = elem_from_json(req.at("a"), L);
        FieldElement b = elem_from_json(req.at("b"), L);
        bool trivial = hilbert_trivial(G, a, b);
        *out_json = dup_string(json{{"trivial", trivial}}.dump());
    });
}

rl_status rl_check(const char* request_json, char** out_json) {
    if (!request_json || !out_json) {
        g_last_error = "null argument";
        return RL_ERR_BAD_ARGUMENT;
    }
    return guarded([&] {
        json req = json::parse(request_json);
        CheckOptions opt;
        opt.p = req.value("p", (i64)3);
        opt.seed = req.value("seed", (u64)12345);
        opt.samples = req.value("samples", 50);
        opt.precision = env_default_precision(req.value("precision", 0));
        opt.window = req.value("window", 16);
        opt.dmax = req.value("dmax", 0);
        CheckReport report = run_check_suite(req.at("suite").get<std::string>(), opt);
        json lines = json::array();
        for (const auto& l : report.lines)
            lines.push_back(json{{"name", l.name}, {"cases", l.cases}, {"failures", l.failures}});
        *out_json = dup_string(json{{"suite", report.suite}, {"lines", lines}, {"pass", report.ok()}}.dump());
    });
}

} // extern "C"
