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

// Batch front-end over the reclab C API: field construction, formula
// evaluation, invariant suites, oracle cross-checks, JSON/table emission.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "reclab.h"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

struct OutputOptions {
    std::string format = "json";
};

void emit(const json& j, const OutputOptions& out) {
    if (out.format == "table") {
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::cout << it.key() << "\t" << it.value().dump() << "\n";
        }
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

[[noreturn]] void die(rl_status st) {
    std::cerr << "error (" << (int)st << "): " << rl_last_error() << "\n";
    std::exit(2);
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    rl_string_free(s);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reclab: exact arithmetic in higher local fields and explicit reciprocity formulas"};
    app.require_subcommand(1);
    app.fallthrough(true);

    int precision = 0;
    int window = 16;
    int dmax = 0;
    std::uint64_t seed = 12345;
    int samples = 50;
    OutputOptions out;
    app.add_option("--precision", precision, "working precision (p-adic digits; RECLAB_PRECISION overrides 0)");
    app.add_option("--window", window, "Laurent window half-width");
    app.add_option("--dmax", dmax, "formal group truncation degree");
    app.add_option("--seed", seed, "RNG seed for property sweeps");
    app.add_option("--samples", samples, "sample count for property sweeps");
    app.add_option("--format", out.format, "output format: json|table")
        ->check(CLI::IsMember({"json", "table"}));

    // field: build and describe a field
    auto* field_cmd = app.add_subcommand("field", "build a field and print its invariants");
    std::string field_path;
    std::string cyclo;
    field_cmd->add_option("--desc", field_path, "field descriptor JSON file");
    field_cmd->add_option("--cyclotomic", cyclo, "p,n for Q_p(zeta_{p^n})");

    // log: p-adic logarithm of a principal unit
    auto* log_cmd = app.add_subcommand("log", "p-adic logarithm of a principal unit");
    std::string log_field, log_elem;
    log_cmd->add_option("--field", log_field, "field descriptor JSON file");
    std::string log_cyclo;
    log_cmd->add_option("--cyclotomic", log_cyclo, "p,n shortcut for the field");
    log_cmd->add_option("--x", log_elem, "element JSON file")->required();

    // pair
    auto* pair_cmd = app.add_subcommand("pair", "evaluate a reciprocity formula");
    std::string engine, alpha_path, x_path, u_path, w_path, plan_mode, xi_path, cbar_path;
    std::vector<std::string> unit_paths;
    std::vector<std::int64_t> g_series, f_series;
    std::int64_t pr_p = 3;
    int level = 1, dd = 2, ss = 0;
    bool stronger = false;
    pair_cmd->add_option("--engine", engine, "ah|iwasawa|kolyvagin|wiles|iwasawa-gen|ah-higher")->required();
    pair_cmd->add_option("--p", pr_p, "prime p")->required();
    pair_cmd->add_option("--level", level, "pairing level n")->required();
    pair_cmd->add_option("--d", dd, "field dimension d");
    pair_cmd->add_option("--s", ss, "auxiliary torsion level");
    pair_cmd->add_option("--alpha", alpha_path, "Milnor symbol JSON file");
    pair_cmd->add_option("--x", x_path, "pairing point JSON file");
    pair_cmd->add_option("--u", u_path, "unit u JSON file (classical engines)");
    pair_cmd->add_option("--w", w_path, "unit w JSON file (iwasawa)");
    pair_cmd->add_option("--units", unit_paths, "unit entries (ah-higher)");
    pair_cmd->add_option("--g-series", g_series, "integer coefficients of g (iwasawa / ah-higher)");
    pair_cmd->add_option("--f-series", f_series, "integer coefficients of a custom Lubin-Tate f");
    pair_cmd->add_option("--xi", xi_path, "xi element JSON file (ah-higher; defaults to pi)");
    pair_cmd->add_option("--cbar", cbar_path, "invariant element JSON file (kolyvagin)");
    pair_cmd->add_flag("--stronger", stronger, "use the 1/p^n kernel form (ah-higher)");
    pair_cmd->add_option("--plan", plan_mode, "auto: attach the parameter plan to the report");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "compute admissible pairing parameters");
    std::int64_t plan_p = 3;
    int plan_n = 1, plan_rho = 1, plan_h = 1;
    std::int64_t plan_qS = 0;
    plan_cmd->add_option("--p", plan_p, "prime p")->required();
    plan_cmd->add_option("--n", plan_n, "pairing level n")->required();
    plan_cmd->add_option("--rho", plan_rho, "ramification index of S/Q_p");
    plan_cmd->add_option("--height", plan_h, "formal group height");
    plan_cmd->add_option("--qS", plan_qS, "residue size of S (default p)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "norm-subgroup brute-force checks");
    auto* hilbert_cmd = oracle_cmd->add_subcommand("hilbert", "Hilbert-symbol triviality");
    std::int64_t op = 3;
    int on = 1;
    std::string a_path, b_path;
    hilbert_cmd->add_option("--p", op, "prime p")->required();
    hilbert_cmd->add_option("--n", on, "level n")->required();
    hilbert_cmd->add_option("--a", a_path, "element a JSON file")->required();
    hilbert_cmd->add_option("--b", b_path, "element b JSON file")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "run an invariant suite");
    std::string suite;
    std::int64_t cp = 3;
    check_cmd->add_option("--suite", suite, "local|laurent|fgl|derivations|symbols|pairing|oracle")
        ->required();
    check_cmd->add_option("--p", cp, "prime p");

    CLI11_PARSE(app, argc, argv);

    auto parse_pn = [](const std::string& s) {
        auto comma = s.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("expected p,n");
        return std::pair<std::int64_t, int>{std::stoll(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    };

    if (*field_cmd) {
        rl_field* f = nullptr;
        rl_status st;
        if (!cyclo.empty()) {
            auto [p, n] = parse_pn(cyclo);
            st = rl_field_cyclotomic(p, n, precision, &f);
        } else if (!field_path.empty()) {
            st = rl_field_from_json(read_json_file(field_path).dump().c_str(), precision, &f);
        } else {
            std::cerr << "field: need --desc or --cyclotomic\n";
            return 2;
        }
        if (st != RL_OK) die(st);
        char* info = nullptr;
        st = rl_field_info(f, &info);
        rl_field_free(f);
        if (st != RL_OK) die(st);
        emit(json::parse(take_string(info)), out);
        return 0;
    }

    if (*log_cmd) {
        rl_field* f = nullptr;
        rl_status st;
        if (!log_cyclo.empty()) {
            auto [p, n] = parse_pn(log_cyclo);
            st = rl_field_cyclotomic(p, n, precision, &f);
        } else if (!log_field.empty()) {
            st = rl_field_from_json(read_json_file(log_field).dump().c_str(), precision, &f);
        } else {
            std::cerr << "log: need --field or --cyclotomic\n";
            return 2;
        }
        if (st != RL_OK) die(st);
        char* res = nullptr;
        st = rl_log_eval(f, read_json_file(log_elem).dump().c_str(), &res);
        rl_field_free(f);
        if (st != RL_OK) die(st);
        emit(json::parse(take_string(res)), out);
        return 0;
    }

    if (*pair_cmd) {
        json req;
        req["engine"] = engine;
        req["p"] = pr_p;
        req["level"] = level;
        req["d"] = dd;
        if (ss > 0) req["s"] = ss;
        if (precision > 0) req["precision"] = precision;
        req["window"] = window;
        if (dmax > 0) req["dmax"] = dmax;
        if (!alpha_path.empty()) req["alpha"] = read_json_file(alpha_path);
        if (!x_path.empty()) req["x"] = read_json_file(x_path);
        if (!u_path.empty()) req["u"] = read_json_file(u_path);
        if (!w_path.empty()) req["w"] = read_json_file(w_path);
        if (!unit_paths.empty()) {
            json units = json::array();
            for (const auto& up : unit_paths) units.push_back(read_json_file(up));
            req["units"] = units;
        }
        if (!g_series.empty()) req["g_series"] = g_series;
        if (!f_series.empty()) req["f_series"] = f_series;
        if (!xi_path.empty()) req["xi"] = read_json_file(xi_path);
        if (!cbar_path.empty()) req["cbar"] = read_json_file(cbar_path);
        if (stronger) req["stronger"] = true;
        if (!plan_mode.empty()) req["plan"] = plan_mode;
        char* res = nullptr;
        rl_status st = rl_pair_eval(req.dump().c_str(), &res);
        if (st != RL_OK) die(st);
        emit(json::parse(take_string(res)), out);
        return 0;
    }

    if (*plan_cmd) {
        json req{{"p", plan_p}, {"n", plan_n}, {"rho", plan_rho}, {"h", plan_h}};
        if (plan_qS > 0) req["qS"] = plan_qS;
        char* res = nullptr;
        rl_status st = rl_plan(req.dump().c_str(), &res);
        if (st != RL_OK) die(st);
        emit(json::parse(take_string(res)), out);
        return 0;
    }

    if (*hilbert_cmd) {
        json req{{"p", op}, {"n", on}, {"a", read_json_file(a_path)}, {"b", read_json_file(b_path)}};
        if (precision > 0) req["precision"] = precision;
        char* res = nullptr;
        rl_status st = rl_oracle_hilbert(req.dump().c_str(), &res);
        if (st != RL_OK) die(st);
        emit(json::parse(take_string(res)), out);
        return 0;
    }

    if (*check_cmd) {
        json req{{"suite", suite}, {"p", cp}, {"seed", seed}, {"samples", samples}};
        if (precision > 0) req["precision"] = precision;
        req["window"] = window;
        if (dmax > 0) req["dmax"] = dmax;
        char* res = nullptr;
        rl_status st = rl_check(req.dump().c_str(), &res);
        if (st != RL_OK) die(st);
        json report = json::parse(take_string(res));
        emit(report, out);
        return report.value("pass", false) ? 0 : 1;
    }

    return 0;
}
