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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "reclab.h"
#include "reclab/json_io.hpp"
#include "reclab/oracle.hpp"

using namespace reclab;

TEST_CASE("element json round-trip") {
    LocalField L = LocalField::cyclotomic(3, 1, 10);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<i64> d(0, 5000);
    for (int it = 0; it < 20; ++it) {
        FieldElement x = L.from_coords({d(rng), d(rng)}, it % 3 == 0 ? 1 : 0, L.prec_cap(it % 3 == 0 ? 1 : 0));
        FieldElement back = elem_from_json(elem_to_json(x), L);
        CHECK((x - back).is_zero());
        CHECK(back.precision() == x.precision());
    }
}

TEST_CASE("field descriptor json round-trip preserves structure") {
    LocalField T = LocalField::cyclotomic_tower(3, {1, 2}, 10);
    json desc = field_to_json(T);
    LocalField back = field_from_json(desc, 10);
    CHECK(back.dim() == T.dim());
    CHECK(back.e() == T.e());
    CHECK(back.levels() == T.levels());
    // the rebuilt generator satisfies the same minimal polynomial relation:
    // f(pi_2) = pi_1 in the nested tower
    FieldElement pi2 = back.generator();
    FieldElement fpi2 = (back.one() + pi2).pow(3) - back.one();
    CHECK(fpi2.equals(back.generator_of_step(1)));
}

TEST_CASE("laurent and symbol json round-trips") {
    LocalField L = LocalField::cyclotomic(3, 1, 10);
    LaurentField fld{L, 1, 16};
    LaurentElement x = LaurentElement::monomial(fld, L.uniformizer(), {-2}) +
                       LaurentElement::from_coeff(fld, L.from_int(5));
    LaurentElement back = laurent_from_json(laurent_to_json(x), fld);
    CHECK(back.equals_mod(x, 8));
    MilnorSymbol s = symbol_new(fld, {x + LaurentElement::from_coeff(fld, L.one()),
                                      LaurentElement::monomial(fld, L.one(), {1})});
    MilnorSymbol sb = symbol_from_json(symbol_to_json(s), fld);
    CHECK(sb.factors.size() == s.factors.size());
    CHECK(sb.factors[0].entries[0].equals_mod(s.factors[0].entries[0], 8));
}

TEST_CASE("C API: field build, info, log") {
    rl_field* f = nullptr;
    REQUIRE(rl_field_cyclotomic(3, 1, 12, &f) == RL_OK);
    char* info = nullptr;
    REQUIRE(rl_field_info(f, &info) == RL_OK);
    json j = json::parse(info);
    rl_string_free(info);
    CHECK(j["degree"] == 2);
    CHECK(j["e"] == 2);
    CHECK(j["different"] == 1);
    // log of 1 + 9 through the C surface
    LocalField L = LocalField::cyclotomic(3, 1, 12);
    json u = elem_to_json(L.from_int(10));
    char* res = nullptr;
    REQUIRE(rl_log_eval(f, u.dump().c_str(), &res) == RL_OK);
    json lg = json::parse(res);
    rl_string_free(res);
    FieldElement expect = padic_log(L.from_int(10));
    CHECK((elem_from_json(lg, L) - expect).is_zero());
    // errors surface as status codes with messages
    json shallow = elem_to_json(L.from_int(3));
    CHECK(rl_log_eval(f, shallow.dump().c_str(), &res) == RL_ERR_DOMAIN_VIOLATION);
    CHECK(std::string(rl_last_error()).find("principal unit") != std::string::npos);
    rl_field_free(f);
}

TEST_CASE("C API: pairing engines end to end") {
    LocalField L = LocalField::cyclotomic(3, 1, 12);
    json req;
    req["engine"] = "ah";
    req["p"] = 3;
    req["level"] = 1;
    req["u"] = elem_to_json(L.from_int(10));
    char* res = nullptr;
    REQUIRE(rl_pair_eval(req.dump().c_str(), &res) == RL_OK);
    json v = json::parse(res);
    rl_string_free(res);
    CHECK(v["level"] == 1);
    CHECK(v["coords"][0][0] == 0);
    // iwasawa route with w = zeta
    req["engine"] = "iwasawa";
    req["w"] = elem_to_json(L.one_plus_generator());
    REQUIRE(rl_pair_eval(req.dump().c_str(), &res) == RL_OK);
    json v2 = json::parse(res);
    rl_string_free(res);
    CHECK(v2["coords"] == v["coords"]);
    // a higher engine through the full JSON surface
    PairingContext ctx = make_context(3, 2, 1, 1, nullptr, {});
    LaurentElement x = LaurentElement::from_coeff(ctx.Ln, ctx.Kn.uniformizer().pow(2));
    LaurentElement T = LaurentElement::monomial(ctx.Ln, ctx.Kn.one(), {1});
    json req2;
    req2["engine"] = "ah-higher";
    req2["p"] = 3;
    req2["level"] = 1;
    req2["d"] = 2;
    req2["stronger"] = true;
    req2["units"] = json::array({laurent_to_json(T)});
    req2["x"] = laurent_to_json(x);
    REQUIRE(rl_pair_eval(req2.dump().c_str(), &res) == RL_OK);
    json v3 = json::parse(res);
    rl_string_free(res);
    PairingValue direct = zinoviev_direct(ctx, x);
    CHECK(v3["coords"][0][0].get<i64>() == direct.coords[0] % 3);
}

TEST_CASE("C API: element operations") {
    rl_field* f = nullptr;
    REQUIRE(rl_field_cyclotomic(3, 1, 12, &f) == RL_OK);
    LocalField L = LocalField::cyclotomic(3, 1, 12);
    json a = elem_to_json(L.one_plus_generator());
    char* res = nullptr;
    REQUIRE(rl_elem_op(f, "pow", a.dump().c_str(), "3", &res) == RL_OK);
    json cube = json::parse(res);
    rl_string_free(res);
    CHECK((elem_from_json(cube, L) - L.one()).is_zero()); // zeta^3 = 1
    REQUIRE(rl_elem_op(f, "mul", a.dump().c_str(), a.dump().c_str(), &res) == RL_OK);
    json sq = json::parse(res);
    rl_string_free(res);
    CHECK((elem_from_json(sq, L) - L.one_plus_generator().pow(2)).is_zero());
    REQUIRE(rl_elem_op(f, "val", a.dump().c_str(), nullptr, &res) == RL_OK);
    CHECK(json::parse(res)["valuation"] == 0);
    rl_string_free(res);
    rl_field_free(f);
}

TEST_CASE("C API: plan and oracle") {
    char* res = nullptr;
    REQUIRE(rl_plan(R"({"p":3,"n":1})", &res) == RL_OK);
    json plan = json::parse(res);
    rl_string_free(res);
    CHECK(plan["m"] == 3);
    CHECK(plan["valid"] == true);
    LocalField L = LocalField::cyclotomic(3, 1, 12);
    json req{{"p", 3},
             {"n", 1},
             {"a", elem_to_json(L.from_int(10))},
             {"b", elem_to_json(L.one_plus_generator())}};
    REQUIRE(rl_oracle_hilbert(req.dump().c_str(), &res) == RL_OK);
    json ans = json::parse(res);
    rl_string_free(res);
    CHECK(ans["trivial"] == true);
}

TEST_CASE("C API: check suite") {
    char* res = nullptr;
    REQUIRE(rl_check(R"({"suite":"local","p":3,"samples":10})", &res) == RL_OK);
    json rep = json::parse(res);
    rl_string_free(res);
    CHECK(rep["pass"] == true);
    CHECK(rl_check(R"({"suite":"nope"})", &res) == RL_ERR_CONFIG);
}
