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

#include "reclab/laurent.hpp"

using namespace reclab;

namespace {

LaurentElement random_tower_elem(const LaurentField& fld, std::mt19937_64& rng, int idx_spread = 3,
                                 int min_val = 0) {
    std::uniform_int_distribution<int> di(-idx_spread, idx_spread);
    std::uniform_int_distribution<i64> dc(0, 2000);
    LaurentElement r(fld, fld.coeff.prec_cap());
    FieldElement pi = fld.coeff.uniformizer();
    for (int t = 0; t < 4; ++t) {
        std::vector<i64> c((size_t)fld.coeff.dim());
        for (auto& x : c) x = dc(rng);
        FieldElement coeff = fld.coeff.from_coords(std::move(c), 0, fld.coeff.prec_cap());
        coeff = coeff * pi.pow(min_val);
        r += LaurentElement::monomial(fld, coeff, MultiIndex{di(rng)});
    }
    return r;
}

} // namespace

TEST_CASE("valuation: min over coefficient valuations") {
    LocalField Q3 = LocalField::qp(3, 10);
    LaurentField fld{Q3, 1, 16};
    // 3 T^{-2} + T has valuation 0
    LaurentElement x = LaurentElement::monomial(fld, Q3.from_int(3), {-2}) +
                       LaurentElement::monomial(fld, Q3.one(), {1});
    CHECK(x.valuation() == 0);
    CHECK(LaurentElement::monomial(fld, Q3.from_int(3), {-2}).valuation() == 1);
}

TEST_CASE("monomial inversion is exact") {
    LocalField Q3 = LocalField::qp(3, 10);
    LaurentField fld{Q3, 1, 16};
    LaurentElement t = LaurentElement::monomial(fld, Q3.one(), {1});
    LaurentElement ti = t.inv();
    CHECK(ti.coefficient({-1}).equals(Q3.one()));
    LaurentElement prod = t * ti;
    CHECK(coefficient_map_c(prod).equals(Q3.one()));
    CHECK(prod.tail() >= 8);
}

TEST_CASE("geometric inversion: (1+T)^{-1} against the window") {
    LocalField Q3 = LocalField::qp(3, 10);
    LaurentField fld{Q3, 1, 16};
    LaurentElement x = LaurentElement::from_coeff(fld, Q3.one()) +
                       LaurentElement::monomial(fld, Q3.one(), {1});
    LaurentElement y = x.inv();
    CHECK(y.coefficient({0}).equals(Q3.one()));
    CHECK(y.coefficient({1}).equals(Q3.from_int(-1)));
    CHECK(y.coefficient({8}).equals(Q3.one()));
    // the inverse is truncated: the high tail carries no certificate
    CHECK(y.tail_hi() == 0);
    CHECK(y.tail_lo() > 0);
    // the product recovers 1 on coefficients near the origin
    LaurentElement prod = x * y;
    CHECK(coefficient_map_c(prod).equals(Q3.one()));
    CHECK(prod.coefficient({1}).is_zero());
    CHECK(prod.coefficient({-1}).is_zero());
}

TEST_CASE("mixed-leading-form inversion round-trips") {
    LocalField L = LocalField::cyclotomic(3, 1, 12);
    LaurentField fld{L, 1, 16};
    std::mt19937_64 rng(5);
    for (int it = 0; it < 25; ++it) {
        LaurentElement x = random_tower_elem(fld, rng, 2);
        auto v = x.valuation_opt();
        if (!v) continue;
        LaurentElement y = x.inv();
        LaurentElement prod = x * y;
        FieldElement c0 = coefficient_map_c(prod);
        CHECK((c0 - L.one()).is_zero());
    }
}

TEST_CASE("valuation additivity under products") {
    LocalField L = LocalField::cyclotomic(3, 1, 10);
    LaurentField fld{L, 1, 16};
    std::mt19937_64 rng(9);
    for (int it = 0; it < 50; ++it) {
        LaurentElement x = random_tower_elem(fld, rng);
        LaurentElement y = random_tower_elem(fld, rng);
        auto vx = x.valuation_opt(), vy = y.valuation_opt();
        if (!vx || !vy) continue;
        CHECK((x * y).valuation() == *vx + *vy);
    }
}

TEST_CASE("coefficient map c: extraction and L-linearity") {
    LocalField Q3 = LocalField::qp(3, 10);
    LaurentField fld{Q3, 1, 16};
    LaurentElement x = LaurentElement::monomial(fld, Q3.from_int(3), {-2}) +
                       LaurentElement::from_coeff(fld, Q3.from_int(5)) +
                       LaurentElement::monomial(fld, Q3.from_int(7), {1});
    CHECK(coefficient_map_c(x).equals(Q3.from_int(5)));
    CHECK(coefficient_map_c(LaurentElement::monomial(fld, Q3.one(), {1})).is_zero());
    // linearity over L on random samples
    LocalField L = LocalField::cyclotomic(3, 1, 10);
    LaurentField fl{L, 1, 16};
    std::mt19937_64 rng(13);
    for (int it = 0; it < 30; ++it) {
        LaurentElement a = random_tower_elem(fl, rng);
        LaurentElement b = random_tower_elem(fl, rng);
        FieldElement al = L.from_int(7 + it);
        FieldElement be = L.generator().pow(it % 3);
        FieldElement lhs = coefficient_map_c(a.scale(al) + b.scale(be));
        FieldElement rhs = al * coefficient_map_c(a) + be * coefficient_map_c(b);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("generalized trace") {
    LocalField L = LocalField::cyclotomic(3, 1, 12);
    LocalField Q3 = L.subfield(0);
    LaurentField fld{L, 1, 16};
    // the constant 7 of S traces to [L:S] * 7
    CHECK(generalized_trace(LaurentElement::from_coeff(fld, L.from_int(7)), Q3).equals(Q3.from_int(14)));
    // 9 + T: the T part dies, the trace doubles the constant
    LaurentElement x = LaurentElement::from_coeff(fld, L.from_int(9)) +
                       LaurentElement::monomial(fld, L.one(), {1});
    CHECK(generalized_trace(x, Q3).equals(Q3.from_int(18)));
    // x * T has no constant coefficient
    LaurentElement xt = x.shift({1});
    CHECK(generalized_trace(xt, Q3).is_zero());
}

TEST_CASE("generalized trace is transitive over tower steps") {
    LocalField T = LocalField::cyclotomic_tower(3, {1, 2}, 10);
    LocalField K1 = T.subfield(1);
    LocalField Q3 = T.subfield(0);
    LaurentField big{T, 1, 16};
    std::mt19937_64 rng(17);
    for (int it = 0; it < 20; ++it) {
        LaurentElement x = random_tower_elem(big, rng);
        FieldElement direct = generalized_trace(x, Q3);
        LaurentField mid{K1, 1, 16};
        FieldElement via = generalized_trace(x.trace_coeff_to(mid), Q3);
        CHECK((direct - via).is_zero());
    }
}

TEST_CASE("rl1 bound values") {
    LocalField Q3 = LocalField::qp(3, 10);
    LaurentField triv{Q3, 1, 16};
    CHECK(rl1_bound(triv, Q3) == -1); // D trivial, e=1, p>=3
    LocalField L = LocalField::cyclotomic(3, 1, 10);
    LaurentField fld{L, 1, 16};
    CHECK(rl1_bound(fld, L.subfield(0)) == -3); // -(1) - floor(2/2) - 1
    CHECK(rl1_prime_bound(fld, L.subfield(0)) == -2);
    CHECK(mu1_bound(fld) == 2);
}

TEST_CASE("rl1 duality by sampling and witness") {
    LocalField L = LocalField::cyclotomic(3, 1, 12);
    LocalField Q3 = L.subfield(0);
    LaurentField fld{L, 1, 16};
    int B = rl1_bound(fld, Q3);
    int mu1 = mu1_bound(fld);
    std::mt19937_64 rng(21);
    FieldElement pi = L.uniformizer();
    // elements at the bound trace mu_{L,1} into O_S
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        LaurentElement m = random_tower_elem(fld, rng, 3, mu1);
        LaurentElement x = random_tower_elem(fld, rng, 3).scale(pi.pow(B));
        auto vx = x.valuation_opt();
        if (!vx || *vx < B) continue;
        FieldElement t = generalized_trace(x * m, Q3);
        auto vt = t.valuation_opt();
        if (vt) {
            CHECK(*vt >= 0);
            ++checked;
        }
    }
    CHECK(checked > 500);
    // below the bound there is a witness m in mu_{L,1} with T(x m) outside O_S:
    // if Tr(x0 pi^mu1 b) were integral for every basis element b, then
    // x0 pi^mu1 would lie in the inverse different, contradicting v < B
    for (int v = B - 2; v < B; ++v) {
        LaurentElement x = LaurentElement::monomial(fld, pi.pow(v), {2});
        bool witness = false;
        for (int midx = 0; midx < L.dim() && !witness; ++midx) {
            std::vector<i64> mc((size_t)L.dim(), 0);
            mc[(size_t)midx] = 1;
            FieldElement m0 = L.from_coords(std::move(mc), 0, L.prec_cap()) * pi.pow(mu1);
            LaurentElement m = LaurentElement::monomial(fld, m0, {-2});
            FieldElement t = generalized_trace(x * m, Q3);
            auto vt = t.valuation_opt();
            if (vt && *vt < 0) witness = true;
        }
        CHECK(witness);
    }
}

TEST_CASE("partial derivatives in T") {
    LocalField L = LocalField::cyclotomic(3, 1, 10);
    LaurentField fld{L, 1, 16};
    FieldElement pi = L.uniformizer();
    LaurentElement x = LaurentElement::monomial(fld, pi, {2});
    LaurentElement dx = x.partial_t(1);
    CHECK(dx.coefficient({1}).equals(pi.scaled(2)));
    CHECK(LaurentElement::from_coeff(fld, L.from_int(7)).partial_t(1).is_zero());
    // Leibniz holds exactly for the T-derivative
    std::mt19937_64 rng(33);
    for (int it = 0; it < 30; ++it) {
        LaurentElement a = random_tower_elem(fld, rng);
        LaurentElement b = random_tower_elem(fld, rng);
        LaurentElement lhs = (a * b).partial_t(1);
        LaurentElement rhs = a.partial_t(1) * b + a * b.partial_t(1);
        CHECK(lhs.equals_mod(rhs, 10));
    }
}

TEST_CASE("window overflow is loud") {
    LocalField Q3 = LocalField::qp(3, 6);
    LaurentField fld{Q3, 1, 4}; // hard cap 16
    LaurentElement t = LaurentElement::monomial(fld, Q3.one(), {8});
    CHECK_THROWS_AS([&] {
        LaurentElement x = t;
        for (int i = 0; i < 5; ++i) x = x * t;
        return x;
    }(), Error);
}

TEST_CASE("two-variable smoke: arithmetic and iterated c-map") {
    LocalField Q3 = LocalField::qp(3, 8);
    LaurentField fld{Q3, 2, 8};
    LaurentElement x = LaurentElement::monomial(fld, Q3.from_int(2), {1, -1}) +
                       LaurentElement::from_coeff(fld, Q3.from_int(5));
    LaurentElement y = LaurentElement::monomial(fld, Q3.one(), {-1, 1});
    LaurentElement p = x * y;
    CHECK(p.coefficient({0, 0}).equals(Q3.from_int(2)));
    CHECK(p.coefficient({-1, 1}).equals(Q3.from_int(5)));
    CHECK(coefficient_map_c(p).equals(Q3.from_int(2)));
    CHECK(x.partial_t(2).coefficient({1, -2}).equals(Q3.from_int(-2)));
}
