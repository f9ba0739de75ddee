/*
   Copyright 2026 the skewlab authors

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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "skewlab/engine.hpp"
#include "skewlab/skew_poly.hpp"
#include "support/oracles.hpp"

using namespace skewlab;

namespace {

FieldCtxPtr f4() { return FieldCtx::make(2, 2, Digits{1, 1, 1}); }

FieldCtxPtr f4_gamma1() {
    return FieldCtx::make(2, 2, Digits{1, 1, 1}, std::nullopt, Digits{1, 0});
}

SkewPoly rand_poly(const FieldCtxPtr& F, std::mt19937_64& rng, int maxdeg, bool nonzero = false) {
    for (;;) {
        const int len = int(rng() % uint64_t(maxdeg + 2));  // 0 .. maxdeg+1 coefficients
        std::vector<FieldElem> c;
        for (int i = 0; i < len; ++i) c.push_back(F->sample(rng));
        SkewPoly f = SkewPoly::from_coeffs(F, std::move(c));
        if (!nonzero || !f.is_zero()) return f;
    }
}

std::vector<FieldCtxPtr> test_rings() {
    return {
        f4(),
        f4_gamma1(),
        FieldCtx::make(3, 3),
        FieldCtx::make(3, 3, std::nullopt, 2, Digits{1, 2, 0}),
        FieldCtx::make(5, 2),
        FieldCtx::make(2, 6, std::nullopt, 2),                       // sigma of order 3
        FieldCtx::make(2, 4, std::nullopt, 0),                       // commutative corner
        FieldCtx::make(2, 5, std::nullopt, std::nullopt, Digits{0, 1, 1, 0, 1}),
    };
}

}  // namespace

TEST_CASE("multiplication rule examples") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto a2 = F->from_digits({1, 1});
    const auto one = F->one();

    // x * (alpha x) = alpha^2 x^2
    auto lhs = SkewPoly::x(F) * SkewPoly::from_coeffs(F, {F->zero(), al});
    CHECK(lhs == SkewPoly::from_coeffs(F, {F->zero(), F->zero(), a2}));

    // (x + 1)(x + alpha) = x^2 + alpha x + alpha
    auto prod = SkewPoly::from_coeffs(F, {one, one}) * SkewPoly::from_coeffs(F, {al, one});
    CHECK(prod == SkewPoly::from_coeffs(F, {al, al, one}));

    // gamma = 1: x * alpha = alpha^2 x + 1
    auto Fg = f4_gamma1();
    auto alg = Fg->from_digits({0, 1});
    auto got = SkewPoly::x(Fg) * SkewPoly::constant(Fg, alg);
    CHECK(got == SkewPoly::from_coeffs(Fg, {Fg->one(), Fg->from_digits({1, 1})}));
}

TEST_CASE("product paths agree and degrees add") {
    std::mt19937_64 rng(11);
    for (const auto& F : test_rings()) {
        LinopEngine eng(F);
        for (int t = 0; t < 150; ++t) {
            auto f = rand_poly(F, rng, 9);
            auto g = rand_poly(F, rng, 9);
            auto sb = mul_schoolbook(f, g);
            CHECK(mul_split(f, g, 3) == sb);
            CHECK(eng.mul(f, g) == sb);
            if (!f.is_zero() && !g.is_zero()) CHECK(sb.deg() == f.deg() + g.deg());
        }
        // ring laws
        for (int t = 0; t < 60; ++t) {
            auto a = rand_poly(F, rng, 5);
            auto b = rand_poly(F, rng, 5);
            auto c = rand_poly(F, rng, 5);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) * c == a * c + b * c);
        }
    }
}

TEST_CASE("right division") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto one = F->one();
    auto x2p1 = SkewPoly::from_coeffs(F, {one, F->zero(), one});
    auto xp1 = SkewPoly::from_coeffs(F, {one, one});

    auto [q, r] = right_divmod(x2p1, xp1);
    CHECK(q == xp1);
    CHECK(r.is_zero());

    auto [q2, r2] = right_divmod(x2p1, SkewPoly::one(F));
    CHECK(q2 == x2p1);
    CHECK(r2.is_zero());

    auto [q3, r3] = right_divmod(SkewPoly::constant(F, al), xp1);
    CHECK(q3.is_zero());
    CHECK(r3 == SkewPoly::constant(F, al));

    CHECK_THROWS_AS(right_divmod(x2p1, SkewPoly::zero(F)), DivisionByZeroError);

    std::mt19937_64 rng(12);
    for (const auto& K : test_rings()) {
        for (int t = 0; t < 120; ++t) {
            auto f = rand_poly(K, rng, 10);
            auto g = rand_poly(K, rng, 6, true);
            auto [qq, rr] = right_divmod(f, g);
            CHECK(rr.deg() < g.deg());
            CHECK(qq * g + rr == f);
        }
    }
}

TEST_CASE("left division") {
    auto F = f4();
    const auto one = F->one();
    auto x2p1 = SkewPoly::from_coeffs(F, {one, F->zero(), one});
    auto xp1 = SkewPoly::from_coeffs(F, {one, one});

    auto [q, r] = left_divmod(x2p1, xp1);
    CHECK(q == xp1);
    CHECK(r.is_zero());

    auto [q2, r2] = left_divmod(SkewPoly::from_coeffs(F, {F->zero(), F->zero(), one}),
                                SkewPoly::x(F));
    CHECK(q2 == SkewPoly::x(F));
    CHECK(r2.is_zero());

    auto al = F->from_digits({0, 1});
    auto [q3, r3] = left_divmod(SkewPoly::constant(F, al), SkewPoly::x(F));
    CHECK(q3.is_zero());
    CHECK(r3 == SkewPoly::constant(F, al));

    std::mt19937_64 rng(13);
    for (const auto& K : test_rings()) {
        for (int t = 0; t < 120; ++t) {
            auto f = rand_poly(K, rng, 10);
            auto g = rand_poly(K, rng, 6, true);
            auto [qq, rr] = left_divmod(f, g);
            CHECK(rr.deg() < g.deg());
            CHECK(g * qq + rr == f);
        }
    }
}

TEST_CASE("gcrd and lclm") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto a2 = F->from_digits({1, 1});
    const auto one = F->one();

    auto xma = SkewPoly::from_coeffs(F, {al, one});
    auto xma2 = SkewPoly::from_coeffs(F, {a2, one});
    auto x2p1 = SkewPoly::from_coeffs(F, {one, F->zero(), one});
    auto xp1 = SkewPoly::from_coeffs(F, {one, one});

    SECTION("equal inputs") {
        auto [g, l] = gcrd_lclm(xma, xma);
        CHECK(g == xma);
        CHECK(l == xma);
    }
    SECTION("coprime linear pair") {
        auto [g, l] = gcrd_lclm(xma, xma2);
        CHECK(g == SkewPoly::one(F));
        CHECK(l == x2p1);
        CHECK(l == oracles::brute_lclm(xma, xma2, 3));
    }
    SECTION("shared factor") {
        auto [g, l] = gcrd_lclm(x2p1, xp1);
        CHECK(g == xp1);
        CHECK(l == x2p1);
    }
    SECTION("zero handling") {
        CHECK_THROWS_AS(gcrd_lclm(SkewPoly::zero(F), SkewPoly::zero(F)), BothZeroError);
        auto [g, l] = gcrd_lclm(xma, SkewPoly::zero(F));
        CHECK(g == xma);
        CHECK(l.is_zero());
    }
    SECTION("properties on random pairs") {
        std::mt19937_64 rng(14);
        for (const auto& K : test_rings()) {
            for (int t = 0; t < 60; ++t) {
                auto f = rand_poly(K, rng, 5, true);
                auto g = rand_poly(K, rng, 5, true);
                auto [d, l] = gcrd_lclm(f, g);
                CHECK(d.is_monic());
                CHECK(l.is_monic());
                CHECK(mod_r(f, d).is_zero());
                CHECK(mod_r(g, d).is_zero());
                CHECK(mod_r(l, f).is_zero());
                CHECK(mod_r(l, g).is_zero());
                CHECK(l.deg() == f.deg() + g.deg() - d.deg());
            }
        }
    }
    SECTION("exhaustive minimality, degree <= 2 over F_4, both derivations") {
        for (const auto& K : {f4(), f4_gamma1()}) {
            std::mt19937_64 rng(15);
            for (int t = 0; t < 25; ++t) {
                auto f = rand_poly(K, rng, 1, true);
                auto g = rand_poly(K, rng, 1, true);
                if (f.deg() < 1 || g.deg() < 1) continue;
                auto l = gcrd_lclm(f, g).second;
                CHECK(l == oracles::brute_lclm(f, g, 4));
            }
        }
    }
}

TEST_CASE("operator evaluation") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto a2 = F->from_digits({1, 1});
    const auto one = F->one();

    CHECK(op_eval(SkewPoly::x(F), al, one) == a2);  // D_1 = sigma
    auto x2p1 = SkewPoly::from_coeffs(F, {one, F->zero(), one});
    CHECK(F->is_zero(op_eval(x2p1, al, one)));
    CHECK(F->is_zero(op_eval(x2p1, F->zero(), one)));

    std::mt19937_64 rng(16);
    for (const auto& K : test_rings()) {
        // product rule: (f g)(c)_b = f(g(c)_b)_b
        for (int t = 0; t < 150; ++t) {
            auto f = rand_poly(K, rng, 4);
            auto g = rand_poly(K, rng, 4);
            auto c = K->sample(rng);
            auto b = K->sample(rng);
            CHECK(op_eval(f * g, c, b) == op_eval(f, op_eval(g, c, b), b));
        }
        // F_q-linearity over the fixed field of sigma (rejection-sampled)
        auto fixed_elem = [&](std::mt19937_64& r) {
            for (;;) {
                auto lam = K->sample(r);
                if (K->sigma(lam) == lam) return lam;
            }
        };
        for (int t = 0; t < 80; ++t) {
            auto f = rand_poly(K, rng, 4);
            auto aa = K->sample(rng);
            auto bb = K->sample(rng);
            auto b = K->sample(rng);
            const auto lam = fixed_elem(rng);
            const auto mu = fixed_elem(rng);
            auto lhs = op_eval(f, K->add(K->mul(lam, aa), K->mul(mu, bb)), b);
            auto rhs = K->add(K->mul(lam, op_eval(f, aa, b)), K->mul(mu, op_eval(f, bb, b)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("remainder evaluation") {
    auto F = f4();
    const auto one = F->one();
    CHECK(rem_eval(SkewPoly::from_coeffs(F, {F->zero(), F->zero(), one}), one) == one);

    std::mt19937_64 rng(17);
    for (const auto& K : test_rings()) {
        for (int t = 0; t < 80; ++t) {
            auto b = K->sample(rng);
            CHECK(K->is_zero(rem_eval(SkewPoly::x_minus(K, b), b)));
            auto c = K->sample(rng);
            CHECK(rem_eval(SkewPoly::constant(K, c), b) == c);
            // right-factor vanishing: (f * (x-b))(b) = 0
            auto f = rand_poly(K, rng, 5);
            CHECK(K->is_zero(rem_eval(f * SkewPoly::x_minus(K, b), b)));
        }
    }
}

TEST_CASE("annihilators") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto one = F->one();

    CHECK(annihilator(F, EvalFamily::Operator, al, one) ==
          SkewPoly::from_coeffs(F, {al, one}));  // x + alpha
    CHECK(annihilator(F, EvalFamily::Operator, F->zero(), one) == SkewPoly::one(F));
    CHECK(annihilator(F, EvalFamily::Remainder, al, F->zero()) ==
          SkewPoly::x_minus(F, al));

    std::mt19937_64 rng(18);
    for (const auto& K : test_rings()) {
        for (int t = 0; t < 80; ++t) {
            auto u = K->sample(rng);
            auto b = K->sample(rng);
            auto a = annihilator(K, EvalFamily::Operator, u, b);
            CHECK(K->is_zero(op_eval(a, u, b)));
            auto p = K->sample(rng);
            CHECK(K->is_zero(rem_eval(annihilator(K, EvalFamily::Remainder, p, b), p)));
        }
    }
}

TEST_CASE("minimal polynomials of point sets") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto a2 = F->from_digits({1, 1});
    const auto one = F->one();

    auto m = min_poly_set(F, EvalFamily::Operator, {al, a2}, {one, one});
    CHECK(m == SkewPoly::from_coeffs(F, {one, F->zero(), one}));  // x^2 + 1
    CHECK(min_poly_set(F, EvalFamily::Operator, {}, {}) == SkewPoly::one(F));
    CHECK(min_poly_set(F, EvalFamily::Remainder, {one}, {F->zero()}) ==
          SkewPoly::x_minus(F, one));

    // iterative route equals the LCLM fold of per-point annihilators
    std::mt19937_64 rng(19);
    for (const auto& K : test_rings()) {
        for (int t = 0; t < 60; ++t) {
            const size_t npts = 1 + rng() % 5;
            std::vector<FieldElem> pts, bs;
            const bool uni = rng() & 1;
            auto b0 = K->sample(rng);
            for (size_t i = 0; i < npts; ++i) {
                pts.push_back(K->sample(rng));
                bs.push_back(uni ? b0 : K->sample(rng));
            }
            for (auto fam : {EvalFamily::Operator, EvalFamily::Remainder}) {
                auto it = min_poly_set(K, fam, pts, bs);
                SkewPoly fold = SkewPoly::one(K);
                for (size_t i = 0; i < npts; ++i) {
                    auto a = annihilator(K, fam, pts[i], bs[i]);
                    fold = gcrd_lclm(fold, a).second;
                }
                CHECK(it == fold);
                // the result annihilates every point
                for (size_t i = 0; i < npts; ++i) {
                    if (fam == EvalFamily::Operator)
                        CHECK(K->is_zero(op_eval(it, pts[i], bs[i])));
                    else
                        CHECK(K->is_zero(rem_eval(it, pts[i])));
                }
            }
        }
    }
}
