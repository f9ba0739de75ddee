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

#include "skewlab/instances.hpp"
#include "skewlab/knh.hpp"
#include "support/oracles.hpp"

using namespace skewlab;

namespace {

FieldCtxPtr f4() { return FieldCtx::make(2, 2, Digits{1, 1, 1}); }

}  // namespace

TEST_CASE("worked interpolation trace") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto one = F->one();
    auto E = FunctionalSet::operator_family(F, 2, {{one, al}}, {one});

    auto res = knh_interpolate(E, {0, 0});
    SkewMat expect = {{SkewPoly::from_coeffs(F, {one, one}), SkewPoly::zero(F)},
                      {SkewPoly::constant(F, al), SkewPoly::one(F)}};
    CHECK(res.basis == expect);
    CHECK(res.wdegs == std::vector<int>{1, 0});
}

TEST_CASE("degenerate inputs give the identity") {
    auto F = f4();
    auto empty = FunctionalSet::operator_family(F, 3, {}, {});
    auto res = knh_interpolate(empty, {1, 4, 2});
    CHECK(res.basis == identity_mat(F, 3));
    CHECK(res.wdegs == std::vector<int>{1, 4, 2});

    // all points zero: every discrepancy vanishes, no update
    auto zeros = FunctionalSet::operator_family(
        F, 2, {{F->zero(), F->zero()}, {F->zero(), F->zero()}}, {F->one(), F->one()});
    auto res2 = knh_interpolate(zeros, {0, 5});
    CHECK(res2.basis == identity_mat(F, 2));
    CHECK(res2.wdegs == std::vector<int>{0, 5});

    CHECK_THROWS_AS(knh_interpolate(zeros, {0, 0, 0}), LengthMismatchError);
}

TEST_CASE("output is a weak Popov kernel basis") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 80; ++t) {
        InstanceSpec spec;
        spec.p = std::vector<uint32_t>{2, 3, 5}[rng() % 3];
        spec.m = 2 + rng() % 3;
        spec.s = rng() % 3;
        spec.n = 1 + rng() % 12;
        spec.family = (rng() & 1) ? EvalFamily::Operator : EvalFamily::Remainder;
        spec.random_aut_power = true;
        spec.allow_derivation = true;
        spec.uniform_b = (rng() & 1);
        spec.zero_weights = (rng() & 1);
        auto inst = make_random_instance(spec, 4000 + t);
        const auto& E = inst.functionals;
        const auto& F = inst.ctx;

        auto res = knh_interpolate(E, inst.weights);
        CHECK(is_wowpb(res.basis, inst.weights));
        size_t in_kernel = 0;
        for (size_t i = 0; i < E.n(); ++i)
            for (const auto& row : res.basis)
                if (F->is_zero(E.eval(i, row))) ++in_kernel;
        CHECK(in_kernel == E.n() * res.basis.size());

        // sum of weighted degrees grows by one per updating functional
        long dsum = 0, wsum = 0;
        for (size_t j = 0; j < res.wdegs.size(); ++j) {
            CHECK(res.wdegs[j] == wdeg_pivot(res.basis[j], inst.weights).wdeg);
            dsum += res.wdegs[j];
            wsum += inst.weights[j];
        }
        CHECK(dsum - wsum <= long(E.n()));
        CHECK(dsum >= wsum);
    }
}

TEST_CASE("per-iteration degree behavior") {
    // replay the update loop: cross-evaluation must never raise a row's
    // weighted degree, the degree-increasing step raises it by exactly one
    std::mt19937_64 rng(43);
    for (int t = 0; t < 25; ++t) {
        InstanceSpec spec;
        spec.p = (rng() & 1) ? 2 : 3;
        spec.m = 2 + rng() % 2;
        spec.s = 1 + rng() % 2;
        spec.n = 2 + rng() % 8;
        spec.allow_derivation = true;
        spec.zero_weights = false;
        auto inst = make_random_instance(spec, 4300 + t);
        const auto& E = inst.functionals;
        const auto& F = inst.ctx;
        const size_t s1 = E.width();

        SkewMat B = identity_mat(F, s1);
        std::vector<int> d(inst.weights.begin(), inst.weights.end());
        for (size_t i = 0; i < E.n(); ++i) {
            std::vector<FieldElem> deltas(s1);
            std::vector<size_t> J;
            for (size_t j = 0; j < s1; ++j) {
                deltas[j] = E.eval(i, B[j]);
                if (!F->is_zero(deltas[j])) J.push_back(j);
            }
            if (J.empty()) continue;
            const size_t jstar = top_argmin(J, d);
            const SkewVec bstar = B[jstar];
            const FieldElem dinv = F->inv(deltas[jstar]);
            const FieldElem xcoef = F->mul(E.eval_x_shift(i, bstar), dinv);
            for (size_t j : J) {
                const int before = wdeg_pivot(B[j], inst.weights).wdeg;
                if (j == jstar) {
                    for (size_t k = 0; k < s1; ++k)
                        B[j][k] = x_mul(bstar[k]) - scale(xcoef, bstar[k]);
                    CHECK(wdeg_pivot(B[j], inst.weights).wdeg == before + 1);
                    ++d[j];
                } else {
                    const FieldElem c = F->mul(deltas[j], dinv);
                    for (size_t k = 0; k < s1; ++k)
                        B[j][k] = B[j][k] - scale(c, bstar[k]);
                    CHECK(wdeg_pivot(B[j], inst.weights).wdeg <= before);
                    CHECK(wdeg_pivot(B[j], inst.weights).wdeg == d[j]);
                }
            }
        }
        CHECK(B == knh_interpolate(E, inst.weights).basis);
    }
}

TEST_CASE("exhaustive basis completeness on small instances") {
    std::mt19937_64 rng(42);
    size_t instances = 0;
    for (int t = 0; instances < 30 && t < 200; ++t) {
        InstanceSpec spec;
        spec.p = 2;
        spec.m = 1 + rng() % 2;  // q^m <= 4 keeps the coefficient space small
        spec.s = rng() % 2;
        spec.n = 1 + rng() % 4;
        spec.family = (rng() & 1) ? EvalFamily::Operator : EvalFamily::Remainder;
        spec.allow_derivation = true;
        spec.uniform_b = (rng() & 1);
        auto inst = make_random_instance(spec, 5000 + t);
        const auto& E = inst.functionals;

        auto res = knh_interpolate(E, inst.weights);
        int dmax = res.wdegs[0];
        for (int d : res.wdegs) dmax = std::max(dmax, d);

        auto kernel = oracles::exhaustive_kernel_basis(E, inst.weights, dmax);
        for (const auto& v : kernel)
            CHECK(oracles::reduces_to_zero(res.basis, inst.weights, v));
        ++instances;
    }
    CHECK(instances == 30);
}
