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

#include "skewlab/skew_matrix.hpp"

using namespace skewlab;

namespace {

FieldCtxPtr f4() { return FieldCtx::make(2, 2, Digits{1, 1, 1}); }

SkewPoly rp(const FieldCtxPtr& F, std::mt19937_64& rng, int maxdeg, bool nonzero = false) {
    for (;;) {
        std::vector<FieldElem> c;
        const int len = int(rng() % uint64_t(maxdeg + 2));
        for (int i = 0; i < len; ++i) c.push_back(F->sample(rng));
        auto f = SkewPoly::from_coeffs(F, std::move(c));
        if (!nonzero || !f.is_zero()) return f;
    }
}

}  // namespace

TEST_CASE("weighted degrees and pivots") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto one = F->one();

    SkewVec v = {SkewPoly::from_coeffs(F, {one, F->zero(), one}),
                 SkewPoly::from_coeffs(F, {F->zero(), al})};
    auto wp = wdeg_pivot(v, {0, 3});
    CHECK(wp.wdeg == 4);
    CHECK(wp.pivot == size_t(1));

    // unit vector: wdeg w_j at pivot j
    SkewVec e1 = {SkewPoly::zero(F), SkewPoly::one(F), SkewPoly::zero(F)};
    auto wp2 = wdeg_pivot(e1, {5, 7, 2});
    CHECK(wp2.wdeg == 7);
    CHECK(wp2.pivot == size_t(1));

    SkewVec zero = {SkewPoly::zero(F), SkewPoly::zero(F)};
    auto wp3 = wdeg_pivot(zero, {0, 0});
    CHECK(wp3.wdeg == kNegInfDeg);
    CHECK(!wp3.pivot);

    CHECK_THROWS_AS(wdeg_pivot(zero, {0, 0, 0}), LengthMismatchError);
}

TEST_CASE("weak Popov recognition") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto one = F->one();

    CHECK(is_wowpb(identity_mat(F, 3), {0, 0, 0}));
    CHECK(is_wowpb(identity_mat(F, 3), {4, 1, 9}));

    SkewMat B = {{SkewPoly::from_coeffs(F, {one, one}), SkewPoly::zero(F)},
                 {SkewPoly::constant(F, al), SkewPoly::one(F)}};
    CHECK(is_wowpb(B, {0, 0}));

    SkewMat swapped = {{SkewPoly::zero(F), SkewPoly::one(F)},
                       {SkewPoly::one(F), SkewPoly::zero(F)}};
    CHECK(!is_wowpb(swapped, {0, 0}));

    SkewMat with_zero_row = {{SkewPoly::one(F), SkewPoly::zero(F)},
                             {SkewPoly::zero(F), SkewPoly::zero(F)}};
    CHECK(!is_wowpb(with_zero_row, {0, 0}));
}

TEST_CASE("matrix products") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto a2 = F->from_digits({1, 1});
    std::mt19937_64 rng(21);

    // U * I = U
    SkewMat U = {{rp(F, rng, 3), rp(F, rng, 3)}, {rp(F, rng, 3), rp(F, rng, 3)}};
    CHECK(mat_mul(U, identity_mat(F, 2)) == U);
    CHECK(mat_mul(identity_mat(F, 2), U) == U);

    // [[x]] * [[alpha]] = [[alpha^2 x]]  (delta = 0)
    SkewMat X = {{SkewPoly::x(F)}};
    SkewMat A = {{SkewPoly::constant(F, al)}};
    SkewMat got = mat_mul(X, A);
    CHECK(got[0][0] == SkewPoly::from_coeffs(F, {F->zero(), a2}));

    // associativity, including through the engine
    LinopEngine eng(F);
    for (int t = 0; t < 40; ++t) {
        auto mk = [&] {
            SkewMat M(2, SkewVec(2, SkewPoly::zero(F)));
            for (auto& row : M)
                for (auto& e : row) e = rp(F, rng, 3);
            return M;
        };
        SkewMat A1 = mk(), B1 = mk(), C1 = mk();
        CHECK(mat_mul(mat_mul(A1, B1), C1) == mat_mul(A1, mat_mul(B1, C1)));
        CHECK(mat_mul(eng, A1, B1) == mat_mul(A1, B1));
    }

    CHECK_THROWS_AS(mat_mul(SkewMat{{SkewPoly::one(F)}}, identity_mat(F, 2)),
                    DimensionMismatchError);
}

TEST_CASE("element-wise right modulo") {
    auto F = f4();
    const auto al = F->from_digits({0, 1});
    const auto one = F->one();

    SkewVec v = {SkewPoly::from_coeffs(F, {one, F->zero(), one}), SkewPoly::x(F)};
    SkewVec M = {SkewPoly::from_coeffs(F, {one, one}), SkewPoly::from_coeffs(F, {al, one})};
    auto out = vec_mod_r(v, M);
    CHECK(out[0].is_zero());
    CHECK(out[1] == SkewPoly::constant(F, al));

    // modulus 1 kills everything
    SkewVec ones = {SkewPoly::one(F), SkewPoly::one(F)};
    auto killed = vec_mod_r(v, ones);
    CHECK(killed[0].is_zero());
    CHECK(killed[1].is_zero());

    // already reduced
    SkewVec consts = {SkewPoly::constant(F, al), SkewPoly::constant(F, al)};
    SkewVec M2 = {SkewPoly::from_coeffs(F, {one, one}), SkewPoly::from_coeffs(F, {one, one})};
    CHECK(vec_mod_r(consts, M2) == consts);

    SkewVec zmod = {SkewPoly::zero(F), SkewPoly::one(F)};
    CHECK_THROWS_AS(vec_mod_r(v, zmod), ZeroModulusError);

    // degree bound property
    std::mt19937_64 rng(22);
    for (int t = 0; t < 60; ++t) {
        SkewVec vv = {rp(F, rng, 6), rp(F, rng, 6)};
        SkewVec mm = {rp(F, rng, 3, true), rp(F, rng, 3, true)};
        auto red = vec_mod_r(vv, mm);
        for (size_t j = 0; j < 2; ++j) CHECK(red[j].deg() < mm[j].deg());
    }
}
