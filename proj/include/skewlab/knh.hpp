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

/**
 * @file knh.hpp
 * @brief Baseline Koetter--Nielsen--Hoeholdt interpolation over the skew
 *        module: one functional at a time, degree-increasing step on the
 *        TOP-minimal row, cross-evaluation on the rest.
 *
 * This is the reference solver. It recomputes every discrepancy from the
 * full rows each iteration and never reduces degrees; the fast solver is
 * required to reproduce its output entry for entry.
 */

#ifndef SKEWLAB_KNH_HPP
#define SKEWLAB_KNH_HPP

#include <vector>

#include "skewlab/functionals.hpp"

namespace skewlab {

struct KnhResult {
    SkewMat basis;
    std::vector<int> wdegs;  // w-weighted degree of each row
};

/// TOP-argmin over candidate rows: minimal tracked degree, smallest index
/// breaking ties.
inline size_t top_argmin(const std::vector<size_t>& J, const std::vector<int>& d) {
    size_t best = J.front();
    for (size_t j : J)
        if (d[j] < d[best]) best = j;
    return best;
}

inline void check_weights(const WeightVec& w, size_t width) {
    if (w.size() != width) throw LengthMismatchError("weight vector width mismatch");
    for (int x : w)
        if (x < 0) throw Error("weights must be non-negative");
}

inline KnhResult knh_interpolate(const FunctionalSet& E, const WeightVec& w) {
    const auto& F = E.ctx();
    const size_t s1 = E.width();
    check_weights(w, s1);

    SkewMat B = identity_mat(F, s1);
    std::vector<int> d(w.begin(), w.end());

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
            if (j == jstar) {
                // degree-increasing step: (x - E_i(x b*) / Delta_{j*}) b*
                for (size_t k = 0; k < s1; ++k)
                    B[j][k] = x_mul(bstar[k]) - scale(xcoef, bstar[k]);
                ++d[j];
            } else {
                // cross-evaluation step: b_j - (Delta_j / Delta_{j*}) b*
                const FieldElem c = F->mul(deltas[j], dinv);
                for (size_t k = 0; k < s1; ++k)
                    B[j][k] = B[j][k] - scale(c, bstar[k]);
            }
        }
    }
    return {std::move(B), std::move(d)};
}

}  // namespace skewlab

#endif
