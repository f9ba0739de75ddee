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
 * @file skew_matrix.hpp
 * @brief Vectors and matrices over the skew ring: weighted degrees, pivot
 *        indices, the weak Popov property, products, element-wise right-mod.
 */

#ifndef SKEWLAB_SKEW_MATRIX_HPP
#define SKEWLAB_SKEW_MATRIX_HPP

#include <optional>
#include <vector>

#include "skewlab/engine.hpp"
#include "skewlab/skew_poly.hpp"

namespace skewlab {

using SkewVec = std::vector<SkewPoly>;
using SkewMat = std::vector<SkewVec>;
using WeightVec = std::vector<int>;

struct WdegPivot {
    int wdeg = kNegInfDeg;              // -inf for the zero vector
    std::optional<size_t> pivot = {};   // largest index attaining wdeg
};

/// w-weighted degree max_j(deg a_j + w_j) and the w-pivot index (largest
/// maximizing j). The zero vector reports (-inf, none).
inline WdegPivot wdeg_pivot(const SkewVec& v, const WeightVec& w) {
    if (v.size() != w.size()) throw LengthMismatchError("vector/weight length mismatch");
    WdegPivot out;
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        const int d = v[j].deg() + w[j];
        if (out.pivot == std::nullopt || d >= out.wdeg) {
            out.wdeg = d;
            out.pivot = j;
        }
    }
    return out;
}

/// True iff the matrix is square with no zero row and strictly increasing
/// w-pivot indices (the w-ordered weak Popov property).
inline bool is_wowpb(const SkewMat& B, const WeightVec& w) {
    long last = -1;
    for (const auto& row : B) {
        if (row.size() != B.size()) return false;
        const auto wp = wdeg_pivot(row, w);
        if (!wp.pivot || long(*wp.pivot) <= last) return false;
        last = long(*wp.pivot);
    }
    return true;
}

inline SkewMat identity_mat(const FieldCtxPtr& F, size_t n) {
    SkewMat out(n, SkewVec(n, SkewPoly::zero(F)));
    for (size_t i = 0; i < n; ++i) out[i][i] = SkewPoly::one(F);
    return out;
}

/// Noncommutative matrix product (left factors stay left).
inline SkewMat mat_mul(const SkewMat& A, const SkewMat& B) {
    if (A.empty() || B.empty() || A[0].size() != B.size())
        throw DimensionMismatchError("matrix product dimension mismatch");
    const auto& F = B[0][0].ctx();
    const size_t n = A.size(), k = B.size(), m = B[0].size();
    SkewMat out(n, SkewVec(m, SkewPoly::zero(F)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) {
            const SkewPoly& a = A[i][j];
            if (a.is_zero()) continue;
            for (size_t t = 0; t < m; ++t) {
                if (!B[j][t].is_zero()) out[i][t] = out[i][t] + a * B[j][t];
            }
        }
    }
    return out;
}

/// Same product through the digit-level engine (no metered field products).
inline SkewMat mat_mul(const LinopEngine& eng, const SkewMat& A, const SkewMat& B) {
    if (A.empty() || B.empty() || A[0].size() != B.size())
        throw DimensionMismatchError("matrix product dimension mismatch");
    const auto& F = eng.ctx();
    const size_t n = A.size(), k = B.size(), m = B[0].size();
    SkewMat out(n, SkewVec(m, SkewPoly::zero(F)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) {
            const SkewPoly& a = A[i][j];
            if (a.is_zero()) continue;
            for (size_t t = 0; t < m; ++t) {
                if (!B[j][t].is_zero()) out[i][t] = out[i][t] + eng.mul(a, B[j][t]);
            }
        }
    }
    return out;
}

/// Component-wise right modulo: component j of the result is v_j mod_r M_j.
inline SkewVec vec_mod_r(const SkewVec& v, const SkewVec& M) {
    if (v.size() != M.size()) throw LengthMismatchError("vector/modulus length mismatch");
    SkewVec out;
    out.reserve(v.size());
    for (size_t j = 0; j < v.size(); ++j) {
        if (M[j].is_zero()) throw ZeroModulusError("vec_mod_r with zero modulus component");
        out.push_back(v[j].deg() < M[j].deg() ? v[j] : mod_r(v[j], M[j]));
    }
    return out;
}

}  // namespace skewlab

#endif
