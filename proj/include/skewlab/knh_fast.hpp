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
 * @file knh_fast.hpp
 * @brief Divide-and-conquer interpolation: the per-functional update matrix,
 *        the halving recursion over degree-reduced bases, and the driver.
 *
 * The recursion records the per-functional updates as U-shaped matrices and
 * applies them to bases reduced by the minimal polynomial vectors of each
 * index range. Discrepancies computed on the reduced rows equal those on the
 * full rows, so the update sequence -- and therefore the final basis -- is
 * identical to the baseline solver's, entry for entry.
 */

#ifndef SKEWLAB_KNH_FAST_HPP
#define SKEWLAB_KNH_FAST_HPP

#include <chrono>
#include <optional>
#include <vector>

#include "skewlab/knh.hpp"

namespace skewlab {

struct SolveOptions {
    /// Ranges shorter than this run as a sequential point loop.
    size_t base_threshold = 16;
    /// Split-and-twist products plus the digit-level engine for tree
    /// construction, reductions and update-matrix products.
    bool accelerate = true;
    /// Compute T1*B from the already-reduced B (bit-identical, fewer ops).
    bool prereduce = false;
    /// Re-check the output against every functional (and the weak Popov
    /// property) before returning.
    bool verify = false;
    /// Keep the per-functional update matrices for structural inspection.
    bool record_factors = false;
};

struct SolveStats {
    uint64_t mul_count = 0;
    uint64_t add_count = 0;
    uint64_t inv_count = 0;
    uint64_t sigma_count = 0;
    uint64_t wall_ns = 0;
    size_t updates = 0;  // functionals with a nonzero discrepancy
    bool accelerated = false;
};

struct UpdateFactor {
    size_t functional = 0;
    size_t jstar = 0;
    SkewMat matrix;  // the U-shaped factor (only kept under record_factors)
};

struct SolveResult {
    SkewMat basis;
    std::vector<int> wdegs;
    SolveStats stats;
    std::vector<UpdateFactor> factors;
};

namespace detail {

/// Outcome of one SkewInterpolatePoint step: either "no update" (identity)
/// or a U-shaped transform described by its defining column.
struct PointUpdate {
    bool trivial = true;
    size_t jstar = 0;
    FieldElem xcoef;                  // diagonal entry is x - xcoef
    std::vector<FieldElem> colcoef;   // off-diagonal column entries (negated ratios)
};

/// One functional against the (reduced) basis rows. d is the tracked true
/// weighted degree vector; the TOP-argmin runs over d, never over the
/// degrees of the reduced rows.
inline PointUpdate interpolate_point_step(const FunctionalSet& E, size_t i, const SkewMat& B,
                                          std::vector<int>& d) {
    const auto& F = E.ctx();
    const size_t s1 = E.width();
    PointUpdate up;
    std::vector<FieldElem> deltas(s1);
    std::vector<size_t> J;
    for (size_t j = 0; j < s1; ++j) {
        deltas[j] = E.eval(i, B[j]);
        if (!F->is_zero(deltas[j])) J.push_back(j);
    }
    if (J.empty()) return up;
    up.trivial = false;
    up.jstar = top_argmin(J, d);
    if (F->is_zero(deltas[up.jstar]))
        throw InternalInvariantError("selected pivot has zero discrepancy");
    const FieldElem dinv = F->inv(deltas[up.jstar]);
    up.xcoef = F->mul(E.eval_x_shift(i, B[up.jstar]), dinv);
    up.colcoef.assign(s1, F->zero());
    for (size_t j : J)
        if (j != up.jstar) up.colcoef[j] = F->neg(F->mul(deltas[j], dinv));
    ++d[up.jstar];
    return up;
}

inline SkewMat update_to_matrix(const FieldCtxPtr& F, const PointUpdate& up, size_t s1) {
    SkewMat U = identity_mat(F, s1);
    if (up.trivial) return U;
    U[up.jstar][up.jstar] = SkewPoly::x_minus(F, up.xcoef);
    for (size_t j = 0; j < s1; ++j)
        if (j != up.jstar && !F->is_zero(up.colcoef[j]))
            U[j][up.jstar] = SkewPoly::constant(F, up.colcoef[j]);
    return U;
}

/// Applies the U-shaped update in place: row j* <- (x - c) row j*, the other
/// rows absorb constant multiples of the old row j*.
inline void apply_update(const FunctionalSet& E, const PointUpdate& up, SkewMat& M,
                         const LinopEngine* eng) {
    if (up.trivial) return;
    const auto& F = E.ctx();
    const SkewVec pivot_row = M[up.jstar];
    for (size_t j = 0; j < M.size(); ++j) {
        if (j == up.jstar) {
            SkewPoly factor = SkewPoly::x_minus(F, up.xcoef);
            for (size_t k = 0; k < pivot_row.size(); ++k) {
                if (pivot_row[k].is_zero()) continue;
                M[j][k] = eng ? eng->mul(factor, pivot_row[k])
                              : x_mul(pivot_row[k]) - scale(up.xcoef, pivot_row[k]);
            }
        } else if (!F->is_zero(up.colcoef[j])) {
            SkewPoly c = SkewPoly::constant(F, up.colcoef[j]);
            for (size_t k = 0; k < pivot_row.size(); ++k) {
                if (pivot_row[k].is_zero()) continue;
                M[j][k] = M[j][k] + (eng ? eng->mul(c, pivot_row[k])
                                         : scale(up.colcoef[j], pivot_row[k]));
            }
        }
    }
}

/// Reduces every row of B component-wise by the vector M, through shared
/// per-component reduction tables when the engine is active.
inline SkewMat reduce_rows(const SkewMat& B, const SkewVec& M, const LinopEngine* eng) {
    if (!eng) {
        SkewMat out;
        out.reserve(B.size());
        for (const auto& row : B) out.push_back(vec_mod_r(row, M));
        return out;
    }
    const auto& F = eng->ctx();
    std::vector<std::optional<LinopEngine::Reducer>> reds(M.size());
    SkewMat out(B.size(), SkewVec(M.size(), SkewPoly::zero(F)));
    for (size_t k = 0; k < M.size(); ++k) {
        if (M[k].is_zero()) throw ZeroModulusError("reduction by zero modulus component");
        for (size_t r = 0; r < B.size(); ++r) {
            if (B[r][k].deg() < M[k].deg()) {
                out[r][k] = B[r][k];
            } else {
                if (!reds[k]) reds[k].emplace(eng->reducer(M[k]));
                out[r][k] = reds[k]->reduce(B[r][k]);
            }
        }
    }
    return out;
}

inline void check_degree_bound(const SkewMat& B, const SkewVec& M) {
    for (const auto& row : B)
        for (size_t k = 0; k < M.size(); ++k)
            if (!row[k].is_zero() && row[k].deg() >= M[k].deg())
                throw InternalInvariantError("reduced basis exceeds tree degree bound");
}

struct TreeSolver {
    const FunctionalSet& E;
    const MinPolyTree& tree;
    const SolveOptions& opts;
    const LinopEngine* eng;  // null when not accelerating
    std::vector<UpdateFactor>* factors;
    size_t updates = 0;

    /// SkewInterpolateTree over [i1, i2]: returns T with T*B the
    /// interpolation basis of <B> cut by the range's kernels. d is updated to
    /// the true weighted degrees.
    SkewMat run(size_t i1, size_t i2, const SkewMat& B, std::vector<int>& d) {
        const auto& F = E.ctx();
        const size_t s1 = E.width();
        if (i2 - i1 < opts.base_threshold || i1 == i2) {
            SkewMat T = identity_mat(F, s1);
            SkewMat cur = B;
            for (size_t i = i1; i <= i2; ++i) {
                PointUpdate up = interpolate_point_step(E, i, cur, d);
                if (!up.trivial) {
                    ++updates;
                    if (factors)
                        factors->push_back({i, up.jstar, update_to_matrix(F, up, s1)});
                    apply_update(E, up, cur, eng);
                    apply_update(E, up, T, eng);
                }
            }
            return T;
        }
        const size_t z = (i1 + i2) / 2;
        const SkewVec& ML = tree.at(i1, z);
        const SkewVec& MR = tree.at(z + 1, i2);

        SkewMat B1 = reduce_rows(B, ML, eng);
        check_degree_bound(B1, ML);
        SkewMat T1 = run(i1, z, B1, d);

        SkewMat right_in = opts.prereduce ? reduce_rows(B, MR, eng) : B;
        SkewMat prod = eng ? mat_mul(*eng, T1, right_in) : mat_mul(T1, right_in);
        SkewMat B2 = reduce_rows(prod, MR, eng);
        check_degree_bound(B2, MR);
        SkewMat T2 = run(z + 1, i2, B2, d);

        return eng ? mat_mul(*eng, T2, T1) : mat_mul(T2, T1);
    }
};

}  // namespace detail

/// SkewInterpolatePoint as a standalone operation: the update matrix T and
/// the advanced degree tracker for one functional against a reduced basis.
inline std::pair<SkewMat, std::vector<int>> interpolate_point(const FunctionalSet& E, size_t i,
                                                              const SkewMat& B,
                                                              const std::vector<int>& d) {
    std::vector<int> dh = d;
    detail::PointUpdate up = detail::interpolate_point_step(E, i, B, dh);
    return {detail::update_to_matrix(E.ctx(), up, E.width()), std::move(dh)};
}

/// SkewInterpolateTree against a caller-supplied tree (which must contain
/// every midpoint-split range of [i1, i2]).
inline std::pair<SkewMat, std::vector<int>> interpolate_tree(const FunctionalSet& E, size_t i1,
                                                             size_t i2, const SkewMat& B,
                                                             const std::vector<int>& d,
                                                             const MinPolyTree& tree,
                                                             const SolveOptions& opts = {}) {
    if (i1 > i2 || i2 >= E.n()) throw IndexRangeError("bad functional range");
    LinopEngine eng(E.ctx());
    detail::TreeSolver solver{E, tree, opts, opts.accelerate ? &eng : nullptr, nullptr};
    std::vector<int> dh = d;
    SkewMat T = solver.run(i1, i2, B, dh);
    return {std::move(T), std::move(dh)};
}

/// Full driver: precomputes the minimal polynomial tree, runs the recursion
/// from the reduced identity basis, and returns the basis (equal to T, as the
/// starting basis is the identity), true weighted degrees, and a meter
/// snapshot of the run.
inline SolveResult solve_interpolation(const FunctionalSet& E, const WeightVec& w,
                                       const SolveOptions& opts = {}) {
    const auto& F = E.ctx();
    const size_t s1 = E.width();
    check_weights(w, s1);

    const auto t0 = std::chrono::steady_clock::now();
    const OpCounters before = F->counters();

    SolveResult out;
    out.stats.accelerated = opts.accelerate;
    out.wdegs.assign(w.begin(), w.end());

    if (E.n() == 0) {
        out.basis = identity_mat(F, s1);
    } else {
        MinPolyTree tree = build_minpoly_tree(E, opts.accelerate);
        LinopEngine eng(F);
        detail::TreeSolver solver{E, tree, opts, opts.accelerate ? &eng : nullptr,
                                  opts.record_factors ? &out.factors : nullptr};
        const SkewVec& root = tree.at(0, E.n() - 1);
        SkewMat B0 = detail::reduce_rows(identity_mat(F, s1), root,
                                         opts.accelerate ? &eng : nullptr);
        out.basis = solver.run(0, E.n() - 1, B0, out.wdegs);
        out.stats.updates = solver.updates;
    }

    const OpCounters after = F->counters();
    out.stats.mul_count = after.mul - before.mul;
    out.stats.add_count = after.add - before.add;
    out.stats.inv_count = after.inv - before.inv;
    out.stats.sigma_count = after.sigma - before.sigma;
    out.stats.wall_ns = uint64_t(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
            .count());

    if (opts.verify) {
        if (!is_wowpb(out.basis, w))
            throw VerificationFailedError("output basis is not in weak Popov form");
        for (size_t i = 0; i < E.n(); ++i)
            for (const auto& row : out.basis)
                if (!F->is_zero(E.eval(i, row)))
                    throw VerificationFailedError("output row escapes a kernel");
        for (size_t j = 0; j < s1; ++j) {
            const auto wp = wdeg_pivot(out.basis[j], w);
            if (wp.wdeg != out.wdegs[j])
                throw VerificationFailedError("tracked degree disagrees with the output row");
        }
    }
    return out;
}

}  // namespace skewlab

#endif
