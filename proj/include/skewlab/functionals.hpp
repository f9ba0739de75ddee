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
 * @file functionals.hpp
 * @brief Left-linear vector evaluation maps over the skew module, their
 *        kernels' minimal polynomial vectors, and the precomputation tree.
 *
 * Two families are provided.
 *
 *  - Operator family: E_i(Q) = sum_j op_eval(Q_j, u_{i,j}, b_i). One operator
 *    parameter b_i is shared by all coordinates of functional i; this is what
 *    makes E_i(x Q) expressible through E_i(Q) and keeps the intersected
 *    kernels left submodules.
 *
 *  - Remainder family: E_i(Q) = sum_j rem_eval(Q_j, p_i) over a coordinate
 *    subset. One point value per functional, carried on a subset of
 *    coordinates; coordinates without a point do not contribute. Distinct
 *    points within one functional would break the submodule property and are
 *    rejected at construction.
 *
 * Minimal polynomial vectors M_{[i,j]} reduce module elements without
 * changing any E_l with l in [i, j]; the tree stores them for exactly the
 * ranges visited by the divide-and-conquer interpolation.
 */

#ifndef SKEWLAB_FUNCTIONALS_HPP
#define SKEWLAB_FUNCTIONALS_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "skewlab/skew_matrix.hpp"

namespace skewlab {

class FunctionalSet {
   public:
    /// Operator family. points[i][j] = u_{i,j}; bs[i] = b_i. An empty point
    /// list is the degenerate no-constraint set (the solvers return the
    /// identity basis for it).
    /// Algorithm matrices are dense (s+1) x (s+1); the width cap keeps them
    /// small by construction.
    static constexpr size_t kMaxWidth = 17;  // s <= 16

    static FunctionalSet operator_family(FieldCtxPtr ctx, size_t width,
                                         std::vector<std::vector<FieldElem>> points,
                                         std::vector<FieldElem> bs) {
        if (width == 0 || width > kMaxWidth)
            throw DimensionMismatchError("functional set needs 1 <= width <= 17");
        if (bs.size() != points.size())
            throw DimensionMismatchError("operator family needs one b per functional");
        for (const auto& row : points)
            if (row.size() != width) throw DimensionMismatchError("ragged point rows");
        FunctionalSet out;
        out.ctx_ = std::move(ctx);
        out.family_ = EvalFamily::Operator;
        out.points_ = std::move(points);
        out.bs_ = std::move(bs);
        out.width_ = width;
        return out;
    }

    /// Remainder family. points[i][j] is either absent (no constraint on
    /// coordinate j) or the shared point p_i of functional i.
    static FunctionalSet remainder_family(FieldCtxPtr ctx, size_t width,
                                          std::vector<std::vector<std::optional<FieldElem>>> points) {
        if (width == 0 || width > kMaxWidth)
            throw DimensionMismatchError("functional set needs 1 <= width <= 17");
        FunctionalSet out;
        out.family_ = EvalFamily::Remainder;
        out.width_ = width;
        for (auto& row : points) {
            if (row.size() != width) throw DimensionMismatchError("ragged point rows");
            std::optional<FieldElem> shared;
            for (auto& cell : row) {
                if (!cell) continue;
                if (shared && !(*shared == *cell))
                    throw DimensionMismatchError(
                        "remainder functional carries distinct points; kernels would not be submodules");
                shared = *cell;
            }
            if (!shared) throw DimensionMismatchError("remainder functional with no point");
        }
        out.ctx_ = std::move(ctx);
        out.opt_points_ = std::move(points);
        return out;
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    EvalFamily family() const { return family_; }
    size_t n() const {
        return family_ == EvalFamily::Operator ? points_.size() : opt_points_.size();
    }
    size_t width() const { return width_; }  // s + 1
    size_t s() const { return width_ - 1; }

    const std::vector<FieldElem>& bs() const { return bs_; }
    const std::vector<std::vector<FieldElem>>& operator_points() const { return points_; }
    const std::vector<std::vector<std::optional<FieldElem>>>& remainder_points() const {
        return opt_points_;
    }

    /// E_i(Q).
    FieldElem eval(size_t i, const SkewVec& Q) const {
        check(i, Q);
        const auto& F = ctx_;
        FieldElem acc = F->zero();
        if (family_ == EvalFamily::Operator) {
            for (size_t j = 0; j < width_; ++j)
                if (!Q[j].is_zero())
                    acc = F->add(acc, op_eval(Q[j], points_[i][j], bs_[i]));
        } else {
            for (size_t j = 0; j < width_; ++j)
                if (opt_points_[i][j] && !Q[j].is_zero())
                    acc = F->add(acc, rem_eval(Q[j], *opt_points_[i][j]));
        }
        return acc;
    }

    /// Per-coordinate summands of E_i(Q); coordinates a remainder functional
    /// does not constrain contribute zero. Their sum is eval(i, Q).
    std::vector<FieldElem> eval_terms(size_t i, const SkewVec& Q) const {
        check(i, Q);
        const auto& F = ctx_;
        std::vector<FieldElem> out(width_, F->zero());
        for (size_t j = 0; j < width_; ++j) {
            if (Q[j].is_zero()) continue;
            if (family_ == EvalFamily::Operator)
                out[j] = op_eval(Q[j], points_[i][j], bs_[i]);
            else if (opt_points_[i][j])
                out[j] = rem_eval(Q[j], *opt_points_[i][j]);
        }
        return out;
    }

    /// E_i(x Q) through the shift identities: for the operator family this is
    /// D_{b_i}(E_i(Q)); for the remainder family sum_j sigma(c_j) p_i + delta(c_j)
    /// over the per-coordinate residues c_j. Cross-checked against direct
    /// evaluation of x*Q in the tests.
    FieldElem eval_x_shift(size_t i, const SkewVec& Q) const {
        check(i, Q);
        const auto& F = ctx_;
        if (family_ == EvalFamily::Operator) {
            return F->dmap(eval(i, Q), bs_[i]);
        }
        FieldElem acc = F->zero();
        for (size_t j = 0; j < width_; ++j) {
            if (!opt_points_[i][j] || Q[j].is_zero()) continue;
            const FieldElem& p = *opt_points_[i][j];
            const FieldElem c = rem_eval(Q[j], p);
            if (F->is_zero(c)) continue;
            FieldElem term = F->mul(F->sigma(c), p);
            if (F->has_derivation()) term = F->add(term, F->delta(c));
            acc = F->add(acc, term);
        }
        return acc;
    }

    /// Per-coordinate annihilator vector of functional i (a tree leaf).
    SkewVec leaf_vector(size_t i) const {
        if (i >= n()) throw IndexRangeError("functional index out of range");
        SkewVec out;
        out.reserve(width_);
        for (size_t j = 0; j < width_; ++j) {
            if (family_ == EvalFamily::Operator) {
                out.push_back(annihilator(ctx_, EvalFamily::Operator, points_[i][j], bs_[i]));
            } else if (opt_points_[i][j]) {
                out.push_back(annihilator(ctx_, EvalFamily::Remainder, *opt_points_[i][j], ctx_->zero()));
            } else {
                out.push_back(SkewPoly::one(ctx_));
            }
        }
        return out;
    }

    /// True when every functional shares one operator parameter; the tree can
    /// then run its composed-map construction.
    bool uniform_b() const {
        if (family_ != EvalFamily::Operator) return false;
        for (const auto& b : bs_)
            if (!(b == bs_[0])) return false;
        return true;
    }

   private:
    void check(size_t i, const SkewVec& Q) const {
        if (i >= n()) throw IndexRangeError("functional index out of range");
        if (Q.size() != width_) throw DimensionMismatchError("vector width mismatch");
    }

    FieldCtxPtr ctx_;
    EvalFamily family_ = EvalFamily::Operator;
    size_t width_ = 0;
    std::vector<std::vector<FieldElem>> points_;                     // operator
    std::vector<FieldElem> bs_;                                     // operator
    std::vector<std::vector<std::optional<FieldElem>>> opt_points_;  // remainder
};

/// Minimal polynomial vectors keyed by the index ranges of the midpoint
/// recursion over [0, n-1]. Passed explicitly to the solver (no globals).
class MinPolyTree {
   public:
    using Range = std::pair<size_t, size_t>;

    const SkewVec& at(size_t i1, size_t i2) const {
        auto it = nodes_.find({i1, i2});
        if (it == nodes_.end()) throw MissingTreeNodeError("range not in minimal polynomial tree");
        return it->second;
    }

    bool contains(size_t i1, size_t i2) const { return nodes_.count({i1, i2}) > 0; }
    size_t size() const { return nodes_.size(); }
    const std::map<Range, SkewVec>& nodes() const { return nodes_; }

    friend MinPolyTree build_minpoly_tree(const FunctionalSet&, bool);

   private:
    std::map<Range, SkewVec> nodes_;
};

namespace detail {

/// Minimal annihilator of a point list (uniform operator parameter b) by
/// halving: ann(P) = ann(f(P_right)) * f with f = ann(P_left). Each node
/// carries the F_p-matrix of its evaluation map so the point images cost no
/// metered field products.
struct AnnNode {
    SkewPoly poly;
    FpLinMap map;
};

inline AnnNode ann_of_points(const LinopEngine& eng, const FieldElem& b,
                             const std::vector<FieldElem>& pts, size_t lo, size_t hi) {
    const auto& F = eng.ctx();
    if (hi - lo == 1) {
        AnnNode node;
        node.poly = annihilator(F, EvalFamily::Operator, pts[lo], b);
        if (node.poly.deg() == 0) {
            node.map = F->identity_map();
        } else {
            // poly is x - c with -c stored at position 0; its evaluation map
            // is D_b(.) - c * (.)
            node.map = F->map_sub(F->dmap_matrix(b), F->mul_map(F->neg(node.poly.coeff(0))));
        }
        return node;
    }
    const size_t mid = lo + (hi - lo) / 2;
    AnnNode left = ann_of_points(eng, b, pts, lo, mid);
    std::vector<FieldElem> imgs;
    imgs.reserve(hi - mid);
    for (size_t t = mid; t < hi; ++t) imgs.push_back(F->apply_raw(left.map, pts[t]));
    AnnNode right = ann_of_points(eng, b, imgs, 0, imgs.size());
    AnnNode out;
    out.poly = eng.mul(right.poly, left.poly);
    out.map = F->compose(right.map, left.map);
    return out;
}

}  // namespace detail

/// Precomputes the minimal polynomial vectors for every range the
/// divide-and-conquer interpolation visits (midpoint splits of [0, n-1]).
/// Leaves are per-functional annihilator vectors; a parent is the
/// element-wise monic LCLM of its children. With `accelerate` and a uniform
/// operator parameter the LCLMs are built by annihilator composition through
/// the digit-level engine; the default route merges children with the
/// extended Euclidean LCLM. Both routes produce identical vectors.
inline MinPolyTree build_minpoly_tree(const FunctionalSet& E, bool accelerate = false) {
    MinPolyTree tree;
    if (E.n() == 0) return tree;
    const auto& F = E.ctx();
    const bool fast = accelerate && E.uniform_b();
    LinopEngine eng(F);

    struct Rec {
        const FunctionalSet& E;
        MinPolyTree& tree;
        const LinopEngine& eng;
        bool fast;

        const SkewVec& run(size_t i1, size_t i2) {
            if (i1 == i2) {
                return tree.nodes_.emplace(MinPolyTree::Range{i1, i2}, E.leaf_vector(i1))
                    .first->second;
            }
            const size_t z = (i1 + i2) / 2;
            const SkewVec& L = run(i1, z);
            run(z + 1, i2);
            SkewVec parent;
            parent.reserve(E.width());
            if (fast) {
                const FieldElem& b = E.bs()[0];
                for (size_t j = 0; j < E.width(); ++j) {
                    // map of the left component, then annihilate the images
                    // of the right half's points
                    detail::AnnNode lf;
                    lf.poly = L[j];
                    lf.map = component_map(i1, z, j);
                    std::vector<FieldElem> imgs;
                    imgs.reserve(i2 - z);
                    for (size_t t = z + 1; t <= i2; ++t)
                        imgs.push_back(E.ctx()->apply_raw(lf.map, E.operator_points()[t][j]));
                    detail::AnnNode h = imgs.empty()
                                            ? detail::AnnNode{SkewPoly::one(E.ctx()),
                                                              E.ctx()->identity_map()}
                                            : detail::ann_of_points(eng, b, imgs, 0, imgs.size());
                    parent.push_back(eng.mul(h.poly, lf.poly));
                    maps_[{{i1, i2}, j}] = E.ctx()->compose(h.map, lf.map);
                }
            } else {
                const SkewVec& R = tree.at(z + 1, i2);
                for (size_t j = 0; j < E.width(); ++j)
                    parent.push_back(gcrd_lclm(L[j], R[j]).second);
            }
            return tree.nodes_.emplace(MinPolyTree::Range{i1, i2}, std::move(parent))
                .first->second;
        }

        // evaluation map of tree component (i1,i2,j); built on demand for
        // leaves, cached for internal nodes by the recursion above
        FpLinMap component_map(size_t i1, size_t i2, size_t j) {
            auto it = maps_.find({{i1, i2}, j});
            if (it != maps_.end()) return it->second;
            const auto& F = E.ctx();
            const SkewPoly& poly = tree.at(i1, i2)[j];
            FpLinMap map;
            if (poly.deg() == 0) {
                map = F->identity_map();
            } else {
                map = F->map_sub(F->dmap_matrix(E.bs()[0]), F->mul_map(F->neg(poly.coeff(0))));
            }
            maps_[{{i1, i2}, j}] = map;
            return map;
        }

        std::map<std::pair<MinPolyTree::Range, size_t>, FpLinMap> maps_;
    };

    Rec rec{E, tree, eng, fast, {}};
    rec.run(0, E.n() - 1);
    return tree;
}

/// Minimal polynomial vector of a contiguous functional range, via the
/// iterative oracle (component-wise). The tree must agree with this.
inline SkewVec min_vector_range(const FunctionalSet& E, size_t i1, size_t i2) {
    if (i1 > i2 || i2 >= E.n()) throw IndexRangeError("bad functional range");
    const auto& F = E.ctx();
    SkewVec out;
    out.reserve(E.width());
    for (size_t j = 0; j < E.width(); ++j) {
        std::vector<FieldElem> pts, bs;
        for (size_t l = i1; l <= i2; ++l) {
            if (E.family() == EvalFamily::Operator) {
                pts.push_back(E.operator_points()[l][j]);
                bs.push_back(E.bs()[l]);
            } else if (E.remainder_points()[l][j]) {
                pts.push_back(*E.remainder_points()[l][j]);
                bs.push_back(F->zero());
            }
        }
        out.push_back(min_poly_set(F, E.family(), pts, bs));
    }
    return out;
}

}  // namespace skewlab

#endif
