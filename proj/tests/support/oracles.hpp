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

// Test-only oracles: exhaustive searches and independent linear algebra the
// implementation under test must agree with. Deliberately brute force.

#ifndef SKEWLAB_TESTS_ORACLES_HPP
#define SKEWLAB_TESTS_ORACLES_HPP

#include <vector>

#include "skewlab/functionals.hpp"
#include "skewlab/skew_matrix.hpp"

namespace skewlab::oracles {

inline uint64_t field_size(const FieldCtxPtr& F) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < F->m(); ++i) q *= F->p();
    return q;
}

inline std::vector<FieldElem> all_elements(const FieldCtxPtr& F) {
    std::vector<FieldElem> out;
    const uint64_t q = field_size(F);
    out.reserve(q);
    for (uint64_t l = 0; l < q; ++l) out.push_back(F->from_label(l));
    return out;
}

/// All monic skew polynomials of exactly the given degree (label counting).
inline std::vector<SkewPoly> all_monic_of_degree(const FieldCtxPtr& F, int d) {
    std::vector<SkewPoly> out;
    const uint64_t q = field_size(F);
    uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    for (uint64_t enc = 0; enc < total; ++enc) {
        std::vector<FieldElem> c(size_t(d) + 1, F->zero());
        uint64_t e = enc;
        for (int i = 0; i < d; ++i) {
            c[size_t(i)] = F->from_label(e % q);
            e /= q;
        }
        c[size_t(d)] = F->one();
        out.push_back(SkewPoly::from_coeffs(F, std::move(c)));
    }
    return out;
}

/// Minimal monic common left multiple by exhaustive search, smallest degree
/// first. Returns the zero polynomial if nothing is found up to max_deg.
inline SkewPoly brute_lclm(const SkewPoly& f, const SkewPoly& g, int max_deg) {
    const auto& F = f.ctx();
    for (int d = 0; d <= max_deg; ++d) {
        for (const auto& h : all_monic_of_degree(F, d)) {
            if (mod_r(h, f).is_zero() && mod_r(h, g).is_zero()) return h;
        }
    }
    return SkewPoly::zero(F);
}

/// All kernel vectors with deg(Q_j) + w_j <= dmax, as the solution space of
/// the functional system over the coefficient space (independent route: plain
/// Gaussian elimination over F_{q^m}).
inline std::vector<SkewVec> exhaustive_kernel_basis(const FunctionalSet& E, const WeightVec& w,
                                                    int dmax) {
    const auto& F = E.ctx();
    const size_t width = E.width();
    struct Monomial {
        size_t j;
        int t;
    };
    std::vector<Monomial> monos;
    for (size_t j = 0; j < width; ++j)
        for (int t = 0; t + w[j] <= dmax; ++t) monos.push_back({j, t});
    if (monos.empty()) return {};

    // system rows: E_i applied to each monomial x^t e_j
    const size_t cols = monos.size();
    std::vector<std::vector<FieldElem>> A(E.n(), std::vector<FieldElem>(cols, F->zero()));
    for (size_t c = 0; c < cols; ++c) {
        SkewVec mono(width, SkewPoly::zero(F));
        std::vector<FieldElem> cf(size_t(monos[c].t) + 1, F->zero());
        cf.back() = F->one();
        mono[monos[c].j] = SkewPoly::from_coeffs(F, std::move(cf));
        for (size_t i = 0; i < E.n(); ++i) A[i][c] = E.eval(i, mono);
    }

    // row-reduce over the (commutative) field
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < A.size(); ++c) {
        size_t piv = rank;
        while (piv < A.size() && F->is_zero(A[piv][c])) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[rank], A[piv]);
        const FieldElem inv = F->inv(A[rank][c]);
        for (size_t cc = 0; cc < cols; ++cc) A[rank][cc] = F->mul(inv, A[rank][cc]);
        for (size_t r = 0; r < A.size(); ++r) {
            if (r == rank || F->is_zero(A[r][c])) continue;
            const FieldElem q = A[r][c];
            for (size_t cc = 0; cc < cols; ++cc)
                A[r][cc] = F->sub(A[r][cc], F->mul(q, A[rank][cc]));
        }
        pivot_col.push_back(c);
        ++rank;
    }

    // back-substitute each free column into a kernel vector
    std::vector<SkewVec> out;
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    for (size_t freec = 0; freec < cols; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<FieldElem> sol(cols, F->zero());
        sol[freec] = F->one();
        for (size_t r = 0; r < rank; ++r)
            sol[pivot_col[r]] = F->neg(A[r][freec]);
        SkewVec v(width, SkewPoly::zero(F));
        for (size_t j = 0; j < width; ++j) {
            std::vector<FieldElem> cf;
            for (size_t c = 0; c < cols; ++c)
                if (monos[c].j == j) {
                    if (int(cf.size()) <= monos[c].t) cf.resize(size_t(monos[c].t) + 1, F->zero());
                    cf[size_t(monos[c].t)] = sol[c];
                }
            v[j] = SkewPoly::from_coeffs(F, std::move(cf));
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// Groebner-style reduction of v against a weak Popov basis: repeatedly
/// cancel the TOP-leading term against the row with the same pivot. Returns
/// true iff v reduces to the zero vector.
inline bool reduces_to_zero(const SkewMat& B, const WeightVec& w, SkewVec v) {
    const auto& F = B[0][0].ctx();
    std::vector<std::optional<size_t>> row_of_pivot(w.size());
    std::vector<int> row_deg(B.size());
    for (size_t r = 0; r < B.size(); ++r) {
        const auto wp = wdeg_pivot(B[r], w);
        if (!wp.pivot) return false;
        row_of_pivot[*wp.pivot] = r;
        row_deg[r] = wp.wdeg;
    }
    for (int guard = 0; guard < 10000; ++guard) {
        const auto wp = wdeg_pivot(v, w);
        if (!wp.pivot) return true;  // zero vector
        const auto row_idx = row_of_pivot[*wp.pivot];
        if (!row_idx || row_deg[*row_idx] > wp.wdeg) return false;
        const SkewVec& row = B[*row_idx];
        const int shift = wp.wdeg - row_deg[*row_idx];
        // cancel the leading coefficient at the pivot coordinate
        const SkewPoly& vp = v[*wp.pivot];
        const SkewPoly& rp = row[*wp.pivot];
        const FieldElem c =
            F->mul(vp.lead(), F->inv(F->sigma_pow(rp.lead(), int64_t(shift))));
        for (size_t j = 0; j < v.size(); ++j) {
            if (row[j].is_zero()) continue;
            v[j] = v[j] - scale(c, xk_mul(row[j], size_t(shift)));
        }
    }
    return false;
}

}  // namespace skewlab::oracles

#endif
