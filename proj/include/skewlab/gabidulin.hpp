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
 * @file gabidulin.hpp
 * @brief Gabidulin rank-metric codes: evaluation encoding, rank-t error
 *        sampling, the interpolation-based decoder instance, and unique
 *        decoding by left division of the solver's minimal row.
 */

#ifndef SKEWLAB_GABIDULIN_HPP
#define SKEWLAB_GABIDULIN_HPP

#include <optional>
#include <random>
#include <vector>

#include "skewlab/knh_fast.hpp"

namespace skewlab {

/// Rank over F_p of a list of field elements (their digit expansion spans).
inline size_t q_rank(const FieldCtxPtr& F, const std::vector<FieldElem>& elems) {
    const uint32_t p = F->p(), m = F->m();
    std::vector<Digits> rows;
    rows.reserve(elems.size());
    for (const auto& e : elems) rows.push_back(F->digits(e));
    size_t rank = 0;
    for (uint32_t col = 0; col < m && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        // normalize and eliminate
        uint64_t inv = 1, x = rows[rank][col] % p;
        for (uint64_t e = p - 2, b = x; e; e >>= 1, b = b * b % p)
            if (e & 1) inv = inv * b % p;
        for (auto& d : rows[rank]) d = uint32_t(uint64_t(d) * inv % p);
        for (size_t r2 = 0; r2 < rows.size(); ++r2) {
            if (r2 == rank || rows[r2][col] == 0) continue;
            const uint64_t c = rows[r2][col];
            for (uint32_t j = 0; j < m; ++j)
                rows[r2][j] = uint32_t((rows[r2][j] + c * (p - rows[rank][j])) % p);
        }
        ++rank;
    }
    return rank;
}

class GabidulinCode {
   public:
    /// Evaluation points default to the polynomial basis 1, z, ..., z^{n-1}.
    /// The context must carry the plain Frobenius and no derivation.
    static GabidulinCode make(FieldCtxPtr ctx, size_t n, size_t k,
                              std::optional<std::vector<FieldElem>> points = std::nullopt) {
        if (ctx->aut_power() != 1 || ctx->has_derivation())
            throw Error("Gabidulin codes need sigma = Frobenius and delta = 0");
        if (n > ctx->m()) throw Error("code length exceeds extension degree");
        if (k >= n || k == 0) throw Error("dimension must satisfy 0 < k < n");
        GabidulinCode code;
        code.ctx_ = std::move(ctx);
        code.n_ = n;
        code.k_ = k;
        if (points) {
            code.g_ = std::move(*points);
            if (code.g_.size() != n) throw LengthMismatchError("wrong number of evaluation points");
        } else {
            code.g_.reserve(n);
            for (size_t i = 0; i < n; ++i) {
                FieldElem e = code.ctx_->zero();
                code.ctx_->digit_set(e, i, 1);
                code.g_.push_back(e);
            }
        }
        if (q_rank(code.ctx_, code.g_) != n)
            throw Error("evaluation points are not independent over F_q");
        return code;
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    size_t n() const { return n_; }
    size_t k() const { return k_; }
    size_t radius() const { return (n_ - k_) / 2; }
    const std::vector<FieldElem>& points() const { return g_; }

    /// c_i = f(g_i) under operator evaluation with b = 1.
    std::vector<FieldElem> encode(const SkewPoly& f) const {
        if (f.deg() >= int(k_)) throw DegreeTooLargeError("message degree must be below k");
        std::vector<FieldElem> out;
        out.reserve(n_);
        for (const auto& gi : g_) out.push_back(op_eval(f, gi, ctx_->one()));
        return out;
    }

    SkewPoly random_message(std::mt19937_64& rng) const {
        std::vector<FieldElem> c;
        c.reserve(k_);
        for (size_t i = 0; i < k_; ++i) c.push_back(ctx_->sample(rng));
        return SkewPoly::from_coeffs(ctx_, std::move(c));
    }

   private:
    FieldCtxPtr ctx_;
    size_t n_ = 0, k_ = 0;
    std::vector<FieldElem> g_;
};

/// Error word of q-rank exactly t: row space spanned by t independent
/// multipliers over t independent F_q-support vectors.
inline std::vector<FieldElem> random_rank_error(const FieldCtxPtr& F, size_t n, size_t t,
                                                std::mt19937_64& rng) {
    if (t > n || t > F->m()) throw RankInfeasibleError("rank exceeds min(n, m)");
    std::vector<FieldElem> out(n, F->zero());
    if (t == 0) return out;
    // t field elements independent over F_q
    std::vector<FieldElem> a;
    for (;;) {
        a.clear();
        for (size_t l = 0; l < t; ++l) a.push_back(F->sample(rng));
        if (q_rank(F, a) == t) break;
    }
    // t independent support rows over F_q
    const uint32_t p = F->p();
    std::vector<std::vector<uint32_t>> lam;
    auto lam_rank = [&]() {
        std::vector<std::vector<uint32_t>> rows = lam;
        size_t rank = 0;
        for (size_t col = 0; col < n && rank < rows.size(); ++col) {
            size_t piv = rank;
            while (piv < rows.size() && rows[piv][col] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            uint64_t inv = 1;
            for (uint64_t e = p - 2, b = rows[rank][col] % p; e; e >>= 1, b = b * b % p)
                if (e & 1) inv = inv * b % p;
            for (auto& d : rows[rank]) d = uint32_t(uint64_t(d) * inv % p);
            for (size_t r2 = 0; r2 < rows.size(); ++r2) {
                if (r2 == rank || rows[r2][col] == 0) continue;
                const uint64_t c = rows[r2][col];
                for (size_t j = 0; j < n; ++j)
                    rows[r2][j] = uint32_t((rows[r2][j] + c * (p - rows[rank][j])) % p);
            }
            ++rank;
        }
        return rank;
    };
    for (;;) {
        lam.assign(t, std::vector<uint32_t>(n));
        for (auto& row : lam)
            for (auto& d : row) d = uint32_t(rng() % p);
        if (lam_rank() == t) break;
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t l = 0; l < t; ++l) F->raw_axpy(out[i], lam[l][i], a[l]);
    }
    return out;
}

/// Welch--Berlekamp-style interpolation instance for a received word:
/// E_i(Q) = Q_0(g_i) + Q_1(r_i) under operator evaluation with b = 1, and
/// weights (0, k-1).
inline std::pair<FunctionalSet, WeightVec> build_decoding_instance(const GabidulinCode& code,
                                                                   const std::vector<FieldElem>& r) {
    if (r.size() != code.n()) throw LengthMismatchError("received word has wrong length");
    std::vector<std::vector<FieldElem>> pts;
    pts.reserve(code.n());
    for (size_t i = 0; i < code.n(); ++i) pts.push_back({code.points()[i], r[i]});
    std::vector<FieldElem> bs(code.n(), code.ctx()->one());
    auto E = FunctionalSet::operator_family(code.ctx(), 2, std::move(pts), std::move(bs));
    return {std::move(E), WeightVec{0, int(code.k()) - 1}};
}

enum class DecoderKind { Baseline, Fast };

struct DecodeOutcome {
    std::optional<SkewPoly> message;  // empty on decoding failure
    size_t residual_rank = 0;         // rank of r - encode(message) when decoded
};

/// Unique decoding: solve the interpolation instance, take the TOP-minimal
/// row (Q_0, Q_1), recover f as the exact left quotient of -Q_0 by Q_1, and
/// accept only if the residual rank fits the unique-decoding radius. Never
/// returns a wrong codeword: failure is a value, not an exception.
inline DecodeOutcome gabidulin_decode(const GabidulinCode& code, const std::vector<FieldElem>& r,
                                      DecoderKind kind = DecoderKind::Fast) {
    const auto& F = code.ctx();
    auto [E, w] = build_decoding_instance(code, r);

    SkewMat basis;
    std::vector<int> wdegs;
    if (kind == DecoderKind::Baseline) {
        KnhResult res = knh_interpolate(E, w);
        basis = std::move(res.basis);
        wdegs = std::move(res.wdegs);
    } else {
        SolveResult res = solve_interpolation(E, w);
        basis = std::move(res.basis);
        wdegs = std::move(res.wdegs);
    }

    // TOP-minimal row: least weighted degree, then least pivot index
    size_t best = 0;
    int best_piv = int(wdeg_pivot(basis[0], w).pivot.value_or(0));
    for (size_t j = 1; j < basis.size(); ++j) {
        const auto wp = wdeg_pivot(basis[j], w);
        const int piv = int(wp.pivot.value_or(0));
        if (wdegs[j] < wdegs[best] || (wdegs[j] == wdegs[best] && piv < best_piv)) {
            best = j;
            best_piv = piv;
        }
    }
    const SkewPoly& q0 = basis[best][0];
    const SkewPoly& q1 = basis[best][1];
    if (q1.is_zero()) return {};

    auto [f, rem] = left_divmod(SkewPoly::zero(F) - q0, q1);
    if (!rem.is_zero() || f.deg() >= int(code.k())) return {};

    std::vector<FieldElem> reenc = code.encode(f);
    std::vector<FieldElem> diff(code.n());
    for (size_t i = 0; i < code.n(); ++i) diff[i] = F->sub(r[i], reenc[i]);
    const size_t rank = q_rank(F, diff);
    if (rank > code.radius()) return {};
    return {std::move(f), rank};
}

}  // namespace skewlab

#endif
