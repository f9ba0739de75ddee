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
 * @file skew_poly.hpp
 * @brief The skew polynomial ring F_{p^m}[x; sigma, delta].
 *
 * Multiplication follows the twist rule x*a = sigma(a)*x + delta(a), which
 * makes the ring noncommutative but left and right Euclidean. This header
 * provides products (schoolbook plus a split-and-twist accelerated path),
 * left/right division, GCRD/LCLM via the extended right Euclidean algorithm,
 * the generalized operator evaluation and the remainder evaluation, and the
 * minimal (annihilator) polynomials built from them.
 */

#ifndef SKEWLAB_SKEW_POLY_HPP
#define SKEWLAB_SKEW_POLY_HPP

#include <cassert>
#include <limits>
#include <utility>
#include <vector>

#include "skewlab/field.hpp"

namespace skewlab {

/// Degree of the zero polynomial ("minus infinity").
inline constexpr int kNegInfDeg = std::numeric_limits<int>::min();

class SkewPoly {
   public:
    SkewPoly() = default;
    explicit SkewPoly(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}

    static SkewPoly zero(FieldCtxPtr ctx) { return SkewPoly(std::move(ctx)); }

    static SkewPoly one(FieldCtxPtr ctx) {
        SkewPoly f(std::move(ctx));
        f.c_.push_back(f.ctx_->one());
        return f;
    }

    static SkewPoly constant(FieldCtxPtr ctx, const FieldElem& a) {
        SkewPoly f(std::move(ctx));
        if (!f.ctx_->is_zero(a)) f.c_.push_back(a);
        return f;
    }

    static SkewPoly x(FieldCtxPtr ctx) {
        SkewPoly f(std::move(ctx));
        f.c_ = {f.ctx_->zero(), f.ctx_->one()};
        return f;
    }

    /// x - b, the building block of remainder evaluation.
    static SkewPoly x_minus(FieldCtxPtr ctx, const FieldElem& b) {
        SkewPoly f(std::move(ctx));
        f.c_ = {f.ctx_->neg(b), f.ctx_->one()};
        return f;
    }

    static SkewPoly from_coeffs(FieldCtxPtr ctx, std::vector<FieldElem> coeffs) {
        SkewPoly f(std::move(ctx));
        f.c_ = std::move(coeffs);
        f.trim();
        return f;
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<FieldElem>& coeffs() const { return c_; }

    int deg() const { return c_.empty() ? kNegInfDeg : int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const FieldElem& coeff(size_t i) const {
        return i < c_.size() ? c_[i] : ctx_->zero();
    }

    const FieldElem& lead() const {
        assert(!c_.empty());
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == ctx_->one(); }

    bool operator==(const SkewPoly& rhs) const { return c_ == rhs.c_; }

    // mutating helpers used by the algorithms below
    void trim() {
        while (!c_.empty() && ctx_->is_zero(c_.back())) c_.pop_back();
    }

    std::vector<FieldElem>& raw_coeffs() { return c_; }

   private:
    FieldCtxPtr ctx_;
    std::vector<FieldElem> c_;
};

// ---------------------------------------------------------------- arithmetic

inline SkewPoly operator+(const SkewPoly& a, const SkewPoly& b) {
    const auto& F = a.ctx() ? a.ctx() : b.ctx();
    std::vector<FieldElem> out(std::max(a.coeffs().size(), b.coeffs().size()), F->zero());
    for (size_t i = 0; i < out.size(); ++i) out[i] = F->add(a.coeff(i), b.coeff(i));
    return SkewPoly::from_coeffs(F, std::move(out));
}

inline SkewPoly operator-(const SkewPoly& a, const SkewPoly& b) {
    const auto& F = a.ctx() ? a.ctx() : b.ctx();
    std::vector<FieldElem> out(std::max(a.coeffs().size(), b.coeffs().size()), F->zero());
    for (size_t i = 0; i < out.size(); ++i) out[i] = F->sub(a.coeff(i), b.coeff(i));
    return SkewPoly::from_coeffs(F, std::move(out));
}

/// Left scalar multiple s * f (constants act from the left on coefficients).
inline SkewPoly scale(const FieldElem& s, const SkewPoly& f) {
    const auto& F = f.ctx();
    if (F->is_zero(s)) return SkewPoly::zero(F);
    std::vector<FieldElem> out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) out.push_back(F->mul(s, c));
    return SkewPoly::from_coeffs(F, std::move(out));
}

/// x * f via one twist step: coefficients map to sigma(c) x^{i+1} + delta(c) x^i.
inline SkewPoly x_mul(const SkewPoly& f) {
    const auto& F = f.ctx();
    if (f.is_zero()) return f;
    std::vector<FieldElem> out(f.coeffs().size() + 1, F->zero());
    const bool der = F->has_derivation();
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const auto& c = f.coeffs()[i];
        if (F->is_zero(c)) continue;
        FieldElem s = F->sigma(c);
        out[i + 1] = F->add(out[i + 1], s);
        if (der) out[i] = F->add(out[i], F->mul(F->gamma(), F->sub(s, c)));
    }
    return SkewPoly::from_coeffs(F, std::move(out));
}

/// x^k * f. For the zero derivation this is a coefficient-wise sigma^k
/// followed by a shift; otherwise k single twist steps.
inline SkewPoly xk_mul(const SkewPoly& f, size_t k) {
    const auto& F = f.ctx();
    if (f.is_zero() || k == 0) return f;
    if (!F->has_derivation()) {
        std::vector<FieldElem> out(f.coeffs().size() + k, F->zero());
        for (size_t i = 0; i < f.coeffs().size(); ++i)
            out[i + k] = F->sigma_pow(f.coeffs()[i], int64_t(k));
        return SkewPoly::from_coeffs(F, std::move(out));
    }
    SkewPoly out = f;
    for (size_t i = 0; i < k; ++i) out = x_mul(out);
    return out;
}

inline SkewPoly mul_schoolbook(const SkewPoly& a, const SkewPoly& b) {
    const auto& F = a.ctx();
    if (a.is_zero() || b.is_zero()) return SkewPoly::zero(F);
    std::vector<FieldElem> out(a.coeffs().size() + b.coeffs().size() - 1, F->zero());
    SkewPoly t = b;  // x^i * b
    for (size_t i = 0;; ++i) {
        const auto& ai = a.coeff(i);
        if (!F->is_zero(ai)) {
            for (size_t j = 0; j < t.coeffs().size(); ++j) {
                const auto& tj = t.coeffs()[j];
                if (!F->is_zero(tj)) out[j] = F->add(out[j], F->mul(ai, tj));
            }
        }
        if (i + 1 >= a.coeffs().size()) break;
        t = x_mul(t);
    }
    return SkewPoly::from_coeffs(F, std::move(out));
}

inline constexpr size_t kSplitMulThreshold = 32;

/// Split-and-twist product: f = f_hi x^k + f_lo, and x^k * b is formed in a
/// single pass (sigma^k coefficient-wise when delta = 0). Identical output to
/// the schoolbook path; the twist batching is what the split buys.
inline SkewPoly mul_split(const SkewPoly& a, const SkewPoly& b,
                          size_t threshold = kSplitMulThreshold) {
    const auto& F = a.ctx();
    if (a.is_zero() || b.is_zero()) return SkewPoly::zero(F);
    if (a.coeffs().size() <= threshold || b.coeffs().size() <= threshold)
        return mul_schoolbook(a, b);
    const size_t k = a.coeffs().size() / 2;
    SkewPoly lo = SkewPoly::from_coeffs(
        F, std::vector<FieldElem>(a.coeffs().begin(), a.coeffs().begin() + k));
    SkewPoly hi = SkewPoly::from_coeffs(
        F, std::vector<FieldElem>(a.coeffs().begin() + k, a.coeffs().end()));
    SkewPoly shifted = xk_mul(b, k);  // x^k * b
    SkewPoly top = mul_split(hi, shifted, threshold);
    SkewPoly bot = mul_split(lo, b, threshold);
    return top + bot;
}

inline SkewPoly operator*(const SkewPoly& a, const SkewPoly& b) {
    return mul_split(a, b);
}

inline SkewPoly monic(const SkewPoly& f) {
    const auto& F = f.ctx();
    if (f.is_zero() || f.is_monic()) return f;
    return scale(F->inv(f.lead()), f);
}

// ------------------------------------------------------------------ division

/// Right division: f = q * g + r with deg r < deg g.
inline std::pair<SkewPoly, SkewPoly> right_divmod(const SkewPoly& f, const SkewPoly& g) {
    const auto& F = f.ctx() ? f.ctx() : g.ctx();
    if (g.is_zero()) throw DivisionByZeroError("right division by zero");
    if (f.deg() < g.deg()) return {SkewPoly::zero(F), f};
    const int dg = g.deg();
    const int kmax = f.deg() - dg;
    // x^k * g for every needed shift (the derivation spreads terms downward)
    std::vector<SkewPoly> shifts;
    shifts.reserve(kmax + 1);
    shifts.push_back(g);
    for (int k = 1; k <= kmax; ++k) shifts.push_back(x_mul(shifts.back()));

    std::vector<FieldElem> r(f.coeffs());
    std::vector<FieldElem> q(size_t(kmax) + 1, F->zero());
    int dr = f.deg();
    while (dr >= dg) {
        const int k = dr - dg;
        const FieldElem c = F->mul(r[dr], F->inv(F->sigma_pow(g.lead(), k)));
        q[k] = c;
        const auto& piece = shifts[k].coeffs();
        for (size_t j = 0; j + 1 < piece.size(); ++j) {
            if (!F->is_zero(piece[j])) r[j] = F->sub(r[j], F->mul(c, piece[j]));
        }
        r[dr] = F->zero();  // leading term cancels exactly
        while (dr >= 0 && F->is_zero(r[size_t(dr)])) --dr;
    }
    r.resize(size_t(dr + 1));
    return {SkewPoly::from_coeffs(F, std::move(q)), SkewPoly::from_coeffs(F, std::move(r))};
}

inline SkewPoly mod_r(const SkewPoly& f, const SkewPoly& g) {
    return right_divmod(f, g).second;
}

/// Left division: f = g * q + r with deg r < deg g.
inline std::pair<SkewPoly, SkewPoly> left_divmod(const SkewPoly& f, const SkewPoly& g) {
    const auto& F = f.ctx() ? f.ctx() : g.ctx();
    if (g.is_zero()) throw DivisionByZeroError("left division by zero");
    if (f.deg() < g.deg()) return {SkewPoly::zero(F), f};
    const int dg = g.deg();
    const FieldElem lg_inv = F->inv(g.lead());
    SkewPoly r = f;
    std::vector<FieldElem> q(size_t(f.deg() - dg) + 1, F->zero());
    while (r.deg() >= dg) {
        const int k = r.deg() - dg;
        // leading term of g * (c x^k) is g_dg * sigma^dg(c) x^{dg+k}
        const FieldElem c = F->sigma_pow(F->mul(lg_inv, r.lead()), -int64_t(dg));
        q[k] = c;
        SkewPoly piece = mul_schoolbook(g, SkewPoly::from_coeffs(F, [&] {
            std::vector<FieldElem> cx(size_t(k) + 1, F->zero());
            cx[k] = c;
            return cx;
        }()));
        r = r - piece;
        if (r.deg() == dg + k) throw InternalInvariantError("left division failed to reduce");
    }
    return {SkewPoly::from_coeffs(F, std::move(q)), r};
}

// ------------------------------------------------------------- gcrd and lclm

/// Extended right Euclidean algorithm. Returns the monic greatest common
/// right divisor and the monic least common left multiple; the LCLM of f and
/// g is the cofactor-by-f product at the step where the remainder vanishes.
inline std::pair<SkewPoly, SkewPoly> gcrd_lclm(const SkewPoly& f, const SkewPoly& g) {
    const auto& F = f.ctx() ? f.ctx() : g.ctx();
    if (f.is_zero() && g.is_zero()) throw BothZeroError("gcrd/lclm of two zero polynomials");
    if (f.is_zero()) return {monic(g), SkewPoly::zero(F)};
    if (g.is_zero()) return {monic(f), SkewPoly::zero(F)};
    SkewPoly r0 = f, r1 = g;
    SkewPoly u0 = SkewPoly::one(F), u1 = SkewPoly::zero(F);
    while (!r1.is_zero()) {
        auto [q, r2] = right_divmod(r0, r1);
        SkewPoly u2 = u0 - mul_schoolbook(q, u1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    return {monic(r0), monic(mul_schoolbook(u1, f))};
}

// ----------------------------------------------------------------- evaluation

/// Generalized operator evaluation: f(c)_b = sum_i f_i D_b^i(c) with
/// D_b(c) = sigma(c) b + delta(c). F_q-linear in c for the fixed field F_q.
inline FieldElem op_eval(const SkewPoly& f, const FieldElem& c, const FieldElem& b) {
    const auto& F = f.ctx();
    if (!F) throw Error("op_eval on an uninitialized polynomial");
    FieldElem acc = F->zero();
    FieldElem cur = c;
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const auto& fi = f.coeffs()[i];
        if (!F->is_zero(fi)) acc = F->add(acc, F->mul(fi, cur));
        if (i + 1 < f.coeffs().size()) cur = F->dmap(cur, b);
    }
    return acc;
}

/// Remainder evaluation: f(b) = f mod_r (x - b).
inline FieldElem rem_eval(const SkewPoly& f, const FieldElem& b) {
    const auto& F = f.ctx();
    if (f.is_zero()) return F->zero();
    SkewPoly r = mod_r(f, SkewPoly::x_minus(F, b));
    return r.is_zero() ? F->zero() : r.coeff(0);
}

enum class EvalFamily { Operator, Remainder };

/// Monic annihilator of one point. Operator family: x - D_b(u) u^{-1} for
/// u != 0 and the constant 1 for u = 0 (every polynomial kills 0).
/// Remainder family: x - p.
inline SkewPoly annihilator(const FieldCtxPtr& F, EvalFamily family, const FieldElem& point,
                            const FieldElem& b) {
    if (family == EvalFamily::Remainder) return SkewPoly::x_minus(F, point);
    if (F->is_zero(point)) return SkewPoly::one(F);
    return SkewPoly::x_minus(F, F->mul(F->dmap(point, b), F->inv(point)));
}

/// Minimal monic polynomial annihilating a point sequence, built by the
/// iterative residual construction: a nonzero residual e at step i is killed
/// by left-multiplying with x - D_beta(e) e^{-1}, where beta is the operator
/// parameter b_i or, for remainder evaluation, the point itself (the factor
/// must vanish at the conjugate of the point by e). Serves as the oracle for
/// the LCLM tree.
inline SkewPoly min_poly_set(const FieldCtxPtr& F, EvalFamily family,
                             const std::vector<FieldElem>& points,
                             const std::vector<FieldElem>& bs) {
    SkewPoly m = SkewPoly::one(F);
    for (size_t i = 0; i < points.size(); ++i) {
        const bool op = family == EvalFamily::Operator;
        FieldElem e = op ? op_eval(m, points[i], bs[i]) : rem_eval(m, points[i]);
        if (F->is_zero(e)) continue;
        const FieldElem& beta = op ? bs[i] : points[i];
        SkewPoly factor = SkewPoly::x_minus(F, F->mul(F->dmap(e, beta), F->inv(e)));
        m = mul_schoolbook(factor, m);
    }
    return m;
}

}  // namespace skewlab

#endif
