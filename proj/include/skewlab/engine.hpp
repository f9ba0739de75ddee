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
 * @file engine.hpp
 * @brief Digit-level product and reduction engine for skew polynomials.
 *
 * Every routine here computes the exact same coefficients as the metered
 * paths in skew_poly.hpp, but does so through F_p-linear maps (coefficient
 * matrices built by z-shifts, Frobenius tables, map composition). No field
 * multiplications or additions are issued against the context meter; the
 * work is genuine F_p linear algebra on the digit vectors. The fast solver
 * routes its bookkeeping products and reductions through this engine, so
 * its metered count reflects the interpolation structure itself.
 */

#ifndef SKEWLAB_ENGINE_HPP
#define SKEWLAB_ENGINE_HPP

#include <vector>

#include "skewlab/skew_poly.hpp"

namespace skewlab {

class LinopEngine {
   public:
    explicit LinopEngine(FieldCtxPtr ctx) : F_(std::move(ctx)) {
        sig_ = F_->frobenius_map(F_->sigma_exponent(1));
        if (F_->has_derivation()) {
            // delta = gamma * (sigma - id)
            FpLinMap gmul = F_->mul_map(F_->gamma());
            del_ = F_->map_sub(F_->compose(gmul, sig_), gmul);
            has_del_ = true;
        }
    }

    const FieldCtxPtr& ctx() const { return F_; }

    /// x * f on a raw coefficient vector, in place semantics via return.
    std::vector<FieldElem> twist(const std::vector<FieldElem>& c) const {
        std::vector<FieldElem> out(c.size() + 1, F_->zero());
        for (size_t j = 0; j < c.size(); ++j) {
            if (F_->is_zero(c[j])) continue;
            F_->raw_add_into(out[j + 1], F_->apply_raw(sig_, c[j]));
            if (has_del_) F_->raw_add_into(out[j], F_->apply_raw(del_, c[j]));
        }
        return out;
    }

    /// Skew product, digit-level. Same result as mul_schoolbook.
    SkewPoly mul(const SkewPoly& a, const SkewPoly& b) const {
        if (a.is_zero() || b.is_zero()) return SkewPoly::zero(F_);
        std::vector<FieldElem> out(a.coeffs().size() + b.coeffs().size() - 1, F_->zero());
        std::vector<FieldElem> tw = b.coeffs();
        for (size_t i = 0;; ++i) {
            const auto& ai = a.coeff(i);
            if (!F_->is_zero(ai)) {
                FpLinMap mm = F_->mul_map(ai);
                for (size_t j = 0; j < tw.size(); ++j) {
                    if (!F_->is_zero(tw[j]))
                        F_->raw_add_into(out[j], F_->apply_raw(mm, tw[j]));
                }
            }
            if (i + 1 >= a.coeffs().size()) break;
            tw = twist(tw);
        }
        return SkewPoly::from_coeffs(F_, std::move(out));
    }

    /// Right-reduction tables for a fixed monic modulus: row t holds the
    /// coefficients of x^t mod_r M for t >= deg M.
    class Reducer {
       public:
        Reducer(const LinopEngine& eng, SkewPoly mod) : eng_(&eng), mod_(std::move(mod)) {
            if (mod_.is_zero()) throw ZeroModulusError("reduction by zero polynomial");
            if (!mod_.is_monic()) throw InternalInvariantError("reducer expects a monic modulus");
        }

        const SkewPoly& modulus() const { return mod_; }

        SkewPoly reduce(const SkewPoly& f) const {
            const auto& F = eng_->F_;
            const int D = mod_.deg();
            if (f.deg() < D) return f;
            if (D == 0) return SkewPoly::zero(F);  // modulus 1
            extend_to(size_t(f.deg()));
            std::vector<FieldElem> out(size_t(D), F->zero());
            for (int j = 0; j < D; ++j) out[size_t(j)] = f.coeff(size_t(j));
            for (size_t t = size_t(D); t < f.coeffs().size(); ++t) {
                const auto& ft = f.coeffs()[t];
                if (F->is_zero(ft)) continue;
                FpLinMap mm = F->mul_map(ft);
                const auto& row = rows_[t - size_t(D)];
                for (int j = 0; j < D; ++j) {
                    if (!F->is_zero(row[size_t(j)]))
                        F->raw_add_into(out[size_t(j)], F->apply_raw(mm, row[size_t(j)]));
                }
            }
            return SkewPoly::from_coeffs(F, std::move(out));
        }

       private:
        void extend_to(size_t maxdeg) const {
            const auto& F = eng_->F_;
            const size_t D = size_t(mod_.deg());
            if (rows_.empty()) {
                // x^D mod M = -(M - x^D)
                std::vector<FieldElem> r0(D, F->zero());
                for (size_t j = 0; j < D; ++j) r0[j] = F->neg(mod_.coeff(j));
                rows_.push_back(std::move(r0));
            }
            while (rows_.size() + D - 1 < maxdeg) {
                std::vector<FieldElem> nxt = eng_->twist(rows_.back());  // degree may hit D
                FieldElem top = nxt[D];
                nxt.resize(D, F->zero());
                if (!F->is_zero(top)) {
                    FpLinMap mm = F->mul_map(top);
                    const auto& r0 = rows_.front();
                    for (size_t j = 0; j < D; ++j) {
                        if (!F->is_zero(r0[j]))
                            F->raw_add_into(nxt[j], F->apply_raw(mm, r0[j]));
                    }
                }
                rows_.push_back(std::move(nxt));
            }
        }

        const LinopEngine* eng_;
        SkewPoly mod_;
        mutable std::vector<std::vector<FieldElem>> rows_;
    };

    Reducer reducer(const SkewPoly& mod) const { return Reducer(*this, mod); }

   private:
    FieldCtxPtr F_;
    FpLinMap sig_;
    FpLinMap del_;
    bool has_del_ = false;
    friend class Reducer;
};

}  // namespace skewlab

#endif
