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
 * @file field.hpp
 * @brief Arithmetic in F_{p^m} = F_p[z]/(h) with a Frobenius-power
 *        automorphism sigma: a -> a^{p^r} and the inner sigma-derivation
 *        delta: a -> gamma * (sigma(a) - a).
 *
 * Elements are dense coefficient vectors over F_p (ascending powers of z).
 * For p == 2 the digits are bit-packed into 64-bit words; for p > 2 each
 * word holds one digit. Both layouts are observationally identical.
 *
 * A FieldCtx owns an operation meter (OpCounters). Multiplications and
 * additions in F_{p^m} are metered; sigma/delta applications and inversions
 * are tallied separately. The raw_* digit-level helpers bypass the meter;
 * they exist for table construction and for the digit-level linear-map
 * engine, which performs F_p linear algebra rather than field products.
 */

#ifndef SKEWLAB_FIELD_HPP
#define SKEWLAB_FIELD_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "skewlab/errors.hpp"

namespace skewlab {

using Digits = std::vector<uint32_t>;

struct OpCounters {
    uint64_t mul = 0;
    uint64_t add = 0;
    uint64_t inv = 0;
    uint64_t sigma = 0;

    void reset() { mul = add = inv = sigma = 0; }
};

/// An element of F_{p^m}. Storage layout is owned by the FieldCtx that
/// created it; elements from different contexts must not be mixed.
class FieldElem {
   public:
    FieldElem() = default;

    bool operator==(const FieldElem& rhs) const = default;

    const std::vector<uint64_t>& words() const { return w_; }

   private:
    explicit FieldElem(std::vector<uint64_t> w) : w_(std::move(w)) {}
    std::vector<uint64_t> w_;
    friend class FieldCtx;
};

/// F_p-linear map on F_{p^m}, stored as images of the basis 1, z, ..., z^{m-1}.
struct FpLinMap {
    std::vector<FieldElem> cols;
};

namespace detail {

// ---- polynomial helpers over F_p (digit vectors), used for modulus checks.
// These operate on plain digit vectors and never touch the meter.

inline Digits pf_trim(Digits a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline Digits pf_mulmod(const Digits& a, const Digits& b, const Digits& mod, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint64_t(a[i]) * b[j];
    }
    for (auto& x : acc) x %= p;
    const size_t dm = mod.size() - 1;
    for (size_t i = acc.size(); i-- > dm;) {
        const uint64_t c = acc[i] % p;
        if (!c) continue;
        for (size_t j = 0; j < dm; ++j)
            acc[i - dm + j] = (acc[i - dm + j] + c * (p - mod[j])) % p;
        acc[i] = 0;
    }
    Digits out(dm, 0);
    for (size_t i = 0; i < dm && i < acc.size(); ++i) out[i] = uint32_t(acc[i] % p);
    return pf_trim(std::move(out));
}

inline Digits pf_powmod_p(const Digits& a, uint64_t p, const Digits& mod) {
    // a^p mod `mod` by square and multiply
    Digits acc = {1};
    Digits base = a;
    uint64_t e = p;
    while (e) {
        if (e & 1) acc = pf_mulmod(acc, base, mod, p);
        base = pf_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return acc;
}

inline Digits pf_gcd(Digits a, Digits b, uint64_t p) {
    a = pf_trim(std::move(a));
    b = pf_trim(std::move(b));
    auto modinv = [p](uint64_t x) {
        uint64_t e = p - 2, acc = 1;
        x %= p;
        while (e) {
            if (e & 1) acc = acc * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return acc;
    };
    while (!b.empty()) {
        const uint64_t binv = modinv(b.back());
        while (a.size() >= b.size()) {
            const uint64_t c = uint64_t(a.back()) * binv % p;
            const size_t shift = a.size() - b.size();
            if (c)
                for (size_t j = 0; j + 1 < b.size(); ++j)
                    a[shift + j] = uint32_t((a[shift + j] + c * (p - b[j] % p)) % p);
            a.pop_back();
            a = pf_trim(std::move(a));
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

inline std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> out;
    for (uint32_t q = 2; uint64_t(q) * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t q = 2; uint64_t(q) * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

/// Rabin's deterministic irreducibility criterion for monic h over F_p.
inline bool irreducible_rabin(const Digits& mod, uint64_t p) {
    const uint32_t m = uint32_t(mod.size() - 1);
    if (m == 1) return true;
    const Digits z = {0, 1};
    const auto divisors = prime_factors(m);
    Digits t = z;
    for (uint32_t i = 1; i <= m; ++i) {
        t = pf_powmod_p(t, p, mod);  // t = z^{p^i} mod h
        for (uint32_t l : divisors) {
            if (i == m / l) {
                // gcd(z^{p^{m/l}} - z, h) must be 1
                Digits diff = t;
                if (diff.size() < 2) diff.resize(2, 0);
                diff[1] = uint32_t((diff[1] + p - 1) % p);
                diff = pf_trim(std::move(diff));
                Digits g = pf_gcd(diff, mod, p);
                if (!(g.size() == 1)) return false;
            }
        }
    }
    // z^{p^m} == z
    Digits diff = t;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = uint32_t((diff[1] + p - 1) % p);
    return pf_trim(std::move(diff)).empty();
}

/// Exhaustive divisor search; reserved for small p^m per the construction
/// contract (the Rabin test covers the rest).
inline bool irreducible_bruteforce(const Digits& mod, uint64_t p) {
    const uint32_t m = uint32_t(mod.size() - 1);
    if (m == 1) return true;
    for (uint32_t d = 1; d <= m / 2; ++d) {
        // all monic divisor candidates of degree d
        uint64_t total = 1;
        for (uint32_t i = 0; i < d; ++i) total *= p;
        for (uint64_t enc = 0; enc < total; ++enc) {
            Digits cand(d + 1, 0);
            uint64_t e = enc;
            for (uint32_t i = 0; i < d; ++i) {
                cand[i] = uint32_t(e % p);
                e /= p;
            }
            cand[d] = 1;
            // remainder of mod by cand
            Digits r = mod;
            while (r.size() > d) {
                const uint64_t c = r.back() % p;
                if (c) {
                    const size_t shift = r.size() - cand.size();
                    for (size_t j = 0; j < cand.size(); ++j)
                        r[shift + j] = uint32_t((r[shift + j] + c * (p - cand[j])) % p);
                }
                r.pop_back();
                while (!r.empty() && r.back() == 0) r.pop_back();
                if (r.size() <= d) break;
            }
            if (pf_trim(std::move(r)).empty()) return false;
        }
    }
    return true;
}

inline bool irreducible(const Digits& mod, uint64_t p) {
    const uint32_t m = uint32_t(mod.size() - 1);
    double logsize = m * std::log2(double(p));
    if (logsize <= 20.0) return irreducible_bruteforce(mod, p);
    return irreducible_rabin(mod, p);
}

}  // namespace detail

class FieldCtx {
   public:
    /// Builds a field context. With no modulus given, the lexicographically
    /// smallest monic irreducible of degree m (ascending coefficient order)
    /// is selected, so equal parameters give bit-identical contexts.
    static std::shared_ptr<const FieldCtx> make(uint32_t p, uint32_t m,
                                                std::optional<Digits> modulus = std::nullopt,
                                                std::optional<uint32_t> aut_power = std::nullopt,
                                                std::optional<Digits> gamma = std::nullopt) {
        if (p < 2 || !detail::is_prime_u32(p)) throw NotPrimeError("field characteristic must be prime");
        if (m < 1) throw Error("extension degree must be at least 1");
        Digits mod;
        if (modulus) {
            mod = *modulus;
            if (mod.size() != m + 1) throw LengthMismatchError("modulus must have degree m");
            for (auto& d : mod) d %= p;
            if (mod[m] != 1) throw ReducibleModulusError("modulus must be monic");
            if (!detail::irreducible(mod, p)) throw ReducibleModulusError("modulus is reducible");
        } else {
            mod = smallest_irreducible(p, m);
        }
        uint32_t r = aut_power ? *aut_power : (1u % m);
        if (r >= m) throw Error("aut_power must satisfy 0 <= r < m");
        auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx(p, m, std::move(mod), r));
        if (gamma) ctx->gamma_ = ctx->from_digits(*gamma);
        return ctx;
    }

    static Digits smallest_irreducible(uint32_t p, uint32_t m) {
        if (m == 1) return {0, 1};  // h = z, giving F_p itself
        // lexicographic order on the ascending coefficient tuple (c_0,...,c_{m-1});
        // c_0 = 0 would make the candidate divisible by z, so it starts at 1
        Digits cand(m + 1, 0);
        cand[0] = 1;
        cand[m] = 1;
        for (;;) {
            if (detail::irreducible(cand, p)) return cand;
            for (uint32_t i = m;; --i) {
                if (i == 0) throw Error("no irreducible polynomial found");
                if (++cand[i - 1] < p) break;
                cand[i - 1] = 0;
            }
        }
    }

    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint32_t aut_power() const { return r_; }
    const Digits& modulus() const { return mod_; }
    const FieldElem& gamma() const { return gamma_; }
    bool has_derivation() const { return !is_zero(gamma_); }

    /// Multiplicative order of sigma as an automorphism.
    uint32_t sigma_order() const { return r_ == 0 ? 1 : m_ / std::gcd(r_, m_); }

    OpCounters& counters() const { return counters_; }

    // ---- element factories -------------------------------------------------

    const FieldElem& zero() const { return zero_; }
    const FieldElem& one() const { return one_; }

    FieldElem from_digits(const Digits& d) const {
        if (d.size() > m_) throw LengthMismatchError("too many digits for field element");
        FieldElem e = zero_;
        for (size_t i = 0; i < d.size(); ++i) digit_set(e, i, d[i] % p_);
        return e;
    }

    /// Encodes an integer label in base p (little-endian digits).
    FieldElem from_label(uint64_t label) const {
        FieldElem e = zero_;
        for (uint32_t i = 0; i < m_ && label; ++i) {
            digit_set(e, i, uint32_t(label % p_));
            label /= p_;
        }
        return e;
    }

    uint64_t label(const FieldElem& a) const {
        uint64_t out = 0;
        for (uint32_t i = m_; i-- > 0;) out = out * p_ + digit(a, i);
        return out;
    }

    Digits digits(const FieldElem& a) const {
        Digits out(m_);
        for (uint32_t i = 0; i < m_; ++i) out[i] = digit(a, i);
        return out;
    }

    FieldElem sample(std::mt19937_64& rng) const {
        FieldElem e = zero_;
        if (p_ == 2) {
            for (size_t i = 0; i < nw_; ++i) e.w_[i] = rng();
            if (m_ & 63) e.w_[nw_ - 1] &= (uint64_t(1) << (m_ & 63)) - 1;
        } else {
            for (uint32_t i = 0; i < m_; ++i) digit_set(e, i, uint32_t(rng() % p_));
        }
        return e;
    }

    FieldElem sample_nonzero(std::mt19937_64& rng) const {
        for (;;) {
            FieldElem e = sample(rng);
            if (!is_zero(e)) return e;
        }
    }

    // ---- metered arithmetic ------------------------------------------------

    bool is_zero(const FieldElem& a) const {
        for (auto w : a.w_)
            if (w) return false;
        return true;
    }

    FieldElem add(const FieldElem& a, const FieldElem& b) const {
        ++counters_.add;
        return raw_add(a, b);
    }

    FieldElem sub(const FieldElem& a, const FieldElem& b) const {
        ++counters_.add;
        return raw_sub(a, b);
    }

    FieldElem neg(const FieldElem& a) const {
        if (p_ == 2) return a;
        FieldElem out = a;
        for (uint32_t i = 0; i < m_; ++i) {
            uint32_t d = digit(out, i);
            if (d) digit_set(out, i, p_ - d);
        }
        return out;
    }

    FieldElem mul(const FieldElem& a, const FieldElem& b) const {
        ++counters_.mul;
#ifdef SKEWLAB_FAULT_INJECT
        // test hook: periodically corrupt a product so the self test can
        // demonstrate that it detects broken arithmetic
        if (counters_.mul % 997 == 0) {
            FieldElem bad = raw_mul(a, b);
            digit_set(bad, 0, (digit(bad, 0) + 1) % p_);
            return bad;
        }
#endif
        return raw_mul(a, b);
    }

    FieldElem inv(const FieldElem& a) const {
        if (is_zero(a)) throw DivisionByZeroError("inverse of zero");
        ++counters_.inv;
        return p_ == 2 ? inv_packed(a) : inv_fermat(a);
    }

    FieldElem pow(const FieldElem& a, uint64_t e) const {
        FieldElem acc = one_, base = a;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// sigma^k, k may be negative; realized as a -> a^{p^{(r k mod m)}}.
    FieldElem sigma_pow(const FieldElem& a, int64_t k) const {
        const uint32_t e = sigma_exponent(k);
        if (e == 0) return a;
        ++counters_.sigma;
        return apply_raw(frobenius_map(e), a);
    }

    FieldElem sigma(const FieldElem& a) const { return sigma_pow(a, 1); }

    /// delta(a) = gamma * (sigma(a) - a); the zero map when gamma == 0.
    FieldElem delta(const FieldElem& a) const {
        if (is_zero(gamma_)) return zero_;
        return mul(gamma_, sub(sigma(a), a));
    }

    /// D_b(a) = sigma(a) * b + delta(a), the pseudo-linear operator behind
    /// generalized operator evaluation.
    FieldElem dmap(const FieldElem& a, const FieldElem& b) const {
        FieldElem s = sigma(a);
        FieldElem out = mul(s, b);
        if (!is_zero(gamma_)) out = add(out, mul(gamma_, sub(s, a)));
        return out;
    }

    // ---- unmetered digit-level interface (engine substrate) ----------------

    uint32_t digit(const FieldElem& a, size_t i) const {
        if (p_ == 2) return uint32_t((a.w_[i >> 6] >> (i & 63)) & 1);
        return uint32_t(a.w_[i]);
    }

    void digit_set(FieldElem& a, size_t i, uint32_t v) const {
        if (p_ == 2) {
            const uint64_t bit = uint64_t(1) << (i & 63);
            if (v & 1)
                a.w_[i >> 6] |= bit;
            else
                a.w_[i >> 6] &= ~bit;
        } else {
            a.w_[i] = v % p_;
        }
    }

    FieldElem raw_add(const FieldElem& a, const FieldElem& b) const {
        FieldElem out = a;
        raw_add_into(out, b);
        return out;
    }

    void raw_add_into(FieldElem& a, const FieldElem& b) const {
        if (p_ == 2) {
            for (size_t i = 0; i < nw_; ++i) a.w_[i] ^= b.w_[i];
        } else {
            for (size_t i = 0; i < nw_; ++i) a.w_[i] = (a.w_[i] + b.w_[i]) % p_;
        }
    }

    FieldElem raw_sub(const FieldElem& a, const FieldElem& b) const {
        if (p_ == 2) return raw_add(a, b);
        FieldElem out = a;
        for (size_t i = 0; i < nw_; ++i) out.w_[i] = (out.w_[i] + p_ - b.w_[i]) % p_;
        return out;
    }

    /// out += d * b over F_p (no field multiplication is performed).
    void raw_axpy(FieldElem& out, uint32_t d, const FieldElem& b) const {
        if (!d) return;
        if (p_ == 2) {
            for (size_t i = 0; i < nw_; ++i) out.w_[i] ^= b.w_[i];
        } else {
            for (size_t i = 0; i < nw_; ++i) out.w_[i] = (out.w_[i] + uint64_t(d) * b.w_[i]) % p_;
        }
    }

    /// Multiplication by z (shift one digit up, reduce by the modulus).
    FieldElem raw_mul_z(const FieldElem& a) const {
        FieldElem out = zero_;
        if (p_ == 2) {
            uint64_t carry = 0;
            for (size_t i = 0; i < nw_; ++i) {
                const uint64_t w = a.w_[i];
                out.w_[i] = (w << 1) | carry;
                carry = w >> 63;
            }
            const bool top = (m_ & 63) ? ((out.w_[m_ >> 6] >> (m_ & 63)) & 1) : (carry & 1);
            if (top) {
                for (size_t i = 0; i < nw_; ++i) out.w_[i] ^= modbits_[i];
                if (m_ & 63) out.w_[m_ >> 6] &= ~(uint64_t(1) << (m_ & 63));
            }
        } else {
            uint32_t top = uint32_t(a.w_[m_ - 1]);
            for (size_t i = m_ - 1; i > 0; --i) out.w_[i] = a.w_[i - 1];
            out.w_[0] = 0;
            if (top)
                for (uint32_t j = 0; j < m_; ++j)
                    out.w_[j] = (out.w_[j] + uint64_t(top) * (p_ - mod_[j])) % p_;
        }
        return out;
    }

    /// Full product without touching the meter (table construction only).
    FieldElem raw_mul(const FieldElem& a, const FieldElem& b) const {
        return p_ == 2 ? mul_packed(a, b) : mul_digits(a, b);
    }

    /// F_p-matrix of the map x -> c*x, columns built by z-shifts.
    FpLinMap mul_map(const FieldElem& c) const {
        FpLinMap out;
        out.cols.resize(m_);
        out.cols[0] = c;
        for (uint32_t j = 1; j < m_; ++j) out.cols[j] = raw_mul_z(out.cols[j - 1]);
        return out;
    }

    FieldElem apply_raw(const FpLinMap& map, const FieldElem& a) const {
        FieldElem out = zero_;
        for (uint32_t j = 0; j < m_; ++j) {
            const uint32_t d = digit(a, j);
            if (d) raw_axpy(out, d, map.cols[j]);
        }
        return out;
    }

    FpLinMap compose(const FpLinMap& f, const FpLinMap& g) const {
        FpLinMap out;
        out.cols.resize(m_);
        for (uint32_t j = 0; j < m_; ++j) out.cols[j] = apply_raw(f, g.cols[j]);
        return out;
    }

    FpLinMap identity_map() const {
        FpLinMap out;
        out.cols.resize(m_);
        for (uint32_t j = 0; j < m_; ++j) {
            FieldElem e = zero_;
            digit_set(e, j, 1);
            out.cols[j] = e;
        }
        return out;
    }

    FpLinMap map_sub(const FpLinMap& f, const FpLinMap& g) const {
        FpLinMap out;
        out.cols.resize(m_);
        for (uint32_t j = 0; j < m_; ++j) out.cols[j] = raw_sub(f.cols[j], g.cols[j]);
        return out;
    }

    const FpLinMap& frobenius_map(uint32_t e) const {
        std::lock_guard<std::mutex> lock(frob_mutex_);
        auto it = frob_.find(e);
        if (it != frob_.end()) return it->second;
        FpLinMap map;
        map.cols.resize(m_);
        // z^{p^e} by e successive p-th powers of z
        FieldElem zp = zero_;
        if (m_ == 1)
            zp = zero_;  // z == 0 in F_p
        else
            digit_set(zp, 1, 1);
        for (uint32_t i = 0; i < e; ++i) zp = raw_pow(zp, p_);
        map.cols[0] = one_;
        for (uint32_t j = 1; j < m_; ++j) map.cols[j] = raw_mul(map.cols[j - 1], zp);
        return frob_.emplace(e, std::move(map)).first->second;
    }

    /// F_p-matrix of D_b (sigma, scaled and shifted for the inner derivation).
    FpLinMap dmap_matrix(const FieldElem& b) const {
        // D_b(a) = sigma(a)*(b + gamma) - gamma*a
        const FpLinMap& frob = frobenius_map(sigma_exponent(1));
        FpLinMap scaled = compose(mul_map(raw_add(b, gamma_)), frob);
        if (is_zero(gamma_)) return scaled;
        return map_sub(scaled, mul_map(gamma_));
    }

    uint32_t sigma_exponent(int64_t k) const {
        int64_t e = (int64_t(r_) * (k % int64_t(m_))) % int64_t(m_);
        if (e < 0) e += m_;
        return uint32_t(e);
    }

   private:
    FieldCtx(uint32_t p, uint32_t m, Digits mod, uint32_t r)
        : p_(p), m_(m), r_(r), mod_(std::move(mod)) {
        nw_ = (p_ == 2) ? (m_ + 63) / 64 : m_;
        zero_ = FieldElem(std::vector<uint64_t>(nw_, 0));
        one_ = zero_;
        digit_set(one_, 0, 1);
        gamma_ = zero_;
        if (p_ == 2) {
            modbits_.assign((m_ + 64) / 64, 0);
            for (uint32_t i = 0; i <= m_; ++i)
                if (mod_[i] & 1) modbits_[i >> 6] |= uint64_t(1) << (i & 63);
            modbits_.resize(nw_ + 1, 0);
        }
    }

    FieldElem raw_pow(const FieldElem& a, uint64_t e) const {
        FieldElem acc = one_, base = a;
        while (e) {
            if (e & 1) acc = raw_mul(acc, base);
            base = raw_mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    FieldElem mul_packed(const FieldElem& a, const FieldElem& b) const {
        std::vector<uint64_t> acc(2 * nw_, 0);
        for (uint32_t i = 0; i < m_; ++i) {
            if ((a.w_[i >> 6] >> (i & 63)) & 1) {
                const size_t ws = i >> 6, bs = i & 63;
                if (bs == 0) {
                    for (size_t j = 0; j < nw_; ++j) acc[ws + j] ^= b.w_[j];
                } else {
                    for (size_t j = 0; j < nw_; ++j) {
                        acc[ws + j] ^= b.w_[j] << bs;
                        acc[ws + j + 1] ^= b.w_[j] >> (64 - bs);
                    }
                }
            }
        }
        // reduce degrees 2m-2 .. m by the modulus
        for (uint32_t t = 2 * m_ - 2; t >= m_ && t != uint32_t(-1); --t) {
            if ((acc[t >> 6] >> (t & 63)) & 1) {
                const uint32_t k = t - m_;
                const size_t ws = k >> 6, bs = k & 63;
                const size_t nmw = modbits_.size();
                if (bs == 0) {
                    for (size_t j = 0; j < nmw && ws + j < acc.size(); ++j) acc[ws + j] ^= modbits_[j];
                } else {
                    for (size_t j = 0; j < nmw && ws + j < acc.size(); ++j) {
                        acc[ws + j] ^= modbits_[j] << bs;
                        if (ws + j + 1 < acc.size()) acc[ws + j + 1] ^= modbits_[j] >> (64 - bs);
                    }
                }
            }
            if (t == m_) break;
        }
        FieldElem out = zero_;
        for (size_t j = 0; j < nw_; ++j) out.w_[j] = acc[j];
        // mask bits >= m in the top word
        if (m_ & 63) out.w_[nw_ - 1] &= (uint64_t(1) << (m_ & 63)) - 1;
        return out;
    }

    FieldElem mul_digits(const FieldElem& a, const FieldElem& b) const {
        std::vector<uint64_t> acc(2 * m_ - 1, 0);
        for (uint32_t i = 0; i < m_; ++i) {
            if (!a.w_[i]) continue;
            for (uint32_t j = 0; j < m_; ++j) acc[i + j] += a.w_[i] * b.w_[j];
        }
        for (auto& x : acc) x %= p_;
        for (uint32_t t = 2 * m_ - 2; t >= m_ && t != uint32_t(-1); --t) {
            const uint64_t c = acc[t];
            if (c) {
                for (uint32_t j = 0; j < m_; ++j)
                    acc[t - m_ + j] = (acc[t - m_ + j] + c * (p_ - mod_[j])) % p_;
                acc[t] = 0;
            }
            if (t == m_) break;
        }
        FieldElem out = zero_;
        for (uint32_t j = 0; j < m_; ++j) out.w_[j] = acc[j];
        return out;
    }

    /// Extended Euclid over GF(2)[z] on packed bit rows.
    FieldElem inv_packed(const FieldElem& a) const {
        const size_t words = nw_ + 1;
        std::vector<uint64_t> r0(modbits_.begin(), modbits_.begin() + words);
        std::vector<uint64_t> r1(words, 0);
        for (size_t i = 0; i < nw_; ++i) r1[i] = a.w_[i];
        std::vector<uint64_t> u0(words, 0), u1(words, 0);
        u1[0] = 1;

        auto degree = [&](const std::vector<uint64_t>& v) -> int {
            for (size_t i = words; i-- > 0;)
                if (v[i]) return int(i * 64 + 63 - std::countl_zero(v[i]));
            return -1;
        };
        auto xor_shift = [&](std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, uint32_t k) {
            const size_t ws = k >> 6, bs = k & 63;
            if (bs == 0) {
                for (size_t j = 0; j + ws < words; ++j) dst[j + ws] ^= src[j];
            } else {
                for (size_t j = 0; j + ws < words; ++j) {
                    dst[j + ws] ^= src[j] << bs;
                    if (j + ws + 1 < words) dst[j + ws + 1] ^= src[j] >> (64 - bs);
                }
            }
        };

        int d0 = degree(r0), d1 = degree(r1);
        while (d1 > 0) {
            if (d0 < d1) {
                std::swap(r0, r1);
                std::swap(u0, u1);
                std::swap(d0, d1);
            }
            const uint32_t k = uint32_t(d0 - d1);
            xor_shift(r0, r1, k);
            xor_shift(u0, u1, k);
            d0 = degree(r0);
        }
        if (d1 < 0) {  // r1 hit zero first; the constant lives in the r0 track
            std::swap(u0, u1);
        }
        // r track reached the constant 1; reduce the cofactor below degree m
        for (int du = degree(u1); du >= int(m_); du = degree(u1))
            xor_shift(u1, modbits_, uint32_t(du - int(m_)));
        FieldElem out = zero_;
        for (size_t i = 0; i < nw_; ++i) out.w_[i] = u1[i];
        if (m_ & 63) out.w_[nw_ - 1] &= (uint64_t(1) << (m_ & 63)) - 1;
        return out;
    }

    FieldElem inv_fermat(const FieldElem& a) const {
        uint64_t e = 1;
        for (uint32_t i = 0; i < m_; ++i) e *= p_;
        return raw_pow(a, e - 2);
    }

    uint32_t p_, m_, r_;
    Digits mod_;
    size_t nw_ = 0;
    FieldElem zero_, one_, gamma_;
    std::vector<uint64_t> modbits_;  // p == 2 only
    mutable OpCounters counters_;
    mutable std::mutex frob_mutex_;
    mutable std::map<uint32_t, FpLinMap> frob_;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

}  // namespace skewlab

#endif
