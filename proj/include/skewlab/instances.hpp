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
 * @file instances.hpp
 * @brief Interpolation problem instances: seeded random generation and the
 *        JSON wire format shared by the CLI and the tests.
 *
 * Instance file layout:
 * {
 *   "field":   {"p": 2, "m": 3, "modulus": [1,0,1,1], "aut_power": 1,
 *               "gamma": [0,0,0]},
 *   "s":       1,
 *   "n":       2,
 *   "family":  "operator" | "remainder",
 *   "weights": [0, 0],
 *   "points":  operator:  [{"b": [..], "u": [[..], [..]]}, ...]
 *              remainder: [{"p": [[..], null, [..]]}, ...]
 *   "seed":    42            (optional, echoed back)
 * }
 * Field elements are ascending base-p digit arrays.
 */

#ifndef SKEWLAB_INSTANCES_HPP
#define SKEWLAB_INSTANCES_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewlab/knh_fast.hpp"

namespace skewlab {

using Json = nlohmann::ordered_json;

struct Instance {
    FieldCtxPtr ctx;
    FunctionalSet functionals;
    WeightVec weights;
    std::optional<uint64_t> seed;
};

struct InstanceSpec {
    uint32_t p = 2;
    uint32_t m = 4;
    size_t s = 1;
    size_t n = 8;
    EvalFamily family = EvalFamily::Operator;
    uint32_t aut_power = 1;
    bool random_aut_power = false;  // draw r from [1, m) (falling back to 0 for m = 1)
    bool allow_derivation = false;  // sample a (possibly zero) gamma
    bool uniform_b = true;          // operator family: one shared b = 1
    bool zero_weights = true;       // otherwise weights are uniform in [0, n]
};

/// Seeded instance generation; identical (spec, seed) pairs give identical
/// instances bit for bit.
inline Instance make_random_instance(const InstanceSpec& spec, uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    uint32_t r = spec.aut_power % std::max(1u, spec.m);
    if (spec.random_aut_power && spec.m > 1) r = 1 + uint32_t(rng() % (spec.m - 1));
    std::optional<Digits> gamma;
    {
        auto plain = FieldCtx::make(spec.p, spec.m, std::nullopt, r);
        if (spec.allow_derivation && (rng() & 1)) gamma = plain->digits(plain->sample(rng));
    }
    auto ctx = FieldCtx::make(spec.p, spec.m, std::nullopt, r, gamma);

    const size_t width = spec.s + 1;
    WeightVec w(width, 0);
    if (!spec.zero_weights)
        for (auto& x : w) x = int(rng() % (spec.n + 1));

    if (spec.family == EvalFamily::Operator) {
        std::vector<std::vector<FieldElem>> pts(spec.n);
        for (auto& row : pts) {
            row.reserve(width);
            for (size_t j = 0; j < width; ++j) row.push_back(ctx->sample(rng));
        }
        std::vector<FieldElem> bs;
        bs.reserve(spec.n);
        if (spec.uniform_b) {
            bs.assign(spec.n, ctx->one());
        } else {
            for (size_t i = 0; i < spec.n; ++i) bs.push_back(ctx->sample_nonzero(rng));
        }
        return {ctx, FunctionalSet::operator_family(ctx, width, std::move(pts), std::move(bs)),
                std::move(w), seed};
    }

    std::vector<std::vector<std::optional<FieldElem>>> pts(spec.n);
    for (auto& row : pts) {
        row.assign(width, std::nullopt);
        const FieldElem p = ctx->sample(rng);
        // nonempty coordinate subset
        uint64_t mask = 0;
        while (mask == 0) mask = rng() & ((uint64_t(1) << width) - 1);
        for (size_t j = 0; j < width; ++j)
            if ((mask >> j) & 1) row[j] = p;
    }
    return {ctx, FunctionalSet::remainder_family(ctx, width, std::move(pts)), std::move(w), seed};
}

// ------------------------------------------------------------ serialization

inline Json elem_to_json(const FieldCtxPtr& F, const FieldElem& e) {
    return Json(F->digits(e));
}

inline FieldElem elem_from_json(const FieldCtxPtr& F, const Json& j) {
    if (!j.is_array()) throw Error("field element must be a digit array");
    Digits d;
    for (const auto& x : j) d.push_back(x.get<uint32_t>());
    return F->from_digits(d);
}

inline Json poly_to_json(const FieldCtxPtr& F, const SkewPoly& f) {
    Json out = Json::array();
    for (const auto& c : f.coeffs()) out.push_back(elem_to_json(F, c));
    return out;
}

inline SkewPoly poly_from_json(const FieldCtxPtr& F, const Json& j) {
    std::vector<FieldElem> coeffs;
    for (const auto& c : j) coeffs.push_back(elem_from_json(F, c));
    return SkewPoly::from_coeffs(F, std::move(coeffs));
}

inline Json ctx_to_json(const FieldCtxPtr& F) {
    Json out;
    out["p"] = F->p();
    out["m"] = F->m();
    out["modulus"] = F->modulus();
    out["aut_power"] = F->aut_power();
    out["gamma"] = F->digits(F->gamma());
    return out;
}

inline FieldCtxPtr ctx_from_json(const Json& j) {
    Digits mod;
    for (const auto& x : j.at("modulus")) mod.push_back(x.get<uint32_t>());
    Digits gamma;
    if (j.contains("gamma"))
        for (const auto& x : j.at("gamma")) gamma.push_back(x.get<uint32_t>());
    return FieldCtx::make(j.at("p").get<uint32_t>(), j.at("m").get<uint32_t>(), mod,
                          j.value("aut_power", 1u), gamma.empty() ? std::optional<Digits>{} : gamma);
}

inline Json instance_to_json(const Instance& inst) {
    const auto& F = inst.ctx;
    const auto& E = inst.functionals;
    Json out;
    out["field"] = ctx_to_json(F);
    out["s"] = E.s();
    out["n"] = E.n();
    out["family"] = E.family() == EvalFamily::Operator ? "operator" : "remainder";
    out["weights"] = inst.weights;
    Json pts = Json::array();
    for (size_t i = 0; i < E.n(); ++i) {
        Json entry;
        if (E.family() == EvalFamily::Operator) {
            entry["b"] = elem_to_json(F, E.bs()[i]);
            Json us = Json::array();
            for (const auto& u : E.operator_points()[i]) us.push_back(elem_to_json(F, u));
            entry["u"] = std::move(us);
        } else {
            Json ps = Json::array();
            for (const auto& cell : E.remainder_points()[i]) {
                if (cell)
                    ps.push_back(elem_to_json(F, *cell));
                else
                    ps.push_back(nullptr);
            }
            entry["p"] = std::move(ps);
        }
        pts.push_back(std::move(entry));
    }
    out["points"] = std::move(pts);
    if (inst.seed) out["seed"] = *inst.seed;
    return out;
}

inline Instance instance_from_json(const Json& j) {
    auto F = ctx_from_json(j.at("field"));
    const size_t s = j.at("s").get<size_t>();
    const size_t n = j.at("n").get<size_t>();
    const size_t width = s + 1;
    const std::string fam = j.at("family").get<std::string>();
    WeightVec w;
    for (const auto& x : j.at("weights")) {
        const int wi = x.get<int>();
        if (wi < 0) throw Error("weights must be non-negative");
        w.push_back(wi);
    }
    if (w.size() != width) throw LengthMismatchError("weights length must be s + 1");
    const Json& pts = j.at("points");
    if (pts.size() != n) throw LengthMismatchError("points length must be n");
    std::optional<uint64_t> seed;
    if (j.contains("seed")) seed = j.at("seed").get<uint64_t>();

    if (fam == "operator") {
        std::vector<std::vector<FieldElem>> us;
        std::vector<FieldElem> bs;
        for (const auto& entry : pts) {
            bs.push_back(elem_from_json(F, entry.at("b")));
            std::vector<FieldElem> row;
            for (const auto& u : entry.at("u")) row.push_back(elem_from_json(F, u));
            if (row.size() != width) throw DimensionMismatchError("point row width must be s + 1");
            us.push_back(std::move(row));
        }
        return {F, FunctionalSet::operator_family(F, width, std::move(us), std::move(bs)),
                std::move(w), seed};
    }
    if (fam != "remainder") throw Error("unknown functional family: " + fam);
    std::vector<std::vector<std::optional<FieldElem>>> ps;
    for (const auto& entry : pts) {
        std::vector<std::optional<FieldElem>> row;
        for (const auto& cell : entry.at("p")) {
            if (cell.is_null())
                row.push_back(std::nullopt);
            else
                row.push_back(elem_from_json(F, cell));
        }
        if (row.size() != width) throw DimensionMismatchError("point row width must be s + 1");
        ps.push_back(std::move(row));
    }
    return {F, FunctionalSet::remainder_family(F, width, std::move(ps)), std::move(w), seed};
}

inline Json basis_to_json(const FieldCtxPtr& F, const SkewMat& basis,
                          const std::vector<int>& wdegs, const SolveStats& stats,
                          const std::string& algorithm, bool include_timing) {
    Json out;
    Json rows = Json::array();
    for (const auto& row : basis) {
        Json r = Json::array();
        for (const auto& entry : row) r.push_back(poly_to_json(F, entry));
        rows.push_back(std::move(r));
    }
    out["rows"] = std::move(rows);
    out["degrees"] = wdegs;
    Json st;
    st["algorithm"] = algorithm;
    st["mult_count"] = stats.mul_count;
    st["add_count"] = stats.add_count;
    st["inv_count"] = stats.inv_count;
    st["sigma_count"] = stats.sigma_count;
    st["updates"] = stats.updates;
    st["accelerated"] = stats.accelerated;
    if (include_timing) st["wall_time_ns"] = stats.wall_ns;
    out["stats"] = std::move(st);
    return out;
}

}  // namespace skewlab

#endif
