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

// skewlab-cli: instance interpolation, operation-count benchmarks, a rank
// metric decoding demo, and an embedded self test.
//
// Exit codes: 0 ok, 1 usage error, 2 malformed input, 3 invariant violation.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "skewlab/gabidulin.hpp"
#include "skewlab/instances.hpp"

namespace {

using namespace skewlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInvariant = 3;

// ------------------------------------------------------------- interpolate

int cmd_interpolate(const std::string& path, const std::string& algorithm, bool verify,
                    const std::string& out_path) {
    Json j;
    try {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot open instance file: " << path << "\n";
            return kExitBadInput;
        }
        in >> j;
    } catch (const std::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kExitBadInput;
    }

    Instance inst;
    try {
        inst = instance_from_json(j);
    } catch (const std::exception& e) {
        std::cerr << "error: invalid instance: " << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        SkewMat basis;
        std::vector<int> wdegs;
        SolveStats stats;
        if (algorithm == "baseline") {
            const OpCounters before = inst.ctx->counters();
            const auto t0 = std::chrono::steady_clock::now();
            auto res = knh_interpolate(inst.functionals, inst.weights);
            stats.wall_ns = uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                         std::chrono::steady_clock::now() - t0)
                                         .count());
            const OpCounters after = inst.ctx->counters();
            stats.mul_count = after.mul - before.mul;
            stats.add_count = after.add - before.add;
            stats.inv_count = after.inv - before.inv;
            stats.sigma_count = after.sigma - before.sigma;
            basis = std::move(res.basis);
            wdegs = std::move(res.wdegs);
            if (verify) {
                if (!is_wowpb(basis, inst.weights))
                    throw VerificationFailedError("baseline output is not in weak Popov form");
                for (size_t i = 0; i < inst.functionals.n(); ++i)
                    for (const auto& row : basis)
                        if (!inst.ctx->is_zero(inst.functionals.eval(i, row)))
                            throw VerificationFailedError("baseline row escapes a kernel");
            }
        } else {
            SolveOptions opts;
            opts.verify = verify;
            auto res = solve_interpolation(inst.functionals, inst.weights, opts);
            basis = std::move(res.basis);
            wdegs = std::move(res.wdegs);
            stats = res.stats;
        }

        Json out = basis_to_json(inst.ctx, basis, wdegs, stats, algorithm,
                                 /*include_timing=*/false);
        if (out_path.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            std::ofstream os(out_path);
            os << out.dump(2) << "\n";
        }
        std::cerr << "solved n=" << inst.functionals.n() << " s=" << inst.functionals.s()
                  << " in " << stats.wall_ns / 1000000.0 << " ms, " << stats.mul_count
                  << " mults\n";
        return kExitOk;
    } catch (const InternalInvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const VerificationFailedError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitInvariant;
    }
}

// ------------------------------------------------------------------- bench

struct GridPoint {
    std::string family;
    uint32_t p;
    uint32_t m;
    size_t s;
    size_t n;
};

struct BenchRun {
    GridPoint point;
    uint64_t seed;
    std::string algorithm;
    uint64_t mult_count = 0;
    uint64_t add_count = 0;
    uint64_t wall_ns = 0;
};

/// Grid DSL: semicolon-separated key=value with comma lists, e.g.
///   "s=2;n=128,256,512;p=2;m=auto;family=operator"
/// m=auto picks m = max(2, n/2), which keeps the degree growth of generic
/// instances alive through all n functionals.
bool parse_grid(const std::string& text, std::vector<GridPoint>& out, std::string& err) {
    if (text.empty()) return true;
    std::vector<size_t> ss = {2}, ns;
    std::vector<uint32_t> ps = {2};
    std::vector<std::string> families = {"operator"};
    std::vector<long> ms = {-1};  // -1 = auto

    std::stringstream whole(text);
    std::string clause;
    while (std::getline(whole, clause, ';')) {
        const auto eq = clause.find('=');
        if (eq == std::string::npos) {
            err = "grid clause missing '=': " + clause;
            return false;
        }
        const std::string key = clause.substr(0, eq);
        std::vector<std::string> vals;
        std::stringstream vs(clause.substr(eq + 1));
        std::string v;
        while (std::getline(vs, v, ',')) vals.push_back(v);
        if (vals.empty()) {
            err = "grid clause has no values: " + clause;
            return false;
        }
        try {
            if (key == "s") {
                ss.clear();
                for (const auto& x : vals) ss.push_back(std::stoul(x));
            } else if (key == "n") {
                ns.clear();
                for (const auto& x : vals) ns.push_back(std::stoul(x));
            } else if (key == "p") {
                ps.clear();
                for (const auto& x : vals) ps.push_back(uint32_t(std::stoul(x)));
            } else if (key == "m") {
                ms.clear();
                for (const auto& x : vals)
                    ms.push_back(x == "auto" ? -1 : long(std::stoul(x)));
            } else if (key == "family") {
                families = vals;
                for (const auto& f : families)
                    if (f != "operator" && f != "remainder") {
                        err = "unknown family: " + f;
                        return false;
                    }
            } else {
                err = "unknown grid key: " + key;
                return false;
            }
        } catch (const std::exception&) {
            err = "bad number in grid clause: " + clause;
            return false;
        }
    }
    if (ns.empty()) {
        err = "grid needs at least n=...";
        return false;
    }
    for (const auto& family : families)
        for (uint32_t p : ps)
            for (long m : ms)
                for (size_t s : ss)
                    for (size_t n : ns) {
                        const uint32_t mm =
                            m < 0 ? uint32_t(std::max<size_t>(2, n / 2)) : uint32_t(m);
                        out.push_back({family, p, mm, s, n});
                    }
    return true;
}

int cmd_bench(const std::string& grid_text, size_t seeds, const std::string& csv_path,
              bool no_timing, size_t jobs) {
    std::vector<GridPoint> grid;
    std::string err;
    if (!parse_grid(grid_text, grid, err)) {
        std::cerr << "error: " << err << "\n";
        return kExitUsage;
    }

    std::vector<BenchRun> runs;
    for (const auto& gp : grid)
        for (uint64_t seed = 0; seed < seeds; ++seed)
            for (const std::string& alg : {std::string("baseline"), std::string("fast")})
                runs.push_back({gp, seed, alg});

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= runs.size()) return;
            BenchRun& run = runs[idx];
            InstanceSpec spec;
            spec.p = run.point.p;
            spec.m = run.point.m;
            spec.s = run.point.s;
            spec.n = run.point.n;
            spec.family =
                run.point.family == "operator" ? EvalFamily::Operator : EvalFamily::Remainder;
            spec.uniform_b = true;
            spec.zero_weights = true;
            Instance inst = make_random_instance(spec, run.seed);  // per-run context/meter
            const OpCounters before = inst.ctx->counters();
            const auto t0 = std::chrono::steady_clock::now();
            if (run.algorithm == "baseline") {
                knh_interpolate(inst.functionals, inst.weights);
            } else {
                solve_interpolation(inst.functionals, inst.weights);
            }
            run.wall_ns = uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count());
            const OpCounters after = inst.ctx->counters();
            run.mult_count = after.mul - before.mul;
            run.add_count = after.add - before.add;
        }
    };
    const size_t nthreads =
        std::max<size_t>(1, std::min(jobs ? jobs : std::thread::hardware_concurrency(),
                                     std::max<size_t>(1, runs.size())));
    std::vector<std::thread> pool;
    for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!csv_path.empty()) {
        file.open(csv_path);
        if (!file) {
            std::cerr << "error: cannot open CSV output: " << csv_path << "\n";
            return kExitBadInput;
        }
        os = &file;
    }
    *os << "family,p,m,s,n,algorithm,mult_count,add_count,wall_time_ns,seed\n";
    for (const auto& run : runs) {
        *os << run.point.family << ',' << run.point.p << ',' << run.point.m << ','
            << run.point.s << ',' << run.point.n << ',' << run.algorithm << ','
            << run.mult_count << ',' << run.add_count << ','
            << (no_timing ? 0 : run.wall_ns) << ',' << run.seed << "\n";
    }
    return kExitOk;
}

// ------------------------------------------------------------------ decode

int cmd_decode(const std::string& code_spec, size_t errors, uint64_t seed) {
    uint32_t n = 0, k = 0, p = 0, m = 0;
    {
        std::stringstream ss(code_spec);
        std::string tok;
        std::vector<uint32_t> vals;
        while (std::getline(ss, tok, ',')) {
            try {
                vals.push_back(uint32_t(std::stoul(tok)));
            } catch (const std::exception&) {
                std::cerr << "error: bad --code value\n";
                return kExitUsage;
            }
        }
        if (vals.size() != 4) {
            std::cerr << "error: --code expects n,k,p,m\n";
            return kExitUsage;
        }
        n = vals[0];
        k = vals[1];
        p = vals[2];
        m = vals[3];
    }

    try {
        auto F = FieldCtx::make(p, m);
        auto code = GabidulinCode::make(F, n, k);
        std::mt19937_64 rng(seed ^ 0xC0DEC0DEull);
        SkewPoly f = code.random_message(rng);
        auto sent = code.encode(f);
        auto e = random_rank_error(F, n, errors, rng);
        std::vector<FieldElem> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = F->add(sent[i], e[i]);

        auto out = gabidulin_decode(code, r);
        const bool success = out.message && *out.message == f;

        std::cout << "code: [" << n << "," << k << "] over F_" << p << "^" << m
                  << " (radius " << code.radius() << ")\n";
        std::cout << "message: " << poly_to_json(F, f).dump() << "\n";
        std::cout << "error_rank: " << q_rank(F, e) << "\n";
        if (out.message) {
            std::cout << "decoded: " << poly_to_json(F, *out.message).dump() << "\n";
            std::cout << "residual_rank: " << out.residual_rank << "\n";
        } else {
            std::cout << "decoded: FAILURE\n";
        }
        std::cout << "success: " << (success ? "true" : "false") << "\n";
        return kExitOk;
    } catch (const RankInfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

// ---------------------------------------------------------------- selftest

int cmd_selftest() {
    size_t checks = 0;
    auto expect = [&](bool ok, const char* what) {
        ++checks;
        if (!ok) throw InternalInvariantError(what);
    };

    try {
        std::mt19937_64 rng(0xF00D);
        // field and ring axioms
        for (uint32_t p : {2u, 3u, 5u}) {
            auto F = FieldCtx::make(p, 4, std::nullopt, 1, Digits{1, 1});
            for (int t = 0; t < 200; ++t) {
                auto a = F->sample(rng), b = F->sample(rng), c = F->sample(rng);
                expect(F->mul(a, F->mul(b, c)) == F->mul(F->mul(a, b), c),
                       "field multiplication is not associative");
                expect(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)),
                       "field multiplication does not distribute");
                expect(F->delta(F->mul(a, b)) ==
                           F->add(F->mul(F->delta(a), b), F->mul(F->sigma(a), F->delta(b))),
                       "derivation violates the twisted Leibniz rule");
            }
            auto x = SkewPoly::x(F);
            for (int t = 0; t < 60; ++t) {
                std::vector<FieldElem> cf;
                for (int i = 0; i < 4; ++i) cf.push_back(F->sample(rng));
                auto f = SkewPoly::from_coeffs(F, cf);
                expect((f * x) * x == f * (x * x), "skew product is not associative");
                expect(mul_schoolbook(f, x) == f * x, "product paths disagree");
            }
        }
        // reduction invariance and solver agreement on a fixed seed set
        for (uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull, 6ull}) {
            InstanceSpec spec;
            spec.p = seed % 2 ? 2 : 3;
            spec.m = 3 + seed % 3;
            spec.s = 1 + seed % 2;
            spec.n = 6 + size_t(seed);
            spec.family = seed % 3 == 0 ? EvalFamily::Remainder : EvalFamily::Operator;
            spec.allow_derivation = true;
            spec.uniform_b = seed % 2 == 0;
            spec.zero_weights = false;
            auto inst = make_random_instance(spec, seed);
            const auto& E = inst.functionals;
            auto tree = build_minpoly_tree(E);
            for (int probe = 0; probe < 40; ++probe) {
                SkewVec Q;
                for (size_t j = 0; j < E.width(); ++j) {
                    std::vector<FieldElem> cf;
                    for (int i = 0; i < int(rng() % 5); ++i) cf.push_back(inst.ctx->sample(rng));
                    Q.push_back(SkewPoly::from_coeffs(inst.ctx, std::move(cf)));
                }
                const auto& M = tree.at(0, E.n() - 1);
                auto Qr = vec_mod_r(Q, M);
                for (size_t l = 0; l < E.n(); ++l) {
                    expect(E.eval(l, Q) == E.eval(l, Qr), "reduction changed a functional");
                    ++checks;
                }
            }
            auto base = knh_interpolate(E, inst.weights);
            auto fast = solve_interpolation(E, inst.weights);
            expect(base.basis == fast.basis, "fast solver disagrees with the baseline");
            expect(base.wdegs == fast.wdegs, "degree trackers disagree");
            expect(is_wowpb(base.basis, inst.weights), "output basis not in weak Popov form");
        }
        // decoding round trip
        {
            auto F = FieldCtx::make(2, 8);
            auto code = GabidulinCode::make(F, 8, 4);
            for (int t = 0; t < 10; ++t) {
                auto f = code.random_message(rng);
                auto e = random_rank_error(F, 8, t % 3, rng);
                std::vector<FieldElem> r(8);
                auto sent = code.encode(f);
                for (size_t i = 0; i < 8; ++i) r[i] = F->add(sent[i], e[i]);
                auto out = gabidulin_decode(code, r);
                expect(out.message.has_value() && *out.message == f, "decode round trip failed");
            }
        }
        std::cout << "selftest: " << checks << " checks passed\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "selftest failed after " << checks << " checks: " << e.what() << "\n";
        return kExitInvariant;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skew polynomial interpolation toolkit"};
    app.require_subcommand(1);

    std::string inst_path, algorithm = "fast", out_path;
    bool verify = false;
    auto* interp = app.add_subcommand("interpolate", "solve an interpolation instance file");
    interp->add_option("instance", inst_path, "instance JSON path")->required();
    interp->add_option("--algorithm", algorithm, "baseline|fast")
        ->check(CLI::IsMember({"baseline", "fast"}));
    interp->add_flag("--verify", verify, "re-check the output basis");
    interp->add_option("--out", out_path, "write the basis JSON here (default stdout)");

    std::string grid;
    size_t seeds = 1, jobs = 0;
    std::string csv_path;
    bool no_timing = false;
    auto* bench = app.add_subcommand("bench", "operation-count benchmark over a parameter grid");
    bench->add_option("--grid", grid, "e.g. s=2;n=128,256,512;p=2;m=auto;family=operator");
    bench->add_option("--seeds", seeds, "seeds 0..k-1 per grid point");
    bench->add_option("--csv", csv_path, "CSV output path (default stdout)");
    bench->add_flag("--no-timing", no_timing, "report wall_time_ns as 0 for reproducible output");
    bench->add_option("--jobs", jobs, "worker threads (default: hardware)");

    std::string code_spec = "8,4,2,8";
    size_t errors = 0;
    uint64_t seed = 0;
    auto* decode = app.add_subcommand("decode", "rank-metric decoding demo");
    decode->add_option("--code", code_spec, "n,k,p,m");
    decode->add_option("--errors", errors, "error rank to inject");
    decode->add_option("--seed", seed, "RNG seed");

    auto* selftest = app.add_subcommand("selftest", "run the embedded invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (interp->parsed()) return cmd_interpolate(inst_path, algorithm, verify, out_path);
    if (bench->parsed()) return cmd_bench(grid, seeds, csv_path, no_timing, jobs);
    if (decode->parsed()) return cmd_decode(code_spec, errors, seed);
    if (selftest->parsed()) return cmd_selftest();
    return kExitUsage;
}
