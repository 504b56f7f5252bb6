// Copyright 2026 The stabkit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stabkit/approx8.hpp"
#include "stabkit/gen.hpp"
#include "stabkit/io.hpp"
#include "stabkit/laminar.hpp"
#include "stabkit/oracle.hpp"
#include "stabkit/parallel.hpp"
#include "stabkit/schemes.hpp"

namespace stabkit {

inline const std::vector<std::string>& known_algos() {
    static const std::vector<std::string> algos{"exact", "greedy", "laminar-dp", "approx8", "ptas", "qptas"};
    return algos;
}

struct GeneratorSpec {
    std::string kind = "uniform";  // uniform | laminar | bounded
    std::size_t n = 0;
    std::vector<std::uint64_t> seeds;
    Scalar delta = Scalar(1, 2);  // bounded only
};

struct BenchSuite {
    std::vector<GeneratorSpec> generators;
    std::vector<std::string> algos;
    std::vector<Scalar> eps{Scalar(1, 2)};
    /// PTAS width-ratio parameters; empty means use each instance's own
    /// min/max width ratio.
    std::vector<Scalar> delta;
    std::size_t oracle_limit = 12;
    SchemeOverrides qptas;
};

struct BenchRow {
    std::string instance_id;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string algo;
    std::string params;
    Scalar cost = 0;
    std::optional<Scalar> opt;
    std::optional<Scalar> ratio;
    Scalar bound = 0;  // declared ratio bound for this run
    bool feasible = false;
    bool within_bound = true;
    double millis = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    bool all_ok() const {
        return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.feasible && r.within_bound; });
    }

    std::string csv() const {
        std::ostringstream out;
        out << "instance_id,n,seed,algo,params,cost,opt,ratio,feasible,millis\n";
        for (const auto& r : rows) {
            out << r.instance_id << ',' << r.n << ',' << r.seed << ',' << r.algo << ',' << r.params << ','
                << to_string(r.cost) << ',' << (r.opt ? to_string(*r.opt) : "") << ','
                << (r.ratio ? to_decimal(*r.ratio) : "") << ',' << (r.feasible ? "true" : "false") << ','
                << static_cast<std::int64_t>(r.millis) << '\n';
        }
        return out.str();
    }

    std::string markdown() const {
        struct Agg {
            std::size_t runs = 0, rated = 0, feasible = 0, within = 0;
            Scalar sum = 0, max = 0;
        };
        std::vector<std::string> order;
        std::map<std::string, Agg> agg;
        for (const auto& r : rows) {
            if (!agg.count(r.algo)) order.push_back(r.algo);
            Agg& a = agg[r.algo];
            ++a.runs;
            a.feasible += r.feasible;
            a.within += r.within_bound;
            if (r.ratio) {
                ++a.rated;
                a.sum += *r.ratio;
                if (*r.ratio > a.max) a.max = *r.ratio;
            }
        }
        std::ostringstream out;
        out << "| algo | runs | feasible | within bound | mean ratio | max ratio |\n";
        out << "|---|---|---|---|---|---|\n";
        for (const auto& name : order) {
            const Agg& a = agg[name];
            out << "| " << name << " | " << a.runs << " | " << a.feasible << " | " << a.within << " | "
                << (a.rated ? to_decimal(a.sum / Scalar(a.rated)) : "-") << " | "
                << (a.rated ? to_decimal(a.max) : "-") << " |\n";
        }
        return out.str();
    }
};

/// H_n = 1 + 1/2 + ... + 1/n, the greedy set-cover ratio (at most 1 + ln n).
inline Scalar harmonic(std::size_t n) {
    Scalar h = 0;
    for (std::size_t i = 1; i <= n; ++i) h += Scalar(1, static_cast<long long>(i));
    return h;
}

inline Instance generate(const GeneratorSpec& g, std::uint64_t seed) {
    if (g.kind == "uniform") return gen_uniform(g.n, seed);
    if (g.kind == "laminar") return gen_laminar(g.n, seed);
    if (g.kind == "bounded") return gen_bounded_ratio(g.n, g.delta, seed);
    throw ParameterError("unknown generator kind '" + g.kind + "'");
}

namespace detail {

struct BenchJob {
    std::size_t instance;
    std::string algo;
    Scalar eps, delta;
    std::string params;
};

struct AlgoRun {
    Solution solution;
    Scalar bound;  // declared approximation ratio
};

inline AlgoRun run_algo(const Instance& inst, const BenchJob& job, const BenchSuite& suite) {
    if (job.algo == "exact") return {exact_opt(inst, kDefaultOracleLimit), 1};
    if (job.algo == "greedy") return {greedy_cover(inst), harmonic(inst.size())};
    if (job.algo == "laminar-dp") return {solve_laminar(inst), 1};
    if (job.algo == "approx8") return {approx8(inst), 8};
    if (job.algo == "ptas") {
        PtasOptions o;
        auto rep = ptas_report(inst, job.eps, job.delta, o);
        return {rep.solution, rep.ratio_bound};
    }
    if (job.algo == "qptas") {
        auto rep = qptas_report(inst, job.eps, suite.qptas);
        return {rep.solution, rep.certified_ratio};
    }
    throw ParameterError("unknown algo '" + job.algo + "'");
}

}  // namespace detail

/// Runs every (instance, algo, parameter) combination, verifies each output
/// and compares it with the exact optimum when the instance is small enough.
/// Throws CorruptionError on any infeasible output.
inline BenchReport run_bench(const BenchSuite& suite) {
    for (const auto& a : suite.algos) {
        if (std::find(known_algos().begin(), known_algos().end(), a) == known_algos().end()) {
            throw ParameterError("unknown algo '" + a + "'");
        }
    }
    struct Inst {
        std::string id;
        std::uint64_t seed;
        Instance inst;
    };
    std::vector<Inst> instances;
    for (const auto& g : suite.generators) {
        for (auto seed : g.seeds) {
            instances.push_back(
                Inst{g.kind + "-n" + std::to_string(g.n) + "-s" + std::to_string(seed), seed, generate(g, seed)});
        }
    }
    std::vector<detail::BenchJob> jobs;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const auto& algo : suite.algos) {
            if (algo == "ptas") {
                std::vector<Scalar> deltas = suite.delta;
                if (deltas.empty()) {
                    const Instance& in = instances[i].inst;
                    deltas.push_back(in.empty() ? Scalar(1) : in.min_width() / in.max_width());
                }
                for (const auto& e : suite.eps) {
                    for (const auto& d : deltas) {
                        jobs.push_back({i, algo, e, d, "eps=" + to_string(e) + ";delta=" + to_string(d)});
                    }
                }
            } else if (algo == "qptas") {
                for (const auto& e : suite.eps) jobs.push_back({i, algo, e, 1, "eps=" + to_string(e)});
            } else {
                jobs.push_back({i, algo, 0, 0, ""});
            }
        }
    }
    std::vector<std::optional<Scalar>> opts(instances.size());
    parallel_for(instances.size(), [&](std::size_t i) {
        if (instances[i].inst.size() <= suite.oracle_limit) opts[i] = exact_opt(instances[i].inst, suite.oracle_limit).cost;
    });

    BenchReport report;
    report.rows.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t j) {
        const auto& job = jobs[j];
        const Inst& in = instances[job.instance];
        auto start = std::chrono::steady_clock::now();
        detail::AlgoRun run = detail::run_algo(in.inst, job, suite);
        auto stop = std::chrono::steady_clock::now();
        BenchRow& row = report.rows[j];
        row.instance_id = in.id;
        row.n = in.inst.size();
        row.seed = in.seed;
        row.algo = job.algo;
        row.params = job.params;
        row.cost = run.solution.cost;
        row.bound = run.bound;
        row.feasible = verify(in.inst, run.solution).feasible;
        row.millis = std::chrono::duration<double, std::milli>(stop - start).count();
        row.opt = opts[job.instance];
        if (row.opt) {
            row.ratio = *row.opt == 0 ? Scalar(1) : row.cost / *row.opt;
            row.within_bound = row.cost <= row.bound * *row.opt;
        }
    });
    for (const auto& row : report.rows) {
        if (!row.feasible) {
            throw CorruptionError("infeasible output from " + row.algo + " on " + row.instance_id);
        }
    }
    return report;
}

inline BenchSuite bench_suite_from_json(const Json& j) {
    BenchSuite s;
    try {
        for (const auto& g : j.at("generators")) {
            GeneratorSpec spec;
            spec.kind = g.at("kind").get<std::string>();
            spec.n = g.at("n").get<std::size_t>();
            if (g.contains("seeds")) {
                spec.seeds = g["seeds"].get<std::vector<std::uint64_t>>();
            } else {
                auto count = g.value("seed_count", std::uint64_t{1});
                for (std::uint64_t k = 1; k <= count; ++k) spec.seeds.push_back(k);
            }
            if (g.contains("delta")) spec.delta = scalar_from_json(g["delta"]);
            s.generators.push_back(std::move(spec));
        }
        s.algos = j.at("algos").get<std::vector<std::string>>();
        if (j.contains("eps")) {
            s.eps.clear();
            for (const auto& e : j["eps"]) s.eps.push_back(scalar_from_json(e));
        }
        if (j.contains("delta")) {
            for (const auto& d : j["delta"]) s.delta.push_back(scalar_from_json(d));
        }
        s.oracle_limit = j.value("oracle_limit", s.oracle_limit);
        if (j.contains("qptas")) {
            const auto& q = j["qptas"];
            if (q.contains("mu")) s.qptas.mu = scalar_from_json(q["mu"]);
            if (q.contains("klong")) s.qptas.klong = q["klong"].get<std::size_t>();
            if (q.contains("oracle_limit")) s.qptas.oracle_limit = q["oracle_limit"].get<std::size_t>();
            if (q.contains("node_budget")) s.qptas.node_budget = q["node_budget"].get<std::uint64_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("bench suite: ") + e.what());
    }
    return s;
}

}  // namespace stabkit
