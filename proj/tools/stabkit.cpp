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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "stabkit/stabkit.hpp"

namespace {

using namespace stabkit;

enum ExitCode : int { kOk = 0, kInfeasible = 1, kParameter = 2, kBudget = 3 };

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
    } else {
        write_text_file(path, text + "\n");
    }
}

std::optional<Scalar> opt_scalar(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_scalar(s);
}

struct SolveArgs {
    std::string algo = "approx8";
    std::string input, output;
    std::string eps = "1/2", delta, mu;
    std::optional<std::size_t> klong, oracle_limit;
    std::optional<std::uint64_t> node_budget;
    bool shrink = false;
};

int run_solve(const SolveArgs& a) {
    Instance inst = instance_from_json(read_json_file(a.input));
    Scalar eps = parse_scalar(a.eps);
    Solution sol;
    Json extra = Json::object();
    std::size_t limit = a.oracle_limit.value_or(kDefaultOracleLimit);
    try {
        if (a.algo == "exact") {
            sol = exact_opt(inst, limit);
        } else if (a.algo == "greedy") {
            sol = greedy_cover(inst);
        } else if (a.algo == "laminar-dp") {
            sol = solve_laminar(inst);
        } else if (a.algo == "approx8") {
            sol = approx8(inst);
        } else if (a.algo == "ptas") {
            Scalar delta = a.delta.empty() ? (inst.empty() ? Scalar(1) : inst.min_width() / inst.max_width())
                                           : parse_scalar(a.delta);
            PtasOptions o;
            o.oracle_limit = limit;
            o.node_budget = a.node_budget.value_or(0);
            auto rep = ptas_report(inst, eps, delta, o);
            sol = rep.solution;
            extra["eps"] = to_string(eps);
            extra["delta"] = to_string(delta);
            extra["ratio_bound"] = to_string(rep.ratio_bound);
        } else if (a.algo == "qptas") {
            SchemeOverrides o;
            o.mu = opt_scalar(a.mu);
            o.klong = a.klong;
            o.oracle_limit = a.oracle_limit;
            o.node_budget = a.node_budget;
            auto rep = qptas_report(inst, eps, o);
            sol = rep.solution;
            extra["eps"] = to_string(eps);
            extra["mu"] = to_string(rep.params.mu);
            extra["klong"] = rep.params.klong;
            extra["depth"] = rep.max_depth;
            extra["ratio_bound"] = to_string(rep.certified_ratio);
        } else {
            throw ParameterError("unknown algo '" + a.algo + "'");
        }
    } catch (const SchemeBudgetError& e) {
        Json out = solution_to_json(e.fallback());
        out["algo"] = a.algo;
        out["certified"] = false;
        out["error"] = e.what();
        emit(a.output, out.dump(2));
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kBudget;
    }
    if (a.shrink) sol = shrink_solution(inst, sol);
    if (!verify(inst, sol).feasible) {
        std::cerr << "internal error: " << a.algo << " produced an infeasible solution\n";
        return kInfeasible;
    }
    Json out = solution_to_json(sol);
    out["algo"] = a.algo;
    out["certified"] = true;
    for (auto& [k, v] : extra.items()) out[k] = v;
    emit(a.output, out.dump(2));
    return kOk;
}

int run_verify(const std::string& input, const std::string& solution) {
    Instance inst = instance_from_json(read_json_file(input));
    Json sj = read_json_file(solution);
    Solution sol = solution_from_json(sj);
    VerifyReport rep = verify(inst, sol);
    Json out = verify_report_to_json(rep);
    bool cost_ok = true;
    if (sj.contains("cost")) {
        cost_ok = scalar_from_json(sj["cost"]) == rep.recomputed_cost;
        out["declared_cost_matches"] = cost_ok;
    }
    std::cout << out.dump(2) << '\n';
    return rep.feasible && cost_ok ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabkit: stab axis-parallel rectangles with horizontal segments of minimum total length"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
    solve_cmd->add_option("--algo", solve.algo, "exact|greedy|laminar-dp|approx8|ptas|qptas")
        ->check(CLI::IsMember(known_algos()));
    solve_cmd->add_option("-i,--input", solve.input, "Instance JSON")->required();
    solve_cmd->add_option("-o,--output", solve.output, "Solution JSON (default stdout)");
    solve_cmd->add_option("--eps", solve.eps, "Accuracy for ptas/qptas, p/q");
    solve_cmd->add_option("--delta", solve.delta, "Minimum width ratio for ptas (default: the instance's)");
    solve_cmd->add_option("--mu", solve.mu, "qptas: inner decomposition parameter");
    solve_cmd->add_option("--klong", solve.klong, "qptas: max long segments per guess");
    solve_cmd->add_option("--oracle-limit", solve.oracle_limit, "Largest instance handed to the exact oracle");
    solve_cmd->add_option("--node-budget", solve.node_budget, "Search node cap (0 = none)");
    solve_cmd->add_flag("--shrink", solve.shrink, "Shrink segments to the hull of what they stab");

    std::string v_input, v_solution;
    auto* verify_cmd = app.add_subcommand("verify", "Check a solution against an instance");
    verify_cmd->add_option("-i,--input", v_input, "Instance JSON")->required();
    verify_cmd->add_option("-s,--solution", v_solution, "Solution JSON")->required();

    std::string d_input, d_output, d_eps = "1/2";
    auto* decompose_cmd = app.add_subcommand("decompose", "Print the strip/cut decomposition");
    decompose_cmd->add_option("-i,--input", d_input, "Instance JSON")->required();
    decompose_cmd->add_option("--eps", d_eps, "Decomposition parameter, p/q");
    decompose_cmd->add_option("-o,--output", d_output, "Output JSON (default stdout)");

    std::string g_kind = "uniform", g_output, g_delta = "1/2";
    std::size_t g_n = 10;
    std::uint64_t g_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded instance");
    gen_cmd->add_option("--kind", g_kind, "uniform|laminar|bounded")
        ->check(CLI::IsMember({"uniform", "laminar", "bounded"}));
    gen_cmd->add_option("--n", g_n, "Number of rects");
    gen_cmd->add_option("--seed", g_seed, "Seed");
    gen_cmd->add_option("--delta", g_delta, "Minimum width for --kind bounded");
    gen_cmd->add_option("-o,--output", g_output, "Output JSON (default stdout)");

    std::string b_config, b_output, b_markdown;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
    bench_cmd->add_option("-c,--config", b_config, "Suite JSON")->required();
    bench_cmd->add_option("-o,--output", b_output, "CSV report (default stdout)");
    bench_cmd->add_option("--markdown", b_markdown, "Markdown summary file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParameter;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*verify_cmd) return run_verify(v_input, v_solution);
        if (*decompose_cmd) {
            Instance inst = instance_from_json(read_json_file(d_input));
            emit(d_output, decomposition_to_json(decompose(inst, parse_scalar(d_eps))).dump(2));
            return kOk;
        }
        if (*gen_cmd) {
            GeneratorSpec spec{g_kind, g_n, {}, parse_scalar(g_delta)};
            emit(g_output, instance_to_json(generate(spec, g_seed)).dump(2));
            return kOk;
        }
        if (*bench_cmd) {
            BenchReport rep = run_bench(bench_suite_from_json(read_json_file(b_config)));
            if (b_output.empty()) {
                std::cout << rep.csv();
            } else {
                write_text_file(b_output, rep.csv());
            }
            if (b_markdown.empty()) {
                std::cout << rep.markdown();
            } else {
                write_text_file(b_markdown, rep.markdown());
            }
            return rep.all_ok() ? kOk : kInfeasible;
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const CorruptionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParameter;
    }
    return kOk;
}
