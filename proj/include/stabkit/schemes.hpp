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
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabkit/approx8.hpp"
#include "stabkit/decompose.hpp"
#include "stabkit/geometry.hpp"
#include "stabkit/normalize.hpp"
#include "stabkit/oracle.hpp"
#include "stabkit/parallel.hpp"

namespace stabkit {

/// Shared node counter. A limit of 0 means unlimited. Counting is atomic and
/// monotone; concurrent over-counting can only trip the limit earlier.
class NodeBudget {
public:
    explicit NodeBudget(std::uint64_t limit = 0) : limit_(limit) {}

    void charge(std::uint64_t nodes = 1) {
        std::uint64_t now = used_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
        if (limit_ != 0 && now > limit_) {
            throw BudgetError("node budget of " + std::to_string(limit_) + " exhausted");
        }
    }

    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

/// Explicit knobs for desk-scale runs. Anything left empty is derived.
struct SchemeOverrides {
    std::optional<Scalar> mu;
    std::optional<std::size_t> klong;
    std::optional<std::size_t> oracle_limit;
    std::optional<std::uint64_t> node_budget;
};

struct SchemeParams {
    Scalar eps = Scalar(1, 2);
    Scalar delta = 1;
    Scalar mu = 0;
    int depth_bound = 0;  // H
    std::size_t klong = 0;
    std::size_t oracle_limit = kDefaultOracleLimit;
    std::uint64_t node_budget = 0;

    /// 1 + 17 (H + 1) mu: the guarantee of the recursive scheme for these
    /// parameters, before the thin-rect presolve.
    Scalar recursion_ratio() const { return Scalar(1) + Scalar(17) * Scalar(depth_bound + 1) * mu; }

    /// H = ceil(log2(n / eps)), mu = eps / (17 (H + 1)),
    /// Klong = ceil(2 (8 / mu^2 + 1 / mu)).
    static SchemeParams for_qptas(std::size_t n, const Scalar& eps, const SchemeOverrides& o = {}) {
        if (!(eps > 0 && eps < 1)) throw ParameterError("qptas requires 0 < eps < 1");
        SchemeParams p;
        p.eps = eps;
        p.depth_bound = n == 0 ? 0 : std::max(0, ceil_log2(Scalar(n) / eps));
        p.mu = o.mu ? *o.mu : eps / (Scalar(17) * Scalar(p.depth_bound + 1));
        if (!(p.mu > 0 && p.mu < 1)) throw ParameterError("mu must lie in (0, 1)");
        p.klong = o.klong ? *o.klong
                          : static_cast<std::size_t>(ceil_int(Scalar(2) * (Scalar(8) / (p.mu * p.mu) + 1 / p.mu)));
        if (p.klong == 0) throw ParameterError("klong must be positive");
        if (o.oracle_limit) p.oracle_limit = *o.oracle_limit;
        if (o.node_budget) p.node_budget = *o.node_budget;
        return p;
    }
};

/// Optimum among covers with at most k segments. Small instances go to the
/// subset-DP oracle; otherwise (or when the oracle's optimum needs more than k
/// segments) a depth-first branch and bound branches on the uncovered rect
/// with the fewest covering candidates. Throws BudgetError when the budget
/// runs out or no cover with at most k segments exists.
inline Solution solve_small(const Instance& inst, std::size_t k, NodeBudget& budget,
                            std::size_t oracle_limit = kDefaultOracleLimit) {
    if (k < 1) throw ParameterError("solve_small requires k >= 1");
    if (inst.empty()) return {};
    if (inst.size() <= oracle_limit) {
        Solution sol = exact_opt(inst, oracle_limit);
        budget.charge();
        if (sol.segments.size() <= k) return sol;
    }
    const std::size_t n = inst.size();
    auto cands = reduced_candidates(inst);
    std::vector<std::vector<std::size_t>> covering(n);
    for (std::size_t c = 0; c < cands.size(); ++c) {
        for (auto b = cands[c].stab_set.find_first(); b != StabSet::npos; b = cands[c].stab_set.find_next(b)) {
            covering[b].push_back(c);
        }
    }
    std::vector<Scalar> cheapest(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (covering[r].empty()) throw CorruptionError("rect without covering candidate");
        cheapest[r] = cands[covering[r].front()].length;  // candidates are sorted by length
    }

    std::optional<Scalar> best_cost;
    std::vector<std::size_t> best, chosen;
    StabSet covered(n);
    std::function<void(const Scalar&)> dfs = [&](const Scalar& cost) {
        budget.charge();
        if (covered.all()) {
            if (!best_cost || cost < *best_cost) {
                best_cost = cost;
                best = chosen;
            }
            return;
        }
        if (chosen.size() >= k) return;
        std::size_t pick = n;
        Scalar bound = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (covered[r]) continue;
            if (cheapest[r] > bound) bound = cheapest[r];
            if (pick == n || covering[r].size() < covering[pick].size()) pick = r;
        }
        if (best_cost && cost + bound >= *best_cost) return;
        for (auto c : covering[pick]) {
            StabSet saved = covered;
            covered |= cands[c].stab_set;
            chosen.push_back(c);
            dfs(cost + cands[c].length);
            chosen.pop_back();
            covered = std::move(saved);
        }
    };
    dfs(Scalar(0));
    if (!best_cost) {
        throw BudgetError("no cover with at most " + std::to_string(k) + " segments");
    }
    std::vector<Segment> segs;
    for (auto c : best) segs.push_back(cands[c].segment);
    return Solution::from(std::move(segs));
}

struct PtasOptions {
    std::size_t oracle_limit = kDefaultOracleLimit;
    std::uint64_t node_budget = 0;
};

struct PtasReport {
    Solution solution;
    Decomposition decomposition;
    std::size_t k = 0;                // segment cap per sub-instance
    std::vector<Scalar> chunk_costs;  // per sub-instance
    Scalar ratio_bound = 0;           // 1 + 17 eps
};

/// Bounded width-ratio scheme: decompose, then solve every sub-instance
/// optimally among covers of at most ceil((8/eps^2 + 1/eps)/delta) segments.
inline PtasReport ptas_report(const Instance& inst, const Scalar& eps, const Scalar& delta,
                              const PtasOptions& opts = {}) {
    detail::require_unit_eps(eps, "ptas");
    if (!(delta > 0 && delta <= 1)) throw ParameterError("ptas requires 0 < delta <= 1");
    PtasReport rep;
    rep.ratio_bound = Scalar(1) + Scalar(17) * eps;
    rep.k = static_cast<std::size_t>(ceil_int((Scalar(8) / (eps * eps) + 1 / eps) / delta));
    if (inst.empty()) return rep;
    if (inst.min_width() < delta * inst.max_width()) {
        throw ParameterError("width ratio exceeds 1/delta = " + to_string(1 / delta));
    }
    rep.decomposition = decompose(inst, eps);
    const auto& subs = rep.decomposition.sub_instances;
    NodeBudget budget(opts.node_budget);
    std::vector<Solution> parts(subs.size());
    parallel_for(subs.size(), [&](std::size_t i) { parts[i] = solve_small(subs[i], rep.k, budget, opts.oracle_limit); });
    rep.solution = Solution::from(rep.decomposition.paid_segments);
    for (const auto& p : parts) {
        rep.chunk_costs.push_back(p.cost);
        rep.solution.append(p);
    }
    return rep;
}

inline Solution ptas(const Instance& inst, const Scalar& eps, const Scalar& delta, const PtasOptions& opts = {}) {
    return ptas_report(inst, eps, delta, opts).solution;
}

struct Guess {
    std::vector<Segment> segments;
    Scalar cost = 0;
    StabSet stabbed;
};

/// Every subset of at most k of the given candidates, as index lists in
/// size-then-lexicographic order, including the empty one. Exponential; only
/// meant for small pools.
template <typename Fn>
void for_each_raw_guess(std::size_t pool, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> pick;
    for (std::size_t size = 0; size <= std::min(k, pool); ++size) {
        pick.resize(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            fn(static_cast<const std::vector<std::size_t>&>(pick));
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == pool - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Long candidates (length >= min_len) of the reduced candidate pool.
inline std::vector<Candidate> long_candidates(const Instance& inst, const Scalar& min_len) {
    std::vector<Candidate> out;
    for (auto& c : reduced_candidates(inst)) {
        if (c.length >= min_len) out.push_back(std::move(c));
    }
    return out;
}

/// Guesses of at most k long segments, one per distinct union of stab-sets,
/// each the cheapest guess with at most k segments reaching that union. The
/// empty guess comes first; the rest follow in order of first discovery when
/// guesses are grown one segment at a time.
inline std::vector<Guess> guess_long(const Instance& inst, const Scalar& min_len, std::size_t k,
                                     NodeBudget* budget = nullptr) {
    auto pool = long_candidates(inst, min_len);
    std::vector<Guess> out;
    out.push_back(Guess{{}, 0, StabSet(inst.size())});
    std::map<StabSet, std::size_t> where{{out.front().stabbed, 0}};
    // Cheapest guess with exactly `size` segments per union, grown level by level.
    std::vector<Guess> layer{out.front()};
    for (std::size_t size = 1; size <= k && !layer.empty(); ++size) {
        std::vector<Guess> next;
        std::map<StabSet, std::size_t> next_where;
        for (const auto& g : layer) {
            for (const auto& c : pool) {
                if (budget) budget->charge();
                StabSet u = g.stabbed | c.stab_set;
                if (u == g.stabbed) continue;
                Scalar cost = g.cost + c.length;
                auto it = next_where.find(u);
                if (it != next_where.end() && next[it->second].cost <= cost) continue;
                Guess grown{g.segments, cost, u};
                grown.segments.push_back(c.segment);
                if (it == next_where.end()) {
                    next_where.emplace(u, next.size());
                    next.push_back(std::move(grown));
                } else {
                    next[it->second] = std::move(grown);
                }
            }
        }
        for (const auto& g : next) {
            auto it = where.find(g.stabbed);
            if (it == where.end()) {
                where.emplace(g.stabbed, out.size());
                out.push_back(g);
            } else if (g.cost < out[it->second].cost) {
                out[it->second] = g;
            }
        }
        layer = std::move(next);
    }
    return out;
}

/// Thrown when the recursive scheme runs out of budget. Carries a feasible
/// but non-certified solution (the approx8 cover of the input).
class SchemeBudgetError : public BudgetError {
public:
    SchemeBudgetError(const std::string& what, Solution fallback)
        : BudgetError(what), fallback_(std::move(fallback)) {}
    const Solution& fallback() const { return fallback_; }

private:
    Solution fallback_;
};

struct QptasReport {
    Solution solution;
    SchemeParams params;
    Scalar presolved_cost = 0;        // thin rects stabbed during normalization
    Scalar paid_cost = 0;             // top-level decomposition segments
    std::vector<Scalar> chunk_costs;  // top-level chunk solutions
    int max_depth = 0;                // recursion levels used, top level counts as 1
    std::size_t max_guess_size = 0;
    std::size_t guess_violations = 0;  // guesses over klong or with a short segment
    std::size_t guesses_explored = 0;
    std::uint64_t nodes = 0;
    Scalar certified_ratio = 0;
};

namespace detail {

class QptasSolver {
public:
    QptasSolver(const SchemeParams& params, NodeBudget& budget, QptasReport& rep)
        : p_(params), budget_(budget), rep_(rep) {}

    struct Level {
        Solution solution;
        Decomposition decomposition;
        std::vector<Scalar> chunk_costs;
    };

    // One recursion level on `inst`; widths of `inst` are at most
    // top_width / 2^depth.
    Level run(const Instance& inst, int depth, const Scalar& top_width) {
        Level out;
        budget_.charge();
        if (inst.empty()) return out;
        rep_.max_depth = std::max(rep_.max_depth, depth + 1);
        out.decomposition = decompose(inst, p_.mu);
        out.solution = Solution::from(out.decomposition.paid_segments);
        const Scalar level_width = top_width / pow2(depth);
        for (const auto& chunk : out.decomposition.sub_instances) {
            Solution s = solve_chunk(chunk, depth, level_width, top_width);
            out.chunk_costs.push_back(s.cost);
            out.solution.append(s);
        }
        return out;
    }

private:
    Solution recurse(const Instance& inst, int depth, const Scalar& top_width) {
        std::vector<RectId> ids = inst.ids();
        std::sort(ids.begin(), ids.end());
        auto key = std::make_pair(depth, std::move(ids));
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Solution s = run(inst, depth, top_width).solution;
        memo_.emplace(std::move(key), s);
        return s;
    }

    Solution solve_chunk(const Instance& chunk, int depth, const Scalar& level_width, const Scalar& top_width) {
        if (chunk.size() <= p_.oracle_limit) {
            budget_.charge();
            return exact_opt(chunk, p_.oracle_limit);
        }
        const Scalar half = level_width / 2;
        auto guesses = guess_long(chunk, half, p_.klong, &budget_);
        std::optional<Solution> best;
        for (const auto& g : guesses) {
            ++rep_.guesses_explored;
            rep_.max_guess_size = std::max(rep_.max_guess_size, g.segments.size());
            bool ok = g.segments.size() <= p_.klong;
            for (const auto& s : g.segments) ok = ok && s.length() >= half;
            if (!ok) ++rep_.guess_violations;
            std::vector<std::size_t> rest;
            bool admissible = true;
            for (std::size_t i = 0; i < chunk.size(); ++i) {
                if (g.stabbed[i]) continue;
                if (chunk[i].width() >= half) {
                    admissible = false;
                    break;
                }
                rest.push_back(i);
            }
            if (!admissible) continue;
            Solution total = Solution::from(g.segments);
            total.append(recurse(chunk.subset(rest), depth + 1, top_width));
            if (!best || total.cost < best->cost) best = std::move(total);
        }
        if (!best) {
            throw BudgetError("no admissible guess with at most " + std::to_string(p_.klong) + " long segments");
        }
        return *best;
    }

    const SchemeParams& p_;
    NodeBudget& budget_;
    QptasReport& rep_;
    std::map<std::pair<int, std::vector<RectId>>, Solution> memo_;
};

}  // namespace detail

/// Recursive scheme for arbitrary width ratios. Normalizes (thin rects are
/// stabbed directly), decomposes with mu, and for every chunk tries each guess
/// of long segments (length >= half the level width), recursing on residuals
/// whose rects are all narrower than that.
inline QptasReport qptas_report(const Instance& inst, const Scalar& eps, const SchemeOverrides& overrides = {}) {
    QptasReport rep;
    rep.params = SchemeParams::for_qptas(inst.size(), eps, overrides);
    rep.certified_ratio = rep.params.recursion_ratio();
    if (inst.empty()) return rep;
    Normalized norm = normalize(inst, eps);
    NodeBudget budget(rep.params.node_budget);
    detail::QptasSolver::Level top;
    try {
        detail::QptasSolver solver(rep.params, budget, rep);
        top = solver.run(norm.instance, 0, Scalar(1));
    } catch (const BudgetError& e) {
        throw SchemeBudgetError(e.what(), approx8(inst));
    }
    rep.nodes = budget.used();
    const Scalar& scale = norm.transform.x_scale;
    for (const auto& [id, seg] : norm.transform.presolved) rep.presolved_cost += seg.length();
    rep.paid_cost = top.decomposition.paid_cost() / scale;
    for (const auto& c : top.chunk_costs) rep.chunk_costs.push_back(c / scale);
    rep.solution = denormalize(top.solution, norm.transform);
    if (!norm.presolved.empty()) rep.certified_ratio += eps;
    return rep;
}

inline Solution qptas(const Instance& inst, const Scalar& eps, const SchemeOverrides& overrides = {}) {
    return qptas_report(inst, eps, overrides).solution;
}

}  // namespace stabkit
