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


#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace stabkit;
using namespace stabkit::testing;

TEST(SchemeParams, DerivedValues) {
    SchemeParams p = SchemeParams::for_qptas(8, q(1, 2));
    EXPECT_EQ(p.depth_bound, 4);  // log2(16)
    EXPECT_EQ(p.mu, q(1, 170));
    EXPECT_EQ(p.klong, 2u * (8u * 170u * 170u + 170u));
    EXPECT_EQ(p.recursion_ratio(), q(3, 2));
    SchemeOverrides o;
    o.mu = q(1, 4);
    o.klong = 3;
    SchemeParams r = SchemeParams::for_qptas(8, q(1, 2), o);
    EXPECT_EQ(r.mu, q(1, 4));
    EXPECT_EQ(r.klong, 3u);
    EXPECT_EQ(r.recursion_ratio(), 1 + 17 * 5 * q(1, 4));
    EXPECT_THROW(SchemeParams::for_qptas(8, 1), ParameterError);
}

TEST(NodeBudgetTest, ThrowsPastLimit) {
    NodeBudget b(3);
    b.charge(3);
    EXPECT_THROW(b.charge(), BudgetError);
    NodeBudget unlimited;
    unlimited.charge(1000000);
    EXPECT_EQ(unlimited.used(), 1000000u);
}

TEST(SolveSmall, I1) {
    NodeBudget b;
    EXPECT_EQ(solve_small(i1(), 2, b).cost, 6);
    // [0,7]x2 stabs all three rects on its own
    Solution one = solve_small(i1(), 1, b);
    ASSERT_EQ(one.segments.size(), 1u);
    EXPECT_EQ(one.segments[0], seg(0, 7, 2));
    // branch and bound gives the same answers
    EXPECT_EQ(solve_small(i1(), 2, b, 0).cost, 6);
    EXPECT_EQ(solve_small(i1(), 1, b, 0).cost, 7);
}

TEST(SolveSmall, NoCoverWithinCap) {
    NodeBudget b;
    Instance apart({rect(1, 0, 1, 0, 1), rect(2, 0, 1, 5, 6)});
    EXPECT_THROW(solve_small(apart, 1, b), BudgetError);
    EXPECT_THROW(solve_small(apart, 1, b, 0), BudgetError);
    EXPECT_EQ(solve_small(apart, 2, b, 0).cost, 2);
}

TEST(SolveSmall, SingleRect) {
    NodeBudget b;
    Solution s = solve_small(Instance({rect(1, 2, 5, 1, 3)}), 1, b, 0);
    ASSERT_EQ(s.segments.size(), 1u);
    EXPECT_EQ(s.segments[0].xl, 2);
    EXPECT_EQ(s.segments[0].xr, 5);
}

TEST(SolveSmall, BranchAndBoundMatchesOracle) {
    SplitMix64 rng(61);
    for (int it = 0; it < 80; ++it) {
        Instance inst = random_instance(rng, 1 + static_cast<std::size_t>(rng.uniform(0, 7)));
        Solution opt = exact_opt(inst);
        NodeBudget b;
        Solution bb = solve_small(inst, inst.size(), b, 0);
        EXPECT_EQ(bb.cost, opt.cost);
        EXPECT_TRUE(feasible(inst, bb));
        // with a cap equal to the optimum's size the optimum is still reachable
        Solution capped = solve_small(inst, opt.segments.size(), b, 0);
        EXPECT_EQ(capped.cost, opt.cost);
        EXPECT_LE(capped.segments.size(), opt.segments.size());
    }
}

TEST(SolveSmall, BudgetExhaustion) {
    NodeBudget b(2);
    EXPECT_THROW(solve_small(gen_uniform(9, 4), 9, b, 0), BudgetError);
}

TEST(Ptas, I1) {
    PtasReport rep = ptas_report(i1(), q(1, 2), q(1, 2));
    EXPECT_EQ(rep.k, 68u);  // (32 + 2) / (1/2)
    EXPECT_EQ(rep.ratio_bound, q(19, 2));
    EXPECT_TRUE(feasible(i1(), rep.solution));
    EXPECT_EQ(rep.solution.cost, 6);
}

TEST(Ptas, WidthRatioAndEmpty) {
    EXPECT_THROW(ptas(i1(), q(1, 2), q(3, 4)), ParameterError);
    EXPECT_THROW(ptas(i1(), 0, q(1, 2)), ParameterError);
    EXPECT_EQ(ptas(Instance(), q(1, 2), q(1, 2)).cost, 0);
}

TEST(Ptas, WithinBoundOnBoundedRatio) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Instance inst = gen_bounded_ratio(1 + seed % 8, q(1, 2), seed);
        PtasReport rep = ptas_report(inst, q(1, 2), q(1, 2), PtasOptions{0, 0});
        EXPECT_TRUE(feasible(inst, rep.solution));
        Scalar opt = exact_opt(inst).cost;
        EXPECT_LE(rep.solution.cost, rep.ratio_bound * opt);
        // chunks are solved exactly
        for (std::size_t i = 0; i < rep.chunk_costs.size(); ++i) {
            EXPECT_EQ(rep.chunk_costs[i], exact_opt(rep.decomposition.sub_instances[i]).cost);
        }
        Scalar sum = rep.decomposition.paid_cost();
        for (const auto& c : rep.chunk_costs) sum += c;
        EXPECT_EQ(sum, rep.solution.cost);
    }
}

TEST(GuessLong, RawCount) {
    std::size_t count = 0;
    for_each_raw_guess(3, 2, [&](const std::vector<std::size_t>&) { ++count; });
    EXPECT_EQ(count, 7u);
    std::set<std::vector<std::size_t>> seen;
    for_each_raw_guess(5, 3, [&](const std::vector<std::size_t>& g) { seen.insert(g); });
    EXPECT_EQ(seen.size(), 1u + 5u + 10u + 10u);
}

TEST(GuessLong, NoLongCandidates) {
    auto gs = guess_long(i1(), 100, 3);
    ASSERT_EQ(gs.size(), 1u);
    EXPECT_TRUE(gs[0].segments.empty());
}

TEST(GuessLong, I1ContainsOptimalPair) {
    auto gs = guess_long(i1(), 2, 2);
    EXPECT_TRUE(gs.front().segments.empty());
    bool found = false;
    for (const auto& g : gs) {
        EXPECT_LE(g.segments.size(), 2u);
        for (const auto& s : g.segments) EXPECT_GE(s.length(), 2);
        if (g.stabbed.count() == 3 && g.cost == 6) {
            found = true;
            ASSERT_EQ(g.segments.size(), 2u);
            auto segs = g.segments;
            std::sort(segs.begin(), segs.end());
            EXPECT_EQ(segs[0], seg(0, 4, 2));
            EXPECT_EQ(segs[1].xl, 5);
            EXPECT_EQ(segs[1].xr, 7);
        }
    }
    EXPECT_TRUE(found);
}

TEST(GuessLong, DedupKeepsCheapestPerUnion) {
    SplitMix64 rng(67);
    for (int it = 0; it < 30; ++it) {
        Instance inst = random_instance(rng, 1 + static_cast<std::size_t>(rng.uniform(0, 4)), 8, 4);
        const Scalar min_len = 2;
        const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
        auto pool = long_candidates(inst, min_len);
        std::map<StabSet, Scalar> cheapest;
        for_each_raw_guess(pool.size(), k, [&](const std::vector<std::size_t>& pick) {
            StabSet u(inst.size());
            Scalar cost = 0;
            for (auto i : pick) {
                u |= pool[i].stab_set;
                cost += pool[i].length;
            }
            auto [pos, fresh] = cheapest.emplace(u, cost);
            if (!fresh && cost < pos->second) pos->second = cost;
        });
        auto gs = guess_long(inst, min_len, k);
        ASSERT_EQ(gs.size(), cheapest.size());
        for (const auto& g : gs) {
            EXPECT_EQ(g.cost, cheapest.at(g.stabbed));
            EXPECT_LE(g.segments.size(), k);
            StabSet u(inst.size());
            for (const auto& sg : g.segments) u |= stab_set_of(inst, sg);
            EXPECT_EQ(u, g.stabbed);
        }
    }
}

TEST(Qptas, I1OracleBaseCase) {
    QptasReport rep = qptas_report(i1(), q(1, 2));
    EXPECT_TRUE(feasible(i1(), rep.solution));
    EXPECT_EQ(rep.solution.cost, 6);
    EXPECT_EQ(rep.max_depth, 1);
    EXPECT_EQ(rep.certified_ratio, q(3, 2));
}

TEST(Qptas, Empty) {
    QptasReport rep = qptas_report(Instance(), q(1, 2));
    EXPECT_EQ(rep.solution.cost, 0);
    EXPECT_EQ(rep.max_depth, 0);
}

TEST(Qptas, OneGuessCoversAtDepthOne) {
    // equal widths: nothing is presolved, the strip grid misses, and one long
    // segment stabs every rect
    Instance inst({rect(1, 0, 2, 0, 3), rect(2, 0, 2, 1, 4), rect(3, 0, 2, 2, 6)});
    SchemeOverrides o;
    o.oracle_limit = 0;
    QptasReport rep = qptas_report(inst, q(1, 2), o);
    EXPECT_EQ(rep.solution.cost, 2);
    EXPECT_EQ(rep.max_depth, 1);
    EXPECT_EQ(rep.paid_cost, 0);
    EXPECT_EQ(rep.guess_violations, 0u);
}

TEST(Qptas, RecursiveRunsWithinCertifiedBound) {
    int deeper = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const std::size_t n = 1 + seed % 8;
        Instance inst = gen_uniform(n, seed);
        SchemeOverrides o;
        o.oracle_limit = 0;
        o.klong = 8;
        const Scalar eps = q(1, 2);
        QptasReport rep = qptas_report(inst, eps, o);
        EXPECT_TRUE(feasible(inst, rep.solution));
        Scalar opt = exact_opt(inst).cost;
        EXPECT_LE(rep.solution.cost, rep.certified_ratio * opt) << "seed " << seed;
        if (rep.presolved_cost == 0) {
            EXPECT_LE(rep.solution.cost, (1 + eps) * opt) << "seed " << seed;
        }
        EXPECT_LE(rep.max_depth, ceil_log2(Scalar(n) / eps) + 1);
        EXPECT_EQ(rep.guess_violations, 0u);
        EXPECT_LE(rep.max_guess_size, rep.params.klong);
        Scalar sum = rep.presolved_cost + rep.paid_cost;
        for (const auto& c : rep.chunk_costs) sum += c;
        EXPECT_EQ(sum, rep.solution.cost);
        deeper += rep.max_depth > 1;
    }
    EXPECT_GT(deeper, 0);
}

TEST(Qptas, CoarseMuStillCertified) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = gen_uniform(1 + seed % 8, seed + 500);
        SchemeOverrides o;
        o.mu = q(1, 4);
        o.klong = 4;
        o.oracle_limit = 0;
        try {
            QptasReport rep = qptas_report(inst, q(1, 2), o);
            EXPECT_TRUE(feasible(inst, rep.solution));
            EXPECT_LE(rep.solution.cost, rep.certified_ratio * exact_opt(inst).cost);
        } catch (const SchemeBudgetError& e) {
            // too few long segments allowed for some chunk
            EXPECT_TRUE(feasible(inst, e.fallback()));
        }
    }
}

TEST(Qptas, BudgetFallback) {
    SchemeOverrides o;
    o.oracle_limit = 0;
    o.node_budget = 1;
    Instance inst = gen_uniform(6, 11);
    try {
        qptas_report(inst, q(1, 2), o);
        FAIL() << "expected a budget error";
    } catch (const SchemeBudgetError& e) {
        EXPECT_TRUE(feasible(inst, e.fallback()));
        EXPECT_EQ(e.fallback().cost, approx8(inst).cost);
    }
}

TEST(Qptas, Deterministic) {
    SchemeOverrides o;
    o.oracle_limit = 0;
    o.klong = 6;
    Instance inst = gen_uniform(6, 21);
    EXPECT_EQ(qptas(inst, q(1, 2), o).segments, qptas(inst, q(1, 2), o).segments);
}
