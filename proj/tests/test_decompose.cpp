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

#include <map>

#include "test_support.hpp"

using namespace stabkit;
using namespace stabkit::testing;

namespace {

// Sixteen unit rects stacked at y = 0..31 and another 16 starting at y = 100.
// approx8 pays 2 per rect, so each cluster alone costs exactly the threshold 32.
Instance two_clusters() {
    std::vector<Rect> rs;
    RectId id = 1;
    for (int i = 0; i < 16; ++i, ++id) rs.push_back(rect(id, 0, 1, 2 * i, 2 * i + 1));
    for (int i = 0; i < 16; ++i, ++id) rs.push_back(rect(id, 1, 2, 100 + 2 * i, 101 + 2 * i));
    return Instance(rs);
}

std::vector<RectId> ids_of(const Instance& inst) {
    std::vector<RectId> out;
    for (const auto& r : inst.rects()) out.push_back(r.id);
    std::sort(out.begin(), out.end());
    return out;
}

// Every rect is paid for or lands in exactly one sub-instance.
void expect_sound(const Instance& inst, const Decomposition& d) {
    std::map<RectId, int> seen;
    for (const auto& sub : d.sub_instances) {
        for (const auto& r : sub.rects()) ++seen[r.id];
    }
    for (const auto& r : inst.rects()) {
        bool paid = std::any_of(d.paid_segments.begin(), d.paid_segments.end(),
                                [&](const Segment& s) { return stabs(s, r); });
        int count = seen.count(r.id) ? seen[r.id] : 0;
        EXPECT_TRUE(paid || count == 1) << r;
        EXPECT_LE(count, 1) << r;
    }
}

}  // namespace

TEST(CrossedByGrid, StrictInterior) {
    EXPECT_TRUE(crossed_by_grid(rect(1, 1, 3, 0, 1), 0, 2));
    EXPECT_FALSE(crossed_by_grid(rect(1, 0, 2, 0, 1), 0, 2));   // touches lines at both ends
    EXPECT_FALSE(crossed_by_grid(rect(1, q(1, 2), q(3, 2), 0, 1), q(3, 2), 4));
    EXPECT_TRUE(crossed_by_grid(rect(1, -3, -1, 0, 1), 0, 2));    // line at -2
}

TEST(StripPartition, I1MissesEverything) {
    StripPartition sp = strip_partition(i1(), q(1, 4));
    EXPECT_EQ(sp.spacing, 16);
    EXPECT_EQ(sp.offset_count, 48u);
    EXPECT_TRUE(sp.paid.empty());
    EXPECT_EQ(sp.paid_cost, 0);
    ASSERT_EQ(sp.strips.size(), 1u);
    EXPECT_EQ(ids_of(sp.strips[0].rects), (std::vector<RectId>{1, 2, 3}));
}

TEST(StripPartition, ChosenOffsetIsExhaustiveMinimum) {
    SplitMix64 rng(53);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0, 8));
        Instance inst = random_instance(rng, n, 30, 6);
        Scalar eps = (it % 2) ? q(1, 2) : q(1, 3);
        StripPartition sp = strip_partition(inst, eps);
        const Scalar w = inst.max_width();
        const Scalar spacing = w / eps, step = w * eps / Scalar(n);
        ASSERT_EQ(sp.offset_count, static_cast<std::size_t>(ceil_int(spacing / step)));
        std::size_t best = 0;
        Scalar best_cost = -1;
        for (std::size_t k = 0; k < sp.offset_count; ++k) {
            std::vector<std::size_t> crossed;
            for (std::size_t p = 0; p < n; ++p) {
                if (crossed_by_grid(inst[p], Scalar(k) * step, spacing)) crossed.push_back(p);
            }
            Scalar cost = approx8(inst.subset(crossed)).cost;
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best = k;
            }
        }
        EXPECT_EQ(sp.offset_index, best);
        EXPECT_EQ(sp.paid_cost, best_cost);
        for (const auto& strip : sp.strips) {
            EXPECT_EQ(strip.right - strip.left, spacing);
            for (const auto& r : strip.rects.rects()) {
                EXPECT_LE(strip.left, r.xl);
                EXPECT_LE(r.xr, strip.right);
            }
        }
    }
}

TEST(StripPartition, PaidCostWithinSixteenEpsOpt) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = gen_uniform(10, seed);
        StripPartition sp = strip_partition(inst, q(1, 4));
        EXPECT_LE(sp.paid_cost, 16 * q(1, 4) * exact_opt(inst).cost) << "seed " << seed;
    }
}

TEST(StripPartition, RejectsBadEps) {
    EXPECT_THROW(strip_partition(i1(), 0), ParameterError);
    EXPECT_THROW(strip_partition(i1(), 1), ParameterError);
    EXPECT_THROW(strip_partition(i1(), q(3, 2)), ParameterError);
}

TEST(HorizontalCuts, CheapStripIsOneChunk) {
    HorizontalCuts hc = horizontal_cuts(i1(), q(1, 2), 4);
    EXPECT_TRUE(hc.cuts.empty());
    ASSERT_EQ(hc.chunks.size(), 1u);
    EXPECT_EQ(hc.chunks[0].rects.size(), 3u);
    EXPECT_FALSE(hc.chunks[0].trigger.has_value());
    EXPECT_EQ(hc.chunks[0].approx_cost, 12);
}

TEST(HorizontalCuts, TwoClusters) {
    Instance inst = two_clusters();
    // threshold 8 * 1 / (1/4) = 32; the first rect of the upper cluster tips it over
    HorizontalCuts hc = horizontal_cuts(inst, q(1, 2), 1, 0, 2);
    ASSERT_EQ(hc.cuts.size(), 1u);
    EXPECT_EQ(hc.cuts[0], seg(0, 2, 101));
    EXPECT_EQ(hc.cut_cost, 2);
    ASSERT_EQ(hc.chunks.size(), 2u);
    EXPECT_EQ(hc.chunks[0].rects.size(), 16u);
    EXPECT_EQ(hc.chunks[0].rects[15].id, 16);
    ASSERT_TRUE(hc.chunks[0].trigger.has_value());
    EXPECT_EQ(*hc.chunks[0].trigger, 34);
    EXPECT_EQ(hc.chunks[0].approx_cost, 32);
    EXPECT_EQ(hc.chunks[1].rects.size(), 15u);
    EXPECT_EQ(hc.chunks[1].rects[0].id, 18);
    EXPECT_EQ(hc.chunks[1].approx_cost, 30);
    EXPECT_FALSE(hc.chunks[1].trigger.has_value());
}

TEST(HorizontalCuts, Preconditions) {
    EXPECT_THROW(horizontal_cuts(i1(), q(1, 2), 4, 0, 9), PreconditionError);   // wider than w/eps
    EXPECT_THROW(horizontal_cuts(i1(), q(1, 2), 4, 1, 8), PreconditionError);   // rect 1 starts at 0
    EXPECT_THROW(horizontal_cuts(i1(), 2, 4), ParameterError);
}

TEST(HorizontalCuts, ChunkBudgetsAndCutCost) {
    std::size_t total_cuts = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        // many short rects in a narrow strip, so cuts actually happen
        UniformConfig cfg;
        cfg.x_range = 0;
        cfg.y_range = 60;
        cfg.w_min = 1;
        cfg.w_max = 1;
        cfg.h_max = 1;
        cfg.grid = 1;
        Instance inst = gen_uniform(40, seed, cfg);
        const Scalar w = inst.max_width(), eps = q(1, 2);
        Scalar left = 0;
        for (const auto& r : inst.rects()) left = std::min(left, r.xl);
        HorizontalCuts hc = horizontal_cuts(inst, eps, w, left, left + w / eps, 2);
        const Scalar threshold = 2 * w / (eps * eps);
        for (const auto& ch : hc.chunks) {
            EXPECT_LE(ch.approx_cost, threshold);
            if (ch.trigger) {
                EXPECT_GT(*ch.trigger, threshold);
            }
        }
        // each cut is paid for by a chunk whose optimum exceeds w / eps^2
        EXPECT_EQ(hc.cut_cost, Scalar(hc.cuts.size()) * w / eps);
        std::size_t triggered = 0;
        for (const auto& ch : hc.chunks) triggered += ch.trigger.has_value();
        EXPECT_LE(triggered, hc.cuts.size());
        total_cuts += hc.cuts.size();
    }
    EXPECT_GT(total_cuts, 0u);
}

TEST(HorizontalCuts, CutCostWithinEpsOpt) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = gen_uniform(10, seed);
        const Scalar eps = q(1, 2);
        HorizontalCuts hc = horizontal_cuts(inst, eps, 30);
        EXPECT_LE(hc.cut_cost, eps * exact_opt(inst).cost);
    }
    Instance big = two_clusters();
    HorizontalCuts hc = horizontal_cuts(big, q(1, 2), 1, 0, 2);
    EXPECT_LE(hc.cut_cost, q(1, 2) * 32);  // 32 pairwise unshareable unit rects
}

TEST(Decompose, I1) {
    Decomposition d = decompose(i1(), q(1, 4));
    EXPECT_TRUE(d.paid_segments.empty());
    EXPECT_EQ(d.paid_cost(), 0);
    ASSERT_EQ(d.sub_instances.size(), 1u);
    EXPECT_EQ(ids_of(d.sub_instances[0]), (std::vector<RectId>{1, 2, 3}));
    EXPECT_EQ(d.opt_upper_bounds[0], 12);
}

TEST(Decompose, Empty) {
    Decomposition d = decompose(Instance(), q(1, 4));
    EXPECT_TRUE(d.paid_segments.empty());
    EXPECT_TRUE(d.sub_instances.empty());
    EXPECT_THROW(decompose(Instance(), 0), ParameterError);
}

TEST(Decompose, SoundnessWidthAndPaidBound) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Instance inst = gen_uniform(1 + seed % 10, seed);
        const Scalar eps = (seed % 2) ? q(1, 4) : q(1, 2);
        Decomposition d = decompose(inst, eps);
        expect_sound(inst, d);
        const Scalar w = inst.max_width();
        for (std::size_t i = 0; i < d.sub_instances.size(); ++i) {
            const auto& sub = d.sub_instances[i];
            Scalar lo = sub[0].xl, hi = sub[0].xr;
            for (const auto& r : sub.rects()) {
                lo = std::min(lo, r.xl);
                hi = std::max(hi, r.xr);
            }
            EXPECT_LE(hi - lo, w / eps);
            EXPECT_LE(d.opt_upper_bounds[i], 8 * w / (eps * eps));
        }
        Scalar opt = exact_opt(inst).cost;
        EXPECT_LE(d.paid_cost(), 17 * eps * opt) << "seed " << seed;
        Scalar sum = 0;
        for (const auto& sub : d.sub_instances) sum += exact_opt(sub).cost;
        EXPECT_LE(sum, opt);
    }
}

TEST(Decompose, SoundWithCuts) {
    Instance inst = two_clusters();
    Decomposition d = decompose(inst, q(1, 2));
    expect_sound(inst, d);
    EXPECT_EQ(d.sub_instances.size(), d.triggers.size());
}
