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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "stabkit/geometry.hpp"

namespace stabkit {

/// Bit i is set when the segment stabs the i-th rect of the instance.
using StabSet = boost::dynamic_bitset<std::uint64_t>;

struct Candidate {
    Segment segment;
    StabSet stab_set;
    Scalar length;
};

inline StabSet stab_set_of(const Instance& inst, const Segment& s) {
    StabSet out(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (stabs(s, inst[i])) out.set(i);
    }
    return out;
}

inline bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.segment < b.segment;
}

/// Wraps segments as candidates, dropping those that stab nothing. Order is
/// (length, segment).
inline std::vector<Candidate> make_candidates(const Instance& inst, const std::vector<Segment>& segs) {
    std::vector<Candidate> out;
    for (const auto& s : segs) {
        StabSet set = stab_set_of(inst, s);
        if (set.none()) continue;
        out.push_back(Candidate{s, std::move(set), s.length()});
    }
    std::sort(out.begin(), out.end(), candidate_less);
    return out;
}

/// One candidate per distinct stab-set (shortest wins), then drops every
/// candidate whose stab-set is contained in that of a candidate that is no
/// longer. The optimal cover cost is unchanged.
inline std::vector<Candidate> reduce_candidates(const Instance& inst, const std::vector<Segment>& segs) {
    std::vector<Candidate> all = make_candidates(inst, segs);
    // `all` is sorted by (length, segment), so the first hit per set is the keeper.
    std::map<StabSet, std::size_t> first;
    std::vector<Candidate> uniq;
    for (auto& c : all) {
        if (first.emplace(c.stab_set, uniq.size()).second) uniq.push_back(std::move(c));
    }
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < uniq.size() && !dominated; ++j) {
            if (j == i) continue;
            dominated = uniq[j].length <= uniq[i].length && uniq[i].stab_set.is_subset_of(uniq[j].stab_set);
        }
        if (!dominated) out.push_back(uniq[i]);
    }
    return out;
}

inline std::vector<Candidate> reduced_candidates(const Instance& inst) {
    if (inst.empty()) return {};
    return reduce_candidates(inst, candidate_segments(inst));
}

inline constexpr std::size_t kDefaultOracleLimit = 20;

namespace detail {

template <typename Cost>
std::vector<std::size_t> subset_dp(std::size_t n, const std::vector<std::uint32_t>& masks,
                                   const std::vector<Cost>& lengths) {
    const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1u);
    std::vector<std::vector<std::size_t>> covering(n);
    for (std::size_t c = 0; c < masks.size(); ++c) {
        for (std::size_t b = 0; b < n; ++b) {
            if (masks[c] >> b & 1u) covering[b].push_back(c);
        }
    }
    std::vector<Cost> dp(std::size_t{full} + 1);
    std::vector<std::int32_t> choice(std::size_t{full} + 1, -1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        // Some chosen segment must stab the lowest uncovered rect.
        std::size_t low = static_cast<std::size_t>(__builtin_ctz(mask));
        bool have = false;
        for (auto c : covering[low]) {
            Cost v = dp[mask & ~masks[c]] + lengths[c];
            if (!have || v < dp[mask]) {
                dp[mask] = v;
                choice[mask] = static_cast<std::int32_t>(c);
                have = true;
            }
        }
        if (!have) throw CorruptionError("rect without any covering candidate");
        if (mask == full) break;
    }
    std::vector<std::size_t> picked;
    for (std::uint32_t mask = full; mask != 0; mask &= ~masks[static_cast<std::size_t>(choice[mask])]) {
        picked.push_back(static_cast<std::size_t>(choice[mask]));
    }
    return picked;
}

}  // namespace detail

/// Minimum-length cover by weighted set-cover DP over subsets of rects.
/// `reduce = false` runs the DP over every candidate segment instead of the
/// reduced list; the optimum is the same.
inline Solution exact_opt(const Instance& inst, std::size_t limit = kDefaultOracleLimit, bool reduce = true) {
    const std::size_t n = inst.size();
    if (n > limit || n > 31) {
        throw OracleLimitError("exact oracle limited to " + std::to_string(std::min<std::size_t>(limit, 31)) +
                               " rects, got " + std::to_string(n));
    }
    if (n == 0) return {};
    auto cands = reduce ? reduced_candidates(inst) : make_candidates(inst, candidate_segments(inst));
    std::vector<std::uint32_t> masks;
    for (const auto& c : cands) masks.push_back(static_cast<std::uint32_t>(c.stab_set.to_ulong()));

    // Scale every length by the common denominator so the DP can use int64
    // when the totals fit.
    BigInt common = 1;
    for (const auto& c : cands) common = boost::multiprecision::lcm(common, den(c.length));
    std::vector<BigInt> scaled;
    BigInt total = 0;
    for (const auto& c : cands) {
        scaled.push_back(num(c.length) * (common / den(c.length)));
        total += scaled.back();
    }
    std::vector<std::size_t> picked;
    if (total < BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
        std::vector<std::int64_t> lens;
        for (const auto& s : scaled) lens.push_back(static_cast<std::int64_t>(s));
        picked = detail::subset_dp(n, masks, lens);
    } else {
        std::vector<Scalar> lens;
        for (const auto& c : cands) lens.push_back(c.length);
        picked = detail::subset_dp(n, masks, lens);
    }
    std::vector<Segment> segs;
    for (auto c : picked) segs.push_back(cands[c].segment);
    return Solution::from(std::move(segs));
}

/// Classical greedy set cover: repeatedly take the candidate with the most
/// newly stabbed rects per unit length. Equal ratios go to the candidate that
/// stabs more new rects (equivalently the longer one), then to the smaller
/// segment in (xl, xr, y) order.
inline Solution greedy_cover(const Instance& inst) {
    if (inst.empty()) return {};
    auto cands = reduced_candidates(inst);
    StabSet uncovered(inst.size());
    uncovered.set();
    std::vector<Segment> segs;
    while (uncovered.any()) {
        std::optional<std::size_t> best;
        std::size_t best_gain = 0;
        for (std::size_t c = 0; c < cands.size(); ++c) {
            std::size_t gain = (cands[c].stab_set & uncovered).count();
            if (gain == 0) continue;
            // gain / len > best_gain / best_len, compared without division.
            const Scalar lhs = Scalar(gain) * (best ? cands[*best].length : Scalar(0));
            const Scalar rhs = best ? Scalar(best_gain) * cands[c].length : Scalar(0);
            if (!best || lhs > rhs || (lhs == rhs && gain > best_gain)) {
                best = c;
                best_gain = gain;
            }
        }
        if (!best) throw CorruptionError("greedy cover found an unstabbable rect");
        segs.push_back(cands[*best].segment);
        uncovered -= cands[*best].stab_set;
    }
    return Solution::from(std::move(segs));
}

}  // namespace stabkit
