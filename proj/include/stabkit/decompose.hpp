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
#include <map>
#include <optional>
#include <vector>

#include "stabkit/approx8.hpp"
#include "stabkit/geometry.hpp"
#include "stabkit/parallel.hpp"

namespace stabkit {

namespace detail {

inline void require_unit_eps(const Scalar& eps, const char* who) {
    if (!(eps > 0 && eps < 1)) {
        throw ParameterError(std::string(who) + " requires 0 < eps < 1, got " + to_string(eps));
    }
}

inline std::size_t to_size(const BigInt& v) { return static_cast<std::size_t>(v); }

}  // namespace detail

/// True if some line x = offset + i * spacing (i integer) passes strictly
/// between r.xl and r.xr.
inline bool crossed_by_grid(const Rect& r, const Scalar& offset, const Scalar& spacing) {
    BigInt first = floor_int((r.xl - offset) / spacing) + 1;  // first line strictly right of xl
    return offset + Scalar(first) * spacing < r.xr;
}

struct Strip {
    Scalar left, right;
    Instance rects;
};

struct StripPartition {
    std::vector<Segment> paid;  // approx8 cover of the crossed rects
    Scalar paid_cost = 0;
    std::vector<Strip> strips;
    Scalar spacing = 0;   // w / eps
    Scalar step = 0;      // w * eps / n, the offset grid
    std::size_t offset_count = 0;
    std::size_t offset_index = 0;
    Scalar offset = 0;    // offset_index * step
};

/// Vertical lines every w/eps, shifted by the offset among the n/eps^2
/// multiples of w*eps/n whose crossed rects get the cheapest approx8 cover
/// (smallest offset on ties). Crossed rects are paid for; the rest fall into
/// strips of width w/eps.
inline StripPartition strip_partition(const Instance& inst, const Scalar& eps) {
    detail::require_unit_eps(eps, "strip_partition");
    StripPartition out;
    if (inst.empty()) return out;
    const Scalar w = inst.max_width();
    const std::size_t n = inst.size();
    out.spacing = w / eps;
    out.step = w * eps / Scalar(n);
    out.offset_count = detail::to_size(ceil_int(out.spacing / out.step));
    const std::size_t count = out.offset_count;

    // Offsets k*step that cross rect p form at most two runs of k; the set of
    // crossed rects only changes at run boundaries.
    struct Run {
        std::size_t lo, hi;
    };
    std::vector<std::vector<Run>> runs(n);
    std::vector<std::size_t> breaks{0};
    auto add_run = [&](std::size_t p, const BigInt& lo, const BigInt& hi) {
        BigInt l = std::max<BigInt>(lo, 0);
        BigInt h = std::min<BigInt>(hi, BigInt(count - 1));
        if (l > h) return;
        runs[p].push_back(Run{detail::to_size(l), detail::to_size(h)});
        breaks.push_back(detail::to_size(l));
        breaks.push_back(detail::to_size(h) + 1);
    };
    for (std::size_t p = 0; p < n; ++p) {
        const Rect& r = inst[p];
        Scalar a = r.xl - Scalar(floor_int(r.xl / out.spacing)) * out.spacing;  // xl mod spacing
        Scalar b = a + r.width();
        // offset z crosses r iff z lies in (a, b) modulo spacing
        add_run(p, floor_int(a / out.step) + 1, ceil_int(b / out.step) - 1);
        if (b > out.spacing) {
            add_run(p, 0, ceil_int((b - out.spacing) / out.step) - 1);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    while (!breaks.empty() && breaks.back() >= count) breaks.pop_back();

    auto crossed_at = [&](std::size_t k) {
        std::vector<std::size_t> ps;
        for (std::size_t p = 0; p < n; ++p) {
            for (const auto& run : runs[p]) {
                if (run.lo <= k && k <= run.hi) {
                    ps.push_back(p);
                    break;
                }
            }
        }
        return ps;
    };
    std::vector<std::vector<std::size_t>> sets;
    std::map<std::vector<std::size_t>, std::size_t> set_index;
    std::vector<std::size_t> set_of_break;
    for (auto k : breaks) {
        auto ps = crossed_at(k);
        auto [it, fresh] = set_index.emplace(ps, sets.size());
        if (fresh) sets.push_back(std::move(ps));
        set_of_break.push_back(it->second);
    }
    std::vector<Solution> covers(sets.size());
    parallel_for(sets.size(), [&](std::size_t i) { covers[i] = approx8(inst.subset(sets[i])); });

    std::size_t best = 0;
    for (std::size_t b = 1; b < breaks.size(); ++b) {
        if (covers[set_of_break[b]].cost < covers[set_of_break[best]].cost) best = b;
    }
    out.offset_index = breaks[best];
    out.offset = Scalar(out.offset_index) * out.step;
    const Solution& chosen = covers[set_of_break[best]];
    out.paid = chosen.segments;
    out.paid_cost = chosen.cost;

    const auto& crossed = sets[set_of_break[best]];
    std::map<BigInt, std::vector<std::size_t>> by_strip;
    for (std::size_t p = 0; p < n; ++p) {
        if (std::binary_search(crossed.begin(), crossed.end(), p)) continue;
        by_strip[floor_int((inst[p].xl - out.offset) / out.spacing)].push_back(p);
    }
    for (const auto& [i, ps] : by_strip) {
        Scalar left = out.offset + Scalar(i) * out.spacing;
        out.strips.push_back(Strip{left, left + out.spacing, inst.subset(ps)});
    }
    return out;
}

struct Chunk {
    Instance rects;
    Scalar approx_cost = 0;          // cost of approx8 on this chunk
    std::optional<Scalar> trigger;   // approx8 cost that closed this chunk, if a cut did
};

struct HorizontalCuts {
    std::vector<Segment> cuts;
    Scalar cut_cost = 0;
    std::vector<Chunk> chunks;
};

/// Sweeps a horizontal line bottom-up over the strip's y levels. Whenever the
/// approx8 cost of the not-yet-cut rects lying entirely below the line exceeds
/// c * w / eps^2, a full-width cut is placed there; the rects strictly below
/// form a chunk and the rects the cut stabs are removed.
inline HorizontalCuts horizontal_cuts(const Instance& strip, const Scalar& eps, const Scalar& width,
                                      const Scalar& left, const Scalar& right, const Scalar& c = 8) {
    detail::require_unit_eps(eps, "horizontal_cuts");
    if (width <= 0) throw PreconditionError("horizontal_cuts requires a positive reference width");
    if (right < left || right - left > width / eps) {
        throw PreconditionError("strip wider than w / eps");
    }
    for (const auto& r : strip.rects()) {
        if (r.xl < left || r.xr > right) {
            throw PreconditionError("rect " + std::to_string(r.id) + " leaves the strip");
        }
    }
    HorizontalCuts out;
    if (strip.empty()) return out;
    const Scalar threshold = c * width / (eps * eps);

    std::vector<Scalar> levels;
    for (const auto& r : strip.rects()) {
        levels.push_back(r.yb);
        levels.push_back(r.yt);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<bool> alive(strip.size(), true);
    auto collect = [&](auto&& keep) {
        std::vector<std::size_t> ps;
        for (std::size_t p = 0; p < strip.size(); ++p) {
            if (alive[p] && keep(strip[p])) ps.push_back(p);
        }
        return ps;
    };
    auto close_chunk = [&](const std::vector<std::size_t>& ps, std::optional<Scalar> trigger) {
        for (auto p : ps) alive[p] = false;
        if (ps.empty()) return;
        Instance sub = strip.subset(ps);
        Scalar cost = approx8(sub).cost;
        out.chunks.push_back(Chunk{std::move(sub), cost, std::move(trigger)});
    };
    for (const auto& z : levels) {
        auto below = collect([&](const Rect& r) { return r.yt <= z; });
        if (below.empty()) continue;
        Scalar cost = approx8(strip.subset(below)).cost;
        if (cost <= threshold) continue;
        Segment cut{left, right, z};
        out.cuts.push_back(cut);
        out.cut_cost += cut.length();
        close_chunk(collect([&](const Rect& r) { return r.yt < z; }), cost);
        for (auto p : collect([&](const Rect& r) { return stabs(cut, r); })) alive[p] = false;
    }
    close_chunk(collect([](const Rect&) { return true; }), std::nullopt);
    return out;
}

/// Overload for a lone strip: it starts at the leftmost rect and is w/eps wide.
inline HorizontalCuts horizontal_cuts(const Instance& strip, const Scalar& eps, const Scalar& width) {
    Scalar left = 0;
    for (std::size_t p = 0; p < strip.size(); ++p) {
        if (p == 0 || strip[p].xl < left) left = strip[p].xl;
    }
    return horizontal_cuts(strip, eps, width, left, left + width / eps);
}

struct Decomposition {
    std::vector<Segment> paid_segments;  // strip-crossing cover followed by all cuts
    Scalar strip_cost = 0;
    Scalar cut_cost = 0;
    std::vector<Instance> sub_instances;
    std::vector<Scalar> opt_upper_bounds;             // approx8 cost per sub-instance
    std::vector<std::optional<Scalar>> triggers;      // per sub-instance, see Chunk
    std::vector<std::size_t> strip_of;                // strip index per sub-instance
    std::vector<std::pair<Scalar, Scalar>> strip_bounds;
    Scalar width = 0;
    Scalar offset = 0;

    Scalar paid_cost() const { return strip_cost + cut_cost; }
};

/// Strip partition followed by horizontal cuts inside every strip. Every
/// remaining sub-instance has approx8 cost at most 8 w / eps^2.
inline Decomposition decompose(const Instance& inst, const Scalar& eps) {
    detail::require_unit_eps(eps, "decompose");
    Decomposition d;
    if (inst.empty()) return d;
    d.width = inst.max_width();
    StripPartition sp = strip_partition(inst, eps);
    d.offset = sp.offset;
    d.paid_segments = sp.paid;
    d.strip_cost = sp.paid_cost;
    std::vector<HorizontalCuts> per(sp.strips.size());
    parallel_for(sp.strips.size(), [&](std::size_t i) {
        const Strip& s = sp.strips[i];
        per[i] = horizontal_cuts(s.rects, eps, d.width, s.left, s.right);
    });
    for (std::size_t i = 0; i < per.size(); ++i) {
        d.strip_bounds.emplace_back(sp.strips[i].left, sp.strips[i].right);
        d.paid_segments.insert(d.paid_segments.end(), per[i].cuts.begin(), per[i].cuts.end());
        d.cut_cost += per[i].cut_cost;
        for (auto& ch : per[i].chunks) {
            d.sub_instances.push_back(std::move(ch.rects));
            d.opt_upper_bounds.push_back(ch.approx_cost);
            d.triggers.push_back(ch.trigger);
            d.strip_of.push_back(i);
        }
    }
    return d;
}

}  // namespace stabkit
