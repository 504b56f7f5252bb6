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

#include <map>
#include <vector>

#include "stabkit/geometry.hpp"
#include "stabkit/laminar.hpp"

namespace stabkit {

/// Widens r to width w' = 2^t (2^(t-1) < width <= 2^t) and moves its left
/// edge down to the nearest multiple of w'. The y-extent is untouched.
inline Rect round_rect(const Rect& r) {
    if (r.width() <= 0) {
        throw PreconditionError("round_rect requires positive width");
    }
    Scalar w = pow2(ceil_log2(r.width()));
    Scalar left = Scalar(floor_int(r.xl / w)) * w;
    return Rect{r.id, left, left + w, r.yb, r.yt};
}

struct LaminarRounding {
    Instance instance;
    /// Rounded rect id -> original rect id (ids are preserved, so identity).
    std::map<RectId, RectId> id_map;
};

/// Rounds every rect. Power-of-two aligned intervals are always laminar.
inline LaminarRounding to_laminar(const Instance& inst) {
    std::vector<Rect> out;
    LaminarRounding res;
    out.reserve(inst.size());
    for (const auto& r : inst.rects()) {
        out.push_back(round_rect(r));
        res.id_map.emplace(r.id, r.id);
    }
    res.instance = Instance(std::move(out));
    return res;
}

/// Doubles the length keeping the left endpoint: [a, b] -> [a, 2b - a].
inline Segment stretch_segment(const Segment& s) { return Segment{s.xl, Scalar(2) * s.xr - s.xl, s.y}; }

/// Shrinks every segment to the x-hull of the rects it stabs and drops
/// segments that stab nothing. Feasibility is preserved, cost never grows.
inline Solution shrink_solution(const Instance& inst, const Solution& sol) {
    std::vector<Segment> out;
    for (const auto& s : sol.segments) {
        bool any = false;
        Segment t{s.xr, s.xl, s.y};
        for (const auto& r : inst.rects()) {
            if (!stabs(s, r)) continue;
            if (!any || r.xl < t.xl) t.xl = r.xl;
            if (!any || r.xr > t.xr) t.xr = r.xr;
            any = true;
        }
        if (any) out.push_back(t);
    }
    return Solution::from(std::move(out));
}

/// 8-approximation: round to a laminar instance, solve it exactly, stretch
/// every segment by two to the right.
inline Solution approx8(const Instance& inst) {
    if (inst.empty()) return {};
    auto rounded = to_laminar(inst);
    Solution lam = solve_laminar(rounded.instance);
    std::vector<Segment> segs;
    segs.reserve(lam.segments.size());
    for (const auto& s : lam.segments) segs.push_back(stretch_segment(s));
    return Solution::from(std::move(segs));
}

}  // namespace stabkit
