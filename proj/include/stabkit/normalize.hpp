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
#include <utility>
#include <vector>

#include "stabkit/geometry.hpp"

namespace stabkit {

/// Everything needed to map a solution of a normalized instance back to the
/// original coordinates. Normalized x is (x - x_shift) * x_scale; normalized
/// y is the rank of the original y among all distinct y values.
struct Transform {
    Scalar x_scale = 1;
    Scalar x_shift = 0;
    std::vector<std::pair<Scalar, BigInt>> y_map;
    /// Segments (original coordinates) for rects removed as too thin.
    std::vector<std::pair<RectId, Segment>> presolved;

    Scalar x_forward(const Scalar& x) const { return (x - x_shift) * x_scale; }
    Scalar x_backward(const Scalar& x) const { return x / x_scale + x_shift; }

    Scalar y_backward(const Scalar& y) const {
        if (den(y) != 1) {
            throw CorruptionError("compressed y " + to_string(y) + " is not an integer level");
        }
        BigInt level = num(y);
        auto it = std::lower_bound(y_map.begin(), y_map.end(), level,
                                   [](const auto& entry, const BigInt& v) { return entry.second < v; });
        if (it == y_map.end() || it->second != level) {
            throw CorruptionError("compressed y " + to_string(y) + " not present in y map");
        }
        return it->first;
    }

    Scalar y_forward(const Scalar& y) const {
        auto it = std::lower_bound(y_map.begin(), y_map.end(), y,
                                   [](const auto& entry, const Scalar& v) { return entry.first < v; });
        if (it == y_map.end() || it->first != y) {
            throw CorruptionError("y " + to_string(y) + " not present in y map");
        }
        return Scalar(it->second);
    }

    bool identity() const { return x_scale == 1 && x_shift == 0 && y_map.empty(); }
};

struct Normalized {
    Instance instance;
    std::vector<Segment> presolved;  // normalized coordinates
    Transform transform;
};

/// Compress y to ranks, scale x so the widest rect has width 1 with min xl at
/// 0, and greedily stab every rect of (scaled) width <= eps / n on its own.
inline Normalized normalize(const Instance& inst, const Scalar& eps) {
    if (eps <= 0) {
        throw ParameterError("normalize requires eps > 0");
    }
    Normalized out;
    if (inst.empty()) {
        return out;
    }
    Transform& t = out.transform;
    std::vector<Scalar> ys;
    Scalar min_xl = inst[0].xl;
    for (const auto& r : inst.rects()) {
        ys.push_back(r.yb);
        ys.push_back(r.yt);
        if (r.xl < min_xl) min_xl = r.xl;
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        t.y_map.emplace_back(ys[i], BigInt(i));
    }
    t.x_shift = min_xl;
    t.x_scale = Scalar(1) / inst.max_width();

    const Scalar threshold = eps / Scalar(inst.size());
    std::vector<Rect> kept;
    for (const auto& r : inst.rects()) {
        Rect m{r.id, t.x_forward(r.xl), t.x_forward(r.xr), t.y_forward(r.yb), t.y_forward(r.yt)};
        if (m.width() <= threshold) {
            out.presolved.push_back(Segment{m.xl, m.xr, m.yt});
            t.presolved.emplace_back(r.id, Segment{r.xl, r.xr, r.yt});
        } else {
            kept.push_back(std::move(m));
        }
    }
    out.instance = Instance(std::move(kept));
    return out;
}

/// Maps a normalized-coordinate solution back and appends the presolved
/// segments. The cost is recomputed in original units.
inline Solution denormalize(const Solution& sol, const Transform& t) {
    std::vector<Segment> segs;
    segs.reserve(sol.segments.size() + t.presolved.size());
    for (const auto& s : sol.segments) {
        Scalar y = t.y_map.empty() ? s.y : t.y_backward(s.y);
        segs.push_back(Segment{t.x_backward(s.xl), t.x_backward(s.xr), y});
    }
    for (const auto& [id, seg] : t.presolved) {
        segs.push_back(seg);
    }
    return Solution::from(std::move(segs));
}

}  // namespace stabkit
