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
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/scalar.hpp"

namespace stabkit {

using RectId = std::int64_t;

/// Closed axis-aligned rectangle [xl, xr] x [yb, yt].
struct Rect {
    RectId id = 0;
    Scalar xl, xr;
    Scalar yb, yt;

    Scalar width() const { return xr - xl; }

    friend bool operator==(const Rect&, const Rect&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Rect& r) {
        return os << "R" << r.id << "[" << r.xl << "," << r.xr << "]x[" << r.yb << "," << r.yt << "]";
    }
};

/// Closed horizontal segment [xl, xr] x {y}.
struct Segment {
    Scalar xl, xr;
    Scalar y;

    Scalar length() const { return xr - xl; }

    friend bool operator==(const Segment&, const Segment&) = default;
    friend bool operator<(const Segment& a, const Segment& b) {
        return std::tie(a.xl, a.xr, a.y) < std::tie(b.xl, b.xr, b.y);
    }
    friend std::ostream& operator<<(std::ostream& os, const Segment& s) {
        return os << "[" << s.xl << "," << s.xr << "]x" << s.y;
    }
};

/// Closed box used to describe sub-instances.
struct Box {
    Scalar x0, x1, y0, y1;

    bool contains(const Rect& r) const {
        return x0 <= r.xl && r.xr <= x1 && y0 <= r.yb && r.yt <= y1;
    }
};

/// A segment stabs a rectangle when it reaches both vertical edges at a
/// height inside the rectangle. All boundaries are closed.
inline bool stabs(const Segment& s, const Rect& r) {
    return s.xl <= r.xl && s.xr >= r.xr && r.yb <= s.y && s.y <= r.yt;
}

inline void validate_rect(const Rect& r) {
    if (!(r.xl < r.xr)) {
        throw ParameterError("rect " + std::to_string(r.id) + " has non-positive width");
    }
    if (r.yt < r.yb) {
        throw ParameterError("rect " + std::to_string(r.id) + " has yt < yb");
    }
}

/// Finite set of rectangles with unique ids. The widest width is cached.
class Instance {
public:
    Instance() = default;

    explicit Instance(std::vector<Rect> rects) : rects_(std::move(rects)) {
        std::set<RectId> ids;
        for (const auto& r : rects_) {
            validate_rect(r);
            if (!ids.insert(r.id).second) {
                throw ParameterError("duplicate rect id " + std::to_string(r.id));
            }
            if (r.width() > max_width_) {
                max_width_ = r.width();
            }
        }
    }

    const std::vector<Rect>& rects() const { return rects_; }
    std::size_t size() const { return rects_.size(); }
    bool empty() const { return rects_.empty(); }
    const Rect& operator[](std::size_t i) const { return rects_[i]; }
    const Scalar& max_width() const { return max_width_; }

    Scalar min_width() const {
        Scalar m = 0;
        for (std::size_t i = 0; i < rects_.size(); ++i) {
            if (i == 0 || rects_[i].width() < m) m = rects_[i].width();
        }
        return m;
    }

    /// Sub-instance made of the rects at the given positions, in that order.
    Instance subset(std::span<const std::size_t> positions) const {
        std::vector<Rect> out;
        out.reserve(positions.size());
        for (auto p : positions) out.push_back(rects_[p]);
        return Instance(std::move(out));
    }

    template <typename Pred>
    Instance filter(Pred&& keep) const {
        std::vector<Rect> out;
        for (const auto& r : rects_) {
            if (keep(r)) out.push_back(r);
        }
        return Instance(std::move(out));
    }

    std::vector<RectId> ids() const {
        std::vector<RectId> out;
        out.reserve(rects_.size());
        for (const auto& r : rects_) out.push_back(r.id);
        return out;
    }

private:
    std::vector<Rect> rects_;
    Scalar max_width_ = 0;
};

/// A set of segments; cost is the plain sum of lengths (overlaps are not merged).
struct Solution {
    std::vector<Segment> segments;
    Scalar cost = 0;

    static Solution from(std::vector<Segment> segs) {
        Solution s;
        s.segments = std::move(segs);
        for (const auto& seg : s.segments) s.cost += seg.length();
        return s;
    }

    void append(const Solution& other) {
        segments.insert(segments.end(), other.segments.begin(), other.segments.end());
        cost += other.cost;
    }

    void append(const Segment& seg) {
        segments.push_back(seg);
        cost += seg.length();
    }
};

struct VerifyReport {
    bool feasible = true;
    std::vector<RectId> unstabbed_ids;
    Scalar recomputed_cost = 0;
};

inline VerifyReport verify(const Instance& inst, const Solution& sol) {
    VerifyReport rep;
    for (const auto& s : sol.segments) rep.recomputed_cost += s.length();
    for (const auto& r : inst.rects()) {
        bool hit = std::any_of(sol.segments.begin(), sol.segments.end(),
                               [&](const Segment& s) { return stabs(s, r); });
        if (!hit) rep.unstabbed_ids.push_back(r.id);
    }
    rep.feasible = rep.unstabbed_ids.empty();
    return rep;
}

/// All segments [xl_i, xr_j] x yt_k with xl_i <= xr_j, sorted and deduplicated.
/// Some minimum-cost solution uses only these.
inline std::vector<Segment> candidate_segments(const Instance& inst) {
    std::vector<Scalar> lefts, rights, tops;
    for (const auto& r : inst.rects()) {
        lefts.push_back(r.xl);
        rights.push_back(r.xr);
        tops.push_back(r.yt);
    }
    auto uniq = [](std::vector<Scalar>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(lefts);
    uniq(rights);
    uniq(tops);
    std::vector<Segment> out;
    for (const auto& l : lefts) {
        for (const auto& r : rights) {
            if (l > r) continue;
            for (const auto& y : tops) out.push_back(Segment{l, r, y});
        }
    }
    // lefts, rights, tops are each sorted, so `out` is already in Segment order.
    return out;
}

/// Connected components of the open-interval overlap graph on x-projections.
/// Components come out left to right; rects keep their input order inside.
inline std::vector<Instance> split_independent(const Instance& inst) {
    std::vector<std::size_t> order(inst.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return inst[a].xl < inst[b].xl; });
    std::vector<Instance> out;
    std::vector<std::size_t> group;
    Scalar reach;
    for (auto p : order) {
        if (!group.empty() && inst[p].xl >= reach) {
            std::sort(group.begin(), group.end());
            out.push_back(inst.subset(group));
            group.clear();
        }
        if (group.empty() || inst[p].xr > reach) reach = inst[p].xr;
        group.push_back(p);
    }
    if (!group.empty()) {
        std::sort(group.begin(), group.end());
        out.push_back(inst.subset(group));
    }
    return out;
}

}  // namespace stabkit
