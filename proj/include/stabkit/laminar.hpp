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
#include <unordered_map>
#include <vector>

#include "stabkit/geometry.hpp"

namespace stabkit {

/// True iff every pair of x-projections is nested or has disjoint interiors.
inline bool is_laminar(const Instance& inst) {
    const auto& rs = inst.rects();
    for (std::size_t a = 0; a < rs.size(); ++a) {
        for (std::size_t b = a + 1; b < rs.size(); ++b) {
            const Rect& p = rs[a];
            const Rect& q = rs[b];
            bool disjoint = p.xr <= q.xl || q.xr <= p.xl;
            bool nested = (p.xl <= q.xl && q.xr <= p.xr) || (q.xl <= p.xl && p.xr <= q.xr);
            if (!disjoint && !nested) return false;
        }
    }
    return true;
}

struct LaminarOptions {
    bool memoize = true;
};

struct LaminarStats {
    std::size_t states = 0;       // distinct boxes evaluated
    std::size_t evaluations = 0;  // calls to the box recurrence
};

/// Exact solver for laminar instances: memoized recursion over boxes on
/// compressed coordinates. In each box the widest contained rect W is stabbed
/// by [xl_W, xr_W] x y for every admissible top-edge level y, and the rest of
/// the box falls apart into four independent boxes (left, right, below, above).
class LaminarSolver {
public:
    explicit LaminarSolver(const Instance& inst, LaminarOptions opts = {}) : inst_(inst), opts_(opts) {
        if (!is_laminar(inst)) {
            throw PreconditionError("solve_laminar requires a laminar instance");
        }
        for (const auto& r : inst.rects()) {
            xs_.push_back(r.xl);
            xs_.push_back(r.xr);
            ys_.push_back(r.yb);
            ys_.push_back(r.yt);
        }
        compress(xs_);
        compress(ys_);
        is_top_.assign(ys_.size(), false);
        for (const auto& r : inst.rects()) {
            Idx rx{index_of(xs_, r.xl), index_of(xs_, r.xr), index_of(ys_, r.yb), index_of(ys_, r.yt)};
            idx_.push_back(rx);
            is_top_[rx.t] = true;
        }
    }

    Solution solve() {
        if (inst_.empty()) return {};
        Key root{0, last(xs_), 0, last(ys_)};
        Scalar cost = value(root);
        std::vector<Segment> segs;
        rebuild(root, segs);
        Solution sol = Solution::from(std::move(segs));
        if (sol.cost != cost) throw CorruptionError("laminar reconstruction cost mismatch");
        return sol;
    }

    const LaminarStats& stats() const { return stats_; }

private:
    struct Idx {
        std::uint32_t l, r, b, t;
    };
    struct Key {
        std::uint32_t i, j, u, v;
        std::uint64_t pack() const {
            return (std::uint64_t{i} << 48) | (std::uint64_t{j} << 32) | (std::uint64_t{u} << 16) | v;
        }
    };
    struct Entry {
        Scalar cost;
        std::int64_t widest = -1;  // position in inst_, -1 for an empty box
        std::uint32_t level = 0;   // chosen y level for the widest rect
    };

    static void compress(std::vector<Scalar>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    static std::uint32_t index_of(const std::vector<Scalar>& v, const Scalar& x) {
        return static_cast<std::uint32_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    }
    static std::uint32_t last(const std::vector<Scalar>& v) { return static_cast<std::uint32_t>(v.size() - 1); }

    bool inside(const Idx& r, const Key& k) const { return k.i <= r.l && r.r <= k.j && k.u <= r.b && r.t <= k.v; }

    // Widest rect inside the box (lowest id on ties) and the number of rects inside.
    std::pair<std::int64_t, std::size_t> widest_in(const Key& k) const {
        std::int64_t best = -1;
        std::size_t count = 0;
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            if (!inside(idx_[p], k)) continue;
            ++count;
            if (best < 0) {
                best = static_cast<std::int64_t>(p);
                continue;
            }
            const Rect& cur = inst_[p];
            const Rect& bst = inst_[static_cast<std::size_t>(best)];
            if (cur.width() > bst.width() || (cur.width() == bst.width() && cur.id < bst.id)) {
                best = static_cast<std::int64_t>(p);
            }
        }
        return {best, count};
    }

    // Sub-boxes created by stabbing W at level y. Empty optionals are boxes
    // with no y room left.
    struct Children {
        Key left, right;
        bool has_below, has_above;
        Key below, above;
    };
    Children children(const Key& k, const Idx& w, std::uint32_t y) const {
        Children c{};
        c.left = Key{k.i, w.l, k.u, k.v};
        c.right = Key{w.r, k.j, k.u, k.v};
        c.has_below = y > k.u;
        c.has_above = y < k.v;
        if (c.has_below) c.below = Key{w.l, w.r, k.u, y - 1};
        if (c.has_above) c.above = Key{w.l, w.r, y + 1, k.v};
        return c;
    }

    Entry evaluate(const Key& k) {
        ++stats_.evaluations;
        auto [w, count] = widest_in(k);
        Entry e;
        if (count == 0) return e;
        const Idx& wi = idx_[static_cast<std::size_t>(w)];
        e.widest = w;
        e.cost = inst_[static_cast<std::size_t>(w)].width();
        if (count == 1) {
            e.level = wi.t;
            return e;
        }
        // left/right do not depend on y.
        Children any = children(k, wi, wi.t);
        Scalar sides = value(any.left) + value(any.right);
        bool have = false;
        Scalar best;
        for (std::uint32_t y = wi.b; y <= wi.t; ++y) {
            if (!is_top_[y]) continue;
            Children c = children(k, wi, y);
            Scalar v = (c.has_below ? value(c.below) : Scalar(0)) + (c.has_above ? value(c.above) : Scalar(0));
            if (!have || v < best) {
                best = v;
                e.level = y;
                have = true;
            }
        }
        e.cost += sides + best;
        return e;
    }

    // Node-based map: references stay valid while recursion inserts.
    const Entry& entry(const Key& k) {
        auto it = memo_.find(k.pack());
        if (it != memo_.end()) return it->second;
        Entry e = evaluate(k);
        ++stats_.states;
        return memo_.emplace(k.pack(), std::move(e)).first->second;
    }

    Scalar value(const Key& k) { return opts_.memoize ? entry(k).cost : evaluate(k).cost; }

    void rebuild(const Key& k, std::vector<Segment>& out) {
        Entry e = opts_.memoize ? entry(k) : evaluate(k);
        if (e.widest < 0) return;
        const Rect& w = inst_[static_cast<std::size_t>(e.widest)];
        const Idx& wi = idx_[static_cast<std::size_t>(e.widest)];
        out.push_back(Segment{w.xl, w.xr, ys_[e.level]});
        Children c = children(k, wi, e.level);
        rebuild(c.left, out);
        rebuild(c.right, out);
        if (c.has_below) rebuild(c.below, out);
        if (c.has_above) rebuild(c.above, out);
    }

    const Instance& inst_;
    LaminarOptions opts_;
    std::vector<Scalar> xs_, ys_;
    std::vector<bool> is_top_;
    std::vector<Idx> idx_;
    std::unordered_map<std::uint64_t, Entry> memo_;
    LaminarStats stats_;
};

inline Solution solve_laminar(const Instance& inst, LaminarOptions opts = {}) {
    return LaminarSolver(inst, opts).solve();
}

}  // namespace stabkit
