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

#include <cstdint>
#include <vector>

#include "stabkit/geometry.hpp"

namespace stabkit {

/// SplitMix64 (Steele, Lea, Flood 2014). next() advances the state by the
/// golden gamma 0x9E3779B97F4A7C15 and applies the standard mix; split()
/// seeds an independent stream from next(). Bounded draws use plain modulo
/// so other implementations can reproduce them bit for bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    SplitMix64 split() { return SplitMix64(next()); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

private:
    std::uint64_t state_;
};

struct UniformConfig {
    std::int64_t x_range = 20;  // xl drawn from [0, x_range]
    std::int64_t y_range = 20;  // yb drawn from [0, y_range]
    std::int64_t h_max = 6;     // height drawn from [0, h_max]
    Scalar w_min = 1;
    Scalar w_max = 6;
    std::int64_t grid = 2;      // x coordinates and widths are multiples of 1/grid
};

/// Rect ids are 1..n in generation order for every generator.
inline Instance gen_uniform(std::size_t n, std::uint64_t seed, const UniformConfig& cfg = {}) {
    if (cfg.grid < 1 || cfg.x_range < 0 || cfg.y_range < 0 || cfg.h_max < 0 || cfg.w_min <= 0 ||
        cfg.w_max < cfg.w_min) {
        throw ParameterError("invalid uniform generator configuration");
    }
    const Scalar g(cfg.grid);
    const BigInt lo = ceil_int(cfg.w_min * g);
    const BigInt hi = floor_int(cfg.w_max * g);
    if (lo > hi) throw ParameterError("no grid width inside [w_min, w_max]");
    SplitMix64 rng(seed);
    std::vector<Rect> rects;
    for (std::size_t i = 0; i < n; ++i) {
        Scalar xl(rng.uniform(0, cfg.x_range * cfg.grid), cfg.grid);
        Scalar w(rng.uniform(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)), cfg.grid);
        std::int64_t yb = rng.uniform(0, cfg.y_range);
        std::int64_t h = rng.uniform(0, cfg.h_max);
        rects.push_back(Rect{static_cast<RectId>(i + 1), xl, xl + w, Scalar(yb), Scalar(yb + h)});
    }
    return Instance(std::move(rects));
}

/// Random dyadic intervals inside [0, 2^D]: each rect descends a random number
/// of halving steps from the root, choosing a random half each time. Dyadic
/// intervals are nested or interior-disjoint, so the result is laminar.
inline Instance gen_laminar(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    int depth = 2;
    while ((std::size_t{1} << (depth - 2)) < n) ++depth;
    std::vector<Rect> rects;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t steps = rng.uniform(0, depth);
        std::int64_t index = 0;
        for (std::int64_t s = 0; s < steps; ++s) index = 2 * index + rng.uniform(0, 1);
        std::int64_t len = std::int64_t{1} << (depth - steps);
        std::int64_t yb = rng.uniform(0, 12);
        std::int64_t h = rng.uniform(0, 6);
        rects.push_back(Rect{static_cast<RectId>(i + 1), Scalar(index * len), Scalar((index + 1) * len), Scalar(yb),
                             Scalar(yb + h)});
    }
    return Instance(std::move(rects));
}

/// Widths delta + (1 - delta) * j / 8 for j in [0, 8], so every width lies in
/// [delta, 1]. Left edges are multiples of 1/4 in [0, n].
inline Instance gen_bounded_ratio(std::size_t n, const Scalar& delta, std::uint64_t seed) {
    if (!(delta > 0 && delta <= 1)) throw ParameterError("gen_bounded_ratio requires 0 < delta <= 1");
    SplitMix64 rng(seed);
    std::vector<Rect> rects;
    for (std::size_t i = 0; i < n; ++i) {
        Scalar xl(rng.uniform(0, 4 * static_cast<std::int64_t>(n)), 4);
        Scalar w = delta + (1 - delta) * Scalar(rng.uniform(0, 8), 8);
        std::int64_t yb = rng.uniform(0, 10);
        std::int64_t h = rng.uniform(0, 5);
        rects.push_back(Rect{static_cast<RectId>(i + 1), xl, xl + w, Scalar(yb), Scalar(yb + h)});
    }
    return Instance(std::move(rects));
}

}  // namespace stabkit
