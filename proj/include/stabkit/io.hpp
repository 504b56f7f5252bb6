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

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "stabkit/decompose.hpp"
#include "stabkit/geometry.hpp"

namespace stabkit {

using Json = nlohmann::ordered_json;

/// Scalars are written as exact "p" or "p/q" strings. Reading also accepts
/// decimal strings and JSON integers; JSON floats are rejected as inexact.
inline Scalar scalar_from_json(const Json& j) {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<std::int64_t>());
    throw ParameterError("scalar must be a string or an integer, got " + j.dump());
}

inline Json scalar_to_json(const Scalar& s) { return to_string(s); }

inline Instance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rects") || !j["rects"].is_array()) {
        throw ParameterError("instance JSON needs a \"rects\" array");
    }
    std::vector<Rect> rects;
    std::size_t pos = 0;
    for (const auto& r : j["rects"]) {
        ++pos;
        try {
            RectId id = r.contains("id") ? r.at("id").get<RectId>() : static_cast<RectId>(pos);
            rects.push_back(Rect{id, scalar_from_json(r.at("xl")), scalar_from_json(r.at("xr")),
                                 scalar_from_json(r.at("yb")), scalar_from_json(r.at("yt"))});
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError("rect #" + std::to_string(pos) + ": " + e.what());
        }
    }
    return Instance(std::move(rects));
}

inline Json instance_to_json(const Instance& inst) {
    Json rects = Json::array();
    for (const auto& r : inst.rects()) {
        rects.push_back(Json{{"id", r.id},
                             {"xl", scalar_to_json(r.xl)},
                             {"xr", scalar_to_json(r.xr)},
                             {"yb", scalar_to_json(r.yb)},
                             {"yt", scalar_to_json(r.yt)}});
    }
    return Json{{"rects", rects}};
}

inline Json segment_to_json(const Segment& s) {
    return Json{{"xl", scalar_to_json(s.xl)}, {"xr", scalar_to_json(s.xr)}, {"y", scalar_to_json(s.y)}};
}

inline Json segments_to_json(const std::vector<Segment>& segs) {
    Json out = Json::array();
    for (const auto& s : segs) out.push_back(segment_to_json(s));
    return out;
}

inline Json solution_to_json(const Solution& sol) {
    return Json{{"segments", segments_to_json(sol.segments)},
                {"cost", scalar_to_json(sol.cost)},
                {"cost_decimal", to_decimal(sol.cost)}};
}

/// Segments are required; a "cost" field, if present, is ignored here and the
/// cost is recomputed from the segments.
inline Solution solution_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array()) {
        throw ParameterError("solution JSON needs a \"segments\" array");
    }
    std::vector<Segment> segs;
    for (const auto& s : j["segments"]) {
        try {
            Segment seg{scalar_from_json(s.at("xl")), scalar_from_json(s.at("xr")), scalar_from_json(s.at("y"))};
            if (seg.xr < seg.xl) throw ParameterError("segment with xr < xl");
            segs.push_back(seg);
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError(std::string("segment: ") + e.what());
        }
    }
    return Solution::from(std::move(segs));
}

inline Json verify_report_to_json(const VerifyReport& rep) {
    return Json{{"feasible", rep.feasible},
                {"unstabbed_ids", rep.unstabbed_ids},
                {"recomputed_cost", scalar_to_json(rep.recomputed_cost)},
                {"recomputed_cost_decimal", to_decimal(rep.recomputed_cost)}};
}

inline Json decomposition_to_json(const Decomposition& d) {
    Json subs = Json::array();
    for (std::size_t i = 0; i < d.sub_instances.size(); ++i) {
        subs.push_back(Json{{"strip", d.strip_of[i]},
                            {"approx8_cost", scalar_to_json(d.opt_upper_bounds[i])},
                            {"trigger", d.triggers[i] ? scalar_to_json(*d.triggers[i]) : Json(nullptr)},
                            {"instance", instance_to_json(d.sub_instances[i])}});
    }
    Json strips = Json::array();
    for (const auto& [l, r] : d.strip_bounds) strips.push_back(Json{{"left", scalar_to_json(l)}, {"right", scalar_to_json(r)}});
    return Json{{"width", scalar_to_json(d.width)},
                {"offset", scalar_to_json(d.offset)},
                {"paid_segments", segments_to_json(d.paid_segments)},
                {"strip_cost", scalar_to_json(d.strip_cost)},
                {"cut_cost", scalar_to_json(d.cut_cost)},
                {"paid_cost", scalar_to_json(d.paid_cost())},
                {"strips", strips},
                {"sub_instances", subs}};
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << text;
}

}  // namespace stabkit
