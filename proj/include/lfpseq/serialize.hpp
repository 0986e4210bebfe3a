// Copyright 2026 The lfpseq Authors. All Rights Reserved.
//
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

#include <json.hpp>

#include "lfpseq/codec.hpp"
#include "lfpseq/scheduler.hpp"
#include "lfpseq/view_grid.hpp"

namespace lfpseq {

using Json = nlohmann::json;

void to_json(Json& j, const Cell& c);
void from_json(const Json& j, Cell& c);
void to_json(Json& j, const ViewCoord& v);
void from_json(const Json& j, ViewCoord& v);
void to_json(Json& j, const GridGeometry& g);
void from_json(const Json& j, GridGeometry& g);
void to_json(Json& j, const CodecConfig& c);
void from_json(const Json& j, CodecConfig& c);

Json poc_map_json(const PocMap& pocs);

// order, per-POC refs/RPS/class/quadrant/pass/coord/qp offset, and the
// distance-ordered reference lists for `n_per_list`.
Json schedule_json(const CodingSchedule& s, const GridGeometry& geom, int n_per_list);

Json plan_json(const SequencePlan& plan);

Json dpb_json(const DpbTimeline& t);

}  // namespace lfpseq
