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

#include "lfpseq/serialize.hpp"

namespace lfpseq {

void to_json(Json& j, const Cell& c) { j = Json{{"row", c.row}, {"col", c.col}}; }
void from_json(const Json& j, Cell& c) {
  c.row = j.at("row").get<int>();
  c.col = j.at("col").get<int>();
}

void to_json(Json& j, const ViewCoord& v) { j = Json{{"x", v.x}, {"y", v.y}}; }
void from_json(const Json& j, ViewCoord& v) {
  v.x = j.at("x").get<int>();
  v.y = j.at("y").get<int>();
}

void to_json(Json& j, const GridGeometry& g) {
  j = Json{{"rows", g.rows}, {"cols", g.cols}, {"removed", g.removed}, {"microlens_pitch", g.microlens_pitch}};
}
void from_json(const Json& j, GridGeometry& g) {
  g.rows = j.at("rows").get<int>();
  g.cols = j.at("cols").get<int>();
  g.removed = j.value("removed", std::vector<Cell>{});
  g.microlens_pitch = j.value("microlens_pitch", 1);
  g.validate();
}

void to_json(Json& j, const CodecConfig& c) {
  j = Json{{"block_size", c.block_size}, {"search_range", c.search_range}, {"qp", c.qp}, {"n_per_list", c.n_per_list}};
}
void from_json(const Json& j, CodecConfig& c) {
  const CodecConfig d;
  c.block_size = j.value("block_size", d.block_size);
  c.search_range = j.value("search_range", d.search_range);
  c.qp = j.value("qp", d.qp);
  c.n_per_list = j.value("n_per_list", d.n_per_list);
}

Json poc_map_json(const PocMap& pocs) {
  Json views = Json::array();
  for (int p = 0; p < pocs.size(); ++p) {
    const Cell c = pocs.cell_of(p);
    const ViewCoord v = pocs.coord_of(p);
    views.push_back({{"poc", p}, {"row", c.row}, {"col", c.col}, {"x", v.x}, {"y", v.y}});
  }
  return Json{{"geometry", pocs.geometry()}, {"views", views}};
}

namespace {

Json lists_json(const ReferenceLists& l) {
  return Json{{"list0", l.list0}, {"list1", l.list1}, {"borrowed0", l.borrowed0}, {"borrowed1", l.borrowed1}};
}

}  // namespace

Json schedule_json(const CodingSchedule& s, const GridGeometry& geom, int n_per_list) {
  const PocMap pocs(geom);
  Json frames = Json::array();
  for (int poc : s.order) {
    const auto p = static_cast<std::size_t>(poc);
    Json f{{"poc", poc},
           {"position", s.position(poc)},
           {"coord", s.coords[p]},
           {"class", to_string(s.classes[p])},
           {"quadrant", to_string(s.quadrant[p])},
           {"pass", to_string(s.pass[p])},
           {"qp_offset", s.qp_offset[p]},
           {"refs", s.refs[p]},
           {"rps", s.rps[p]}};
    if (poc != s.order.front() && !s.rps[p].empty())
      f["lists"] = lists_json(build_lists(poc, partition_directions(poc, s.rps[p], pocs), n_per_list, pocs));
    frames.push_back(std::move(f));
  }
  const DpbTimeline t = simulate_dpb(s);
  return Json{{"geometry", geom}, {"order", s.order}, {"frames", frames}, {"dpb_peak", t.peak}};
}

Json plan_json(const SequencePlan& plan) {
  Json frames = Json::array();
  for (const FramePlan& f : plan.frames) {
    frames.push_back({{"frame", f.frame},
                      {"view", f.view},
                      {"qp", f.qp},
                      {"intra", f.intra},
                      {"rps", f.rps},
                      {"lists", lists_json(f.lists)}});
  }
  return Json{{"structure", to_string(plan.structure)},
              {"gop", plan.gop},
              {"frames", frames},
              {"scaling_coords", plan.scaling_coords}};
}

Json dpb_json(const DpbTimeline& t) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < t.frame.size(); ++k)
    steps.push_back({{"frame", t.frame[k]}, {"members", t.members[k]}, {"occupancy", t.occupancy[k]}});
  return Json{{"peak", t.peak}, {"steps", steps}};
}

}  // namespace lfpseq
