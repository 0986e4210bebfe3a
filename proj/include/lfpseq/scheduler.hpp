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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfpseq/view_grid.hpp"

namespace lfpseq {

// Hierarchical visiting order along one axis segment: 0, L-1, then the
// ceil-midpoint of each interval, upper half before lower half.
// axis_order_2d(7) == {0, 6, 3, 5, 4, 2, 1}.
std::vector<int> axis_order_2d(int length);

// Depth-first 1-D GOP order: 0, gop, then floor-midpoints, lower half first.
// Throws ConfigError unless gop is a power of two.
std::vector<int> gop_order_1d(int gop);

// Direct hierarchical parents of each index produced by axis_order_2d.
// Index 0 has none; L-1 has {0}; a midpoint has its interval endpoints.
std::vector<std::vector<int>> axis_brackets(int length);

enum class Quadrant { kNone, kTopLeft, kTopRight, kBottomRight, kBottomLeft };

std::string to_string(Quadrant q);
Quadrant quadrant_from_string(const std::string& s);

// TL = {x>=0, y>=0}, TR = {x<0, y>=0}, BR = {x<0, y<0}, BL = {x>=0, y<0};
// the center belongs to none.
Quadrant quadrant_of(ViewCoord v);
std::vector<Quadrant> quadrant_partition(const GridGeometry& geom);

enum class FrameClass { kAnchor, kRowReference, kImmediate, kNonReference };

std::string to_string(FrameClass c);
FrameClass frame_class_from_string(const std::string& s);
// QP offset over the intra QP: Anchor +1 ... NonReference +4.
int class_rank(FrameClass c);

// Coding order plus the frames each frame may reference directly.
struct CodingPlan {
  std::vector<int> order;
  std::vector<std::vector<int>> refs;  // per POC, sorted
  std::vector<Quadrant> pass;          // per POC, quadrant pass that coded it
};

CodingPlan coding_order(const GridGeometry& geom);

struct ScheduleOptions {
  // Per-POC class overrides. Only affects QP offsets; a frame that is
  // referenced cannot be overridden to NonReference.
  std::map<int, FrameClass> class_overrides;
};

std::vector<FrameClass> classify_frames(const GridGeometry& geom);

// RPS(f) = frames coded before f that f or any later frame references.
// Throws SchedulingError if a reference is coded after its user or the chain
// constraint RPS(next) within RPS(cur) + {cur} is broken.
std::vector<std::vector<int>> build_rps(const std::vector<int>& order,
                                        const std::vector<std::vector<int>>& refs);

struct CodingSchedule {
  std::vector<int> order;
  std::vector<std::vector<int>> refs;
  std::vector<std::vector<int>> rps;
  std::vector<FrameClass> classes;
  std::vector<Quadrant> quadrant;
  std::vector<Quadrant> pass;
  std::vector<ViewCoord> coords;
  std::vector<int> qp_offset;

  int frame_count() const { return static_cast<int>(order.size()); }
  // Index of `poc` in the coding order.
  int position(int poc) const;
};

CodingSchedule build_schedule(const GridGeometry& geom, const ScheduleOptions& opts = {});

// Restricts a schedule to the center view plus one quadrant and recomputes
// the RPS over the shortened order.
CodingSchedule restrict_to_quadrant(const CodingSchedule& s, Quadrant q);

// 1-D hierarchical schedule over frames 0..frame_count-1 with GOP `gop`;
// a trailing partial GOP is split the same way. QP offset is the temporal
// layer capped at 4.
struct SequenceSchedule {
  std::vector<int> order;
  std::vector<std::vector<int>> refs;
  std::vector<std::vector<int>> rps;
  std::vector<int> qp_offset;
};

SequenceSchedule build_schedule_1d(int frame_count, int gop);

struct DpbTimeline {
  std::vector<int> frame;                  // coded frame at each step
  std::vector<std::vector<int>> members;   // buffer content while coding it
  std::vector<int> occupancy;
  int peak = 0;
};

// Replays the coding order: each decoded frame enters the buffer if a later
// frame references it and leaves once no later RPS holds it. Throws
// SimulationError if a frame needed by an RPS is absent from the buffer.
DpbTimeline simulate_dpb(const std::vector<int>& order, const std::vector<std::vector<int>>& rps);
inline DpbTimeline simulate_dpb(const CodingSchedule& s) { return simulate_dpb(s.order, s.rps); }

}  // namespace lfpseq
