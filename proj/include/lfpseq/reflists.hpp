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

#include <functional>
#include <span>
#include <vector>

#include "lfpseq/view_grid.hpp"

namespace lfpseq {

struct DirectionPartition {
  std::vector<int> forward;
  std::vector<int> backward;
};

enum class DirectionRule {
  kRaster,     // forward = earlier in row-major grid order
  kStrictRow,  // forward = rows above; same row falls back to raster order
};

DirectionPartition partition_directions(int cur, std::span<const int> available, const PocMap& pocs,
                                        DirectionRule rule = DirectionRule::kRaster);

struct ReferenceLists {
  std::vector<int> list0;
  std::vector<int> list1;
  int n_per_list = 0;
  int borrowed0 = 0;  // trailing list0 entries taken from the backward set
  int borrowed1 = 0;
};

// Sort key for candidate references; smaller is closer.
using DistanceFn = std::function<double(int candidate)>;

// Sorts each direction by distance (ties: smaller |poc - cur|, then smaller
// poc), truncates to n_per_list and tops up a short list with the other
// direction's nearest entries. Throws SchedulingError when both directions
// are empty and ConfigError when n_per_list < 1.
ReferenceLists build_lists(int cur, const DirectionPartition& partition, int n_per_list, const DistanceFn& dist);

// Euclidean view distance over the POC map.
ReferenceLists build_lists(int cur, const DirectionPartition& partition, int n_per_list, const PocMap& pocs);

// 1-D behavior for a plain frame sequence: forward = smaller index, ordered by
// |index difference|.
ReferenceLists build_lists_1d(int cur, std::span<const int> available, int n_per_list);

}  // namespace lfpseq
