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

#include "lfpseq/reflists.hpp"

#include <algorithm>
#include <cstdlib>

#include "lfpseq/types.hpp"

namespace lfpseq {

DirectionPartition partition_directions(int cur, std::span<const int> available, const PocMap& pocs,
                                        DirectionRule rule) {
  DirectionPartition out;
  const Cell cc = pocs.cell_of(cur);
  const int cur_raster = pocs.raster_index(cur);
  for (int poc : available) {
    bool forward = false;
    if (rule == DirectionRule::kRaster) {
      forward = pocs.raster_index(poc) < cur_raster;
    } else {
      const Cell c = pocs.cell_of(poc);
      forward = c.row < cc.row || (c.row == cc.row && c.col < cc.col);
    }
    (forward ? out.forward : out.backward).push_back(poc);
  }
  return out;
}

namespace {

std::vector<int> sorted_by_distance(int cur, std::vector<int> v, const DistanceFn& dist) {
  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(v.size());
  for (int p : v) keyed.emplace_back(dist(p), p);
  std::sort(keyed.begin(), keyed.end(), [cur](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    const int da = std::abs(a.second - cur);
    const int db = std::abs(b.second - cur);
    if (da != db) return da < db;
    return a.second < b.second;
  });
  for (std::size_t k = 0; k < keyed.size(); ++k) v[k] = keyed[k].second;
  return v;
}

std::vector<int> fill_list(const std::vector<int>& native, const std::vector<int>& other, std::size_t n,
                           int& borrowed) {
  std::vector<int> list(native.begin(), native.begin() + static_cast<long>(std::min(n, native.size())));
  borrowed = 0;
  for (int p : other) {
    if (list.size() >= n) break;
    if (std::find(list.begin(), list.end(), p) != list.end()) continue;
    list.push_back(p);
    ++borrowed;
  }
  return list;
}

}  // namespace

ReferenceLists build_lists(int cur, const DirectionPartition& partition, int n_per_list, const DistanceFn& dist) {
  if (n_per_list < 1) throw ConfigError("n_per_list must be at least 1");
  if (partition.forward.empty() && partition.backward.empty())
    throw SchedulingError("frame " + std::to_string(cur) + " has no available references");
  const auto fwd = sorted_by_distance(cur, partition.forward, dist);
  const auto bwd = sorted_by_distance(cur, partition.backward, dist);
  ReferenceLists out;
  out.n_per_list = n_per_list;
  const auto n = static_cast<std::size_t>(n_per_list);
  out.list0 = fill_list(fwd, bwd, n, out.borrowed0);
  out.list1 = fill_list(bwd, fwd, n, out.borrowed1);
  return out;
}

ReferenceLists build_lists(int cur, const DirectionPartition& partition, int n_per_list, const PocMap& pocs) {
  const ViewCoord c = pocs.coord_of(cur);
  return build_lists(cur, partition, n_per_list, [&](int p) { return distance(c, pocs.coord_of(p)); });
}

ReferenceLists build_lists_1d(int cur, std::span<const int> available, int n_per_list) {
  DirectionPartition part;
  for (int f : available) (f < cur ? part.forward : part.backward).push_back(f);
  return build_lists(cur, part, n_per_list, [cur](int f) { return static_cast<double>(std::abs(f - cur)); });
}

}  // namespace lfpseq
