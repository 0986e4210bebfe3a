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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "lfpseq/reflists.hpp"
#include "lfpseq/scheduler.hpp"

using namespace lfpseq;

namespace {

const std::vector<int> kFrame14Available = {13, 6, 3, 15, 38, 41, 44, 77, 80, 0};

// Repeated minimum selection over (squared distance, |dpoc|, poc).
std::vector<int> select_sorted(int cur, std::vector<int> pool, const std::vector<ViewCoord>& xy) {
  std::vector<int> out;
  while (!pool.empty()) {
    auto key = [&](int p) {
      const int dx = xy[p].x - xy[cur].x, dy = xy[p].y - xy[cur].y;
      return std::make_tuple(dx * dx + dy * dy, std::abs(p - cur), p);
    };
    auto best = pool.begin();
    for (auto it = pool.begin(); it != pool.end(); ++it)
      if (key(*it) < key(*best)) best = it;
    out.push_back(*best);
    pool.erase(best);
  }
  return out;
}

std::vector<int> oracle_list(const std::vector<int>& native, const std::vector<int>& other, std::size_t n) {
  std::vector<int> l(native.begin(), native.begin() + static_cast<long>(std::min(n, native.size())));
  for (int p : other) {
    if (l.size() >= n) break;
    if (std::find(l.begin(), l.end(), p) == l.end()) l.push_back(p);
  }
  return l;
}

}  // namespace

TEST_SUITE("reflists") {
  TEST_CASE("frame 14 direction split") {
    const PocMap m(GridGeometry::default_geometry());
    const DirectionPartition d = partition_directions(14, kFrame14Available, m);
    std::vector<int> f = d.forward, b = d.backward;
    std::sort(f.begin(), f.end());
    std::sort(b.begin(), b.end());
    CHECK(f == std::vector<int>{3, 6, 13});
    CHECK(b == std::vector<int>{0, 15, 38, 41, 44, 77, 80});
  }

  TEST_CASE("frame 14 lists") {
    const PocMap m(GridGeometry::default_geometry());
    const ReferenceLists l = build_lists(14, partition_directions(14, kFrame14Available, m), 4, m);
    CHECK(l.list0 == std::vector<int>{13, 3, 6, 15});
    CHECK(l.list1 == std::vector<int>{15, 41, 38, 44});
    CHECK(l.borrowed0 == 1);
    CHECK(l.borrowed1 == 0);
  }

  TEST_CASE("schedule-derived lists for frame 14 match") {
    const GridGeometry g = GridGeometry::default_geometry();
    const PocMap m(g);
    const CodingSchedule s = build_schedule(g);
    const ReferenceLists l = build_lists(14, partition_directions(14, s.rps[14], m), 4, m);
    CHECK(l.list0 == std::vector<int>{13, 3, 6, 15});
    CHECK(l.list1 == std::vector<int>{15, 41, 38, 44});
  }

  TEST_CASE("edge cases") {
    const PocMap m(GridGeometry::default_geometry());
    const std::vector<int> none;
    const DirectionPartition empty = partition_directions(14, none, m);
    CHECK(empty.forward.empty());
    CHECK(empty.backward.empty());
    CHECK_THROWS_AS(build_lists(14, empty, 4, m), SchedulingError);
    const std::vector<int> one = {41};
    const ReferenceLists l = build_lists(14, partition_directions(14, one, m), 4, m);
    CHECK(l.list0 == one);
    CHECK(l.list1 == one);
    CHECK_THROWS_AS(build_lists(14, partition_directions(14, one, m), 0, m), ConfigError);
  }

  TEST_CASE("3x3 last raster view sees only later frames as backward") {
    GridGeometry g;
    g.rows = g.cols = 3;
    const PocMap m(g);
    const std::vector<int> avail = {0, 1, 2, 3, 4, 5, 6, 7};
    const DirectionPartition d = partition_directions(8, avail, m);
    CHECK(d.backward.empty());
    CHECK(d.forward.size() == 8);
    const DirectionPartition d1 = partition_directions(1, std::vector<int>{0, 2, 5}, m);
    CHECK(d1.forward.empty());
    CHECK(d1.backward.size() == 3);
  }

  TEST_CASE("strict-row rule") {
    const PocMap m(GridGeometry::default_geometry());
    // Same row as 14: 13 and 15; raster order splits them the same way.
    const DirectionPartition d = partition_directions(14, kFrame14Available, m, DirectionRule::kStrictRow);
    std::vector<int> f = d.forward;
    std::sort(f.begin(), f.end());
    CHECK(f == std::vector<int>{3, 6, 13});
  }

  TEST_CASE("random coordinates match a selection oracle") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int trial = 0; trial < 300; ++trial) {
      const int n_frames = 12;
      std::vector<ViewCoord> xy(n_frames);
      for (auto& v : xy) v = {c(rng), c(rng)};
      const int cur = std::uniform_int_distribution<int>(0, n_frames - 1)(rng);
      DirectionPartition part;
      for (int p = 0; p < n_frames; ++p) {
        if (p == cur || rng() % 3 == 0) continue;
        (rng() % 2 ? part.forward : part.backward).push_back(p);
      }
      if (part.forward.empty() && part.backward.empty()) continue;
      for (int n : {1, 2, 4}) {
        const ReferenceLists l =
            build_lists(cur, part, n, [&](int p) { return distance(xy[cur], xy[p]); });
        const auto f = select_sorted(cur, part.forward, xy);
        const auto b = select_sorted(cur, part.backward, xy);
        CHECK(l.list0 == oracle_list(f, b, static_cast<std::size_t>(n)));
        CHECK(l.list1 == oracle_list(b, f, static_cast<std::size_t>(n)));
        const std::size_t avail = part.forward.size() + part.backward.size();
        CHECK(l.list0.size() == std::min<std::size_t>(n, avail));
        CHECK(l.list1.size() == std::min<std::size_t>(n, avail));
      }
    }
  }

  TEST_CASE("1-D lists order by POC distance") {
    const std::vector<int> avail = {0, 16, 8, 4};
    const ReferenceLists l = build_lists_1d(6, avail, 2);
    CHECK(l.list0 == std::vector<int>{4, 0});
    CHECK(l.list1 == std::vector<int>{8, 16});
    const ReferenceLists only_fwd = build_lists_1d(20, avail, 2);
    CHECK(only_fwd.list0 == std::vector<int>{16, 8});
    CHECK(only_fwd.list1 == std::vector<int>{16, 8});
  }
}
