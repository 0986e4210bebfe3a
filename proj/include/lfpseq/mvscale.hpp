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

#include <cstdint>
#include <optional>

#include "lfpseq/view_grid.hpp"

namespace lfpseq {

// Quarter-pel motion vector.
struct MotionVector {
  std::int32_t x = 0;
  std::int32_t y = 0;
  auto operator<=>(const MotionVector&) const = default;
};

inline constexpr std::int32_t kMvMin = -(1 << 15);
inline constexpr std::int32_t kMvMax = (1 << 15) - 1;

// View coordinates driving the scaling ratio.
//   spatial:  mv_cur = mv_donor * (cur_ref - cur) / (donor_ref - cur)
//   temporal: mv_cur = mv_donor * (cur_ref - cur) / (donor_ref - colocated)
struct ScalingAnchors {
  ViewCoord cur;
  ViewCoord cur_ref;
  ViewCoord donor_ref;
  std::optional<ViewCoord> colocated;
};

struct ScaledMv {
  MotionVector mv;
  bool x_copied = false;  // component passed through because a delta was zero
  bool y_copied = false;
  bool any_copied() const { return x_copied || y_copied; }
};

// round_half_away_from_zero(value * num / den) clamped to the MV range.
// den must be non-zero.
std::int32_t scale_component(std::int32_t value, std::int64_t num, std::int64_t den);

ScaledMv scale_spatial_detailed(MotionVector mv, const ScalingAnchors& a);
ScaledMv scale_temporal_detailed(MotionVector mv, const ScalingAnchors& a);

inline MotionVector scale_spatial(MotionVector mv, const ScalingAnchors& a) { return scale_spatial_detailed(mv, a).mv; }
inline MotionVector scale_temporal(MotionVector mv, const ScalingAnchors& a) {
  return scale_temporal_detailed(mv, a).mv;
}

}  // namespace lfpseq
