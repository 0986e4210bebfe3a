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

#include "lfpseq/mvscale.hpp"

#include <algorithm>
#include <stdexcept>

namespace lfpseq {

std::int32_t scale_component(std::int32_t value, std::int64_t num, std::int64_t den) {
  const std::int64_t prod = static_cast<std::int64_t>(value) * num;
  const bool negative = (prod < 0) != (den < 0);
  const std::int64_t a = prod < 0 ? -prod : prod;
  const std::int64_t d = den < 0 ? -den : den;
  std::int64_t q = (2 * a + d) / (2 * d);
  if (negative) q = -q;
  return static_cast<std::int32_t>(std::clamp<std::int64_t>(q, kMvMin, kMvMax));
}

namespace {

std::int32_t scale_axis(std::int32_t v, int num, int den, bool& copied) {
  if (num == 0 || den == 0) {
    copied = true;
    return v;
  }
  return scale_component(v, num, den);
}

}  // namespace

ScaledMv scale_spatial_detailed(MotionVector mv, const ScalingAnchors& a) {
  ScaledMv out;
  out.mv.x = scale_axis(mv.x, a.cur_ref.x - a.cur.x, a.donor_ref.x - a.cur.x, out.x_copied);
  out.mv.y = scale_axis(mv.y, a.cur_ref.y - a.cur.y, a.donor_ref.y - a.cur.y, out.y_copied);
  return out;
}

ScaledMv scale_temporal_detailed(MotionVector mv, const ScalingAnchors& a) {
  if (!a.colocated) throw std::invalid_argument("temporal scaling needs the colocated view");
  ScaledMv out;
  out.mv.x = scale_axis(mv.x, a.cur_ref.x - a.cur.x, a.donor_ref.x - a.colocated->x, out.x_copied);
  out.mv.y = scale_axis(mv.y, a.cur_ref.y - a.cur.y, a.donor_ref.y - a.colocated->y, out.y_copied);
  return out;
}

}  // namespace lfpseq
