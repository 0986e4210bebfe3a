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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lfpseq/mvscale.hpp"
#include "lfpseq/types.hpp"

namespace lfpseq {

// Motion stored per block for neighbor and colocated prediction.
struct BlockMotion {
  bool inter = false;
  std::array<bool, 2> uses{false, false};
  std::array<MotionVector, 2> mv{};
  std::array<int, 2> ref_frame{-1, -1};
};

struct MvpContext {
  ViewCoord cur;                       // scaling coordinate of the current frame
  std::span<const ViewCoord> coords;   // scaling coordinate per frame id
  const BlockMotion* left = nullptr;
  const BlockMotion* above = nullptr;
  const BlockMotion* colocated = nullptr;
  int colocated_frame = -1;
};

struct MvpCandidate {
  MotionVector mv;
  bool copied = false;  // some component skipped scaling
};

inline constexpr int kMaxMvpCandidates = 2;

// Left and above neighbors (scaled spatially when they point elsewhere) and
// the colocated block (scaled temporally). Candidates are rounded to integer
// pel, unscaled copies sorted behind the rest, deduplicated, capped at two and
// topped up with the zero vector. Never empty.
std::vector<MotionVector> predict_mv(const MvpContext& ctx, int list, int target_ref_frame);
std::vector<MvpCandidate> predict_mv_detailed(const MvpContext& ctx, int list, int target_ref_frame);

// Rounds a quarter-pel vector to the nearest integer-pel one, half away from
// zero.
MotionVector round_to_integer_pel(MotionVector mv);

// Square luma block of the current picture.
struct BlockRef {
  const SamplePlane* plane = nullptr;
  int x = 0;
  int y = 0;
  int size = 0;
};

struct MotionCandidates {
  std::vector<const SamplePlane*> refs;              // one per ref_idx
  std::vector<std::vector<MotionVector>> predictors; // per ref_idx
};

struct MotionChoice {
  int list = -1;
  int ref_idx = 0;
  MotionVector mv;
  int mvp_index = 0;
  std::int64_t cost = 0;  // SAD * 2^16 + lambda_motion * bits, lambda in 2^-16 units
};

// Fixed-point lambda (2^16 scale) for the SAD-domain motion cost.
std::int64_t motion_lambda(int qp);
// Fixed-point lambda (2^16 scale) for the SSE-domain mode decision,
// 0.85 * 2^((qp - 12) / 3).
std::int64_t mode_lambda(int qp);

// Bits spent on ref_idx, mvp index and MV difference for `mv`, using the
// cheapest predictor. Returns the chosen predictor index via `mvp_index`.
int motion_bits(MotionVector mv, std::span<const MotionVector> predictors, int& mvp_index);

// Full integer-pel search in +-range around each predictor for every
// reference. Predictors must be integer-pel, as predict_mv returns them.
// Ties: lower cost, then smaller ref_idx, then earlier raster position.
MotionChoice search_list(const BlockRef& block, const MotionCandidates& cands, int list, int range,
                         std::int64_t lambda_motion);

MotionChoice motion_search(const BlockRef& block, const std::array<MotionCandidates, 2>& lists, int range,
                           std::int64_t lambda_motion);

// Samples the reference with edge clamping at an integer displacement.
void fetch_block(const SamplePlane& ref, int x, int y, int w, int h, Plane<std::int32_t>& out);

}  // namespace lfpseq
