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

#include "lfpseq/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "lfpseq/bitio.hpp"

namespace lfpseq {

namespace {

std::int32_t round_quarter(std::int32_t v) {
  const std::int32_t a = v < 0 ? -v : v;
  const std::int32_t r = (a + 2) / 4 * 4;
  return v < 0 ? -r : r;
}

// Motion of a neighbor seen from list `list`; falls back to the other list.
bool donor_motion(const BlockMotion* b, int list, MotionVector& mv, int& ref) {
  if (!b || !b->inter) return false;
  for (int l : {list, 1 - list}) {
    if (b->uses[static_cast<std::size_t>(l)]) {
      mv = b->mv[static_cast<std::size_t>(l)];
      ref = b->ref_frame[static_cast<std::size_t>(l)];
      return true;
    }
  }
  return false;
}

}  // namespace

MotionVector round_to_integer_pel(MotionVector mv) { return {round_quarter(mv.x), round_quarter(mv.y)}; }

std::vector<MvpCandidate> predict_mv_detailed(const MvpContext& ctx, int list, int target_ref_frame) {
  auto coord = [&](int frame) { return ctx.coords[static_cast<std::size_t>(frame)]; };
  const ViewCoord target = coord(target_ref_frame);

  std::vector<MvpCandidate> raw;
  for (const BlockMotion* nb : {ctx.left, ctx.above}) {
    MotionVector mv;
    int ref = -1;
    if (!donor_motion(nb, list, mv, ref)) continue;
    if (ref == target_ref_frame) {
      raw.push_back({mv, false});
      continue;
    }
    const ScaledMv s = scale_spatial_detailed(mv, {ctx.cur, target, coord(ref), std::nullopt});
    raw.push_back({s.mv, s.any_copied()});
  }
  {
    MotionVector mv;
    int ref = -1;
    if (ctx.colocated_frame >= 0 && donor_motion(ctx.colocated, list, mv, ref)) {
      const ScaledMv s = scale_temporal_detailed(mv, {ctx.cur, target, coord(ref), coord(ctx.colocated_frame)});
      raw.push_back({s.mv, s.any_copied()});
    }
  }
  std::stable_partition(raw.begin(), raw.end(), [](const MvpCandidate& c) { return !c.copied; });

  std::vector<MvpCandidate> out;
  for (MvpCandidate c : raw) {
    c.mv = round_to_integer_pel(c.mv);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const MvpCandidate& o) { return o.mv == c.mv; });
    if (!dup) out.push_back(c);
    if (static_cast<int>(out.size()) == kMaxMvpCandidates) break;
  }
  if (static_cast<int>(out.size()) < kMaxMvpCandidates &&
      std::none_of(out.begin(), out.end(), [](const MvpCandidate& o) { return o.mv == MotionVector{}; }))
    out.push_back({MotionVector{}, false});
  return out;
}

std::vector<MotionVector> predict_mv(const MvpContext& ctx, int list, int target_ref_frame) {
  std::vector<MotionVector> out;
  for (const auto& c : predict_mv_detailed(ctx, list, target_ref_frame)) out.push_back(c.mv);
  return out;
}

std::int64_t motion_lambda(int qp) {
  return std::llround(std::sqrt(0.85 * std::pow(2.0, (qp - 12) / 3.0)) * 65536.0);
}

std::int64_t mode_lambda(int qp) { return std::llround(0.85 * std::pow(2.0, (qp - 12) / 3.0) * 65536.0); }

int motion_bits(MotionVector mv, std::span<const MotionVector> predictors, int& mvp_index) {
  int best = std::numeric_limits<int>::max();
  mvp_index = 0;
  for (std::size_t k = 0; k < predictors.size(); ++k) {
    const int b = se_bits((mv.x - predictors[k].x) / 4) + se_bits((mv.y - predictors[k].y) / 4);
    if (b < best) {
      best = b;
      mvp_index = static_cast<int>(k);
    }
  }
  return best + (predictors.size() > 1 ? 1 : 0);
}

void fetch_block(const SamplePlane& ref, int x, int y, int w, int h, Plane<std::int32_t>& out) {
  out.resize(h, w);
  const int rw = static_cast<int>(ref.cols());
  const int rh = static_cast<int>(ref.rows());
  if (x >= 0 && y >= 0 && x + w <= rw && y + h <= rh) {
    out = ref.block(y, x, h, w).cast<std::int32_t>();
    return;
  }
  for (int r = 0; r < h; ++r) {
    const int yy = std::clamp(y + r, 0, rh - 1);
    for (int c = 0; c < w; ++c) out(r, c) = ref(yy, std::clamp(x + c, 0, rw - 1));
  }
}

namespace {

std::int64_t block_sad(const BlockRef& b, const SamplePlane& ref, int x, int y) {
  const int n = b.size;
  const int rw = static_cast<int>(ref.cols());
  const int rh = static_cast<int>(ref.rows());
  std::int64_t sad = 0;
  if (x >= 0 && y >= 0 && x + n <= rw && y + n <= rh) {
    for (int r = 0; r < n; ++r) {
      const Sample* cur = &(*b.plane)(b.y + r, b.x);
      const Sample* rp = &ref(y + r, x);
      int row = 0;
      for (int c = 0; c < n; ++c) row += std::abs(static_cast<int>(cur[c]) - static_cast<int>(rp[c]));
      sad += row;
    }
    return sad;
  }
  for (int r = 0; r < n; ++r) {
    const int yy = std::clamp(y + r, 0, rh - 1);
    for (int c = 0; c < n; ++c) {
      const int xx = std::clamp(x + c, 0, rw - 1);
      sad += std::abs(static_cast<int>((*b.plane)(b.y + r, b.x + c)) - static_cast<int>(ref(yy, xx)));
    }
  }
  return sad;
}

}  // namespace

MotionChoice search_list(const BlockRef& block, const MotionCandidates& cands, int list, int range,
                         std::int64_t lambda_motion) {
  MotionChoice best;
  best.list = list;
  best.cost = std::numeric_limits<std::int64_t>::max();
  const int list_size = static_cast<int>(cands.refs.size());
  for (int ref_idx = 0; ref_idx < list_size; ++ref_idx) {
    const SamplePlane& ref = *cands.refs[static_cast<std::size_t>(ref_idx)];
    const auto& preds = cands.predictors[static_cast<std::size_t>(ref_idx)];
    const int ref_bits = list_size > 1 ? ue_bits(static_cast<std::uint32_t>(ref_idx)) : 0;
    std::vector<MotionVector> centers;
    for (const MotionVector& center : preds) {
      if (std::find(centers.begin(), centers.end(), center) != centers.end()) continue;
      centers.push_back(center);
      for (int dy = -range; dy <= range; ++dy) {
        for (int dx = -range; dx <= range; ++dx) {
          const MotionVector mv{center.x + 4 * dx, center.y + 4 * dy};
          if (mv.x < kMvMin || mv.x > kMvMax || mv.y < kMvMin || mv.y > kMvMax) continue;
          int mvp_index = 0;
          const int bits = ref_bits + motion_bits(mv, preds, mvp_index);
          const std::int64_t rate = lambda_motion * bits;
          if (rate >= best.cost) continue;
          const std::int64_t sad = block_sad(block, ref, block.x + mv.x / 4, block.y + mv.y / 4);
          const std::int64_t cost = (sad << 16) + rate;
          if (cost < best.cost) {
            best.cost = cost;
            best.ref_idx = ref_idx;
            best.mv = mv;
            best.mvp_index = mvp_index;
          }
        }
      }
    }
  }
  return best;
}

MotionChoice motion_search(const BlockRef& block, const std::array<MotionCandidates, 2>& lists, int range,
                           std::int64_t lambda_motion) {
  MotionChoice best;
  best.cost = std::numeric_limits<std::int64_t>::max();
  for (int l = 0; l < 2; ++l) {
    if (lists[static_cast<std::size_t>(l)].refs.empty()) continue;
    const MotionChoice c = search_list(block, lists[static_cast<std::size_t>(l)], l, range, lambda_motion);
    if (c.cost < best.cost) best = c;
  }
  return best;
}

}  // namespace lfpseq
