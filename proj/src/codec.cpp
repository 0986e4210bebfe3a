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

#include "lfpseq/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfpseq/eval.hpp"
#include "lfpseq/hash.hpp"
#include "lfpseq/serialize.hpp"

namespace lfpseq {

double CodecConfig::lambda() const { return 0.85 * std::pow(2.0, (qp - 12) / 3.0); }

void CodecConfig::validate(ChromaFormat chroma) const {
  if (block_size < 4 || block_size > 64 || (block_size & (block_size - 1)) != 0)
    throw ConfigError("block size must be a power of two in 4..64");
  if (chroma == ChromaFormat::k420 && block_size < 8) throw ConfigError("4:2:0 needs a block size of at least 8");
  if (search_range < 0 || search_range > 64) throw ConfigError("search range must be in 0..64");
  if (qp < 0 || qp > 51) throw ConfigError("QP must be in 0..51");
  if (n_per_list < 1 || n_per_list > 16) throw ConfigError("n_per_list must be in 1..16");
}

std::string to_string(Structure s) { return s == Structure::k2D ? "2d" : "1d"; }

Structure structure_from_string(const std::string& s) {
  if (s == "2d") return Structure::k2D;
  if (s == "1d") return Structure::k1D;
  throw ConfigError("unknown structure '" + s + "'");
}

std::string SequencePlan::hash() const {
  Fnv1a64 h;
  h.update(plan_json(*this).dump());
  return h.hex();
}

namespace {

int frame_qp(int base, int offset) { return std::clamp(base + offset, 0, 51); }

}  // namespace

SequencePlan plan_2d(const CodingSchedule& schedule, const GridGeometry& geom, const CodecConfig& cfg) {
  const PocMap pocs(geom);
  if (schedule.frame_count() != pocs.size()) throw ConfigError("schedule does not match the grid geometry");
  SequencePlan plan;
  plan.structure = Structure::k2D;
  plan.scaling_coords = schedule.coords;
  for (int poc : schedule.order) {
    FramePlan f;
    f.frame = poc;
    f.view = poc;
    f.intra = poc == 0;
    f.qp = frame_qp(cfg.qp, schedule.qp_offset[static_cast<std::size_t>(poc)]);
    f.rps = schedule.rps[static_cast<std::size_t>(poc)];
    if (!f.intra) f.lists = build_lists(poc, partition_directions(poc, f.rps, pocs), cfg.n_per_list, pocs);
    plan.frames.push_back(std::move(f));
  }
  return plan;
}

SequencePlan plan_2d(const GridGeometry& geom, const CodecConfig& cfg, const ScheduleOptions& opts) {
  SequencePlan plan = plan_2d(build_schedule(geom, opts), geom, cfg);
  plan.class_overrides = opts.class_overrides;
  return plan;
}

std::vector<int> serpentine_order(const GridGeometry& geom) {
  const PocMap pocs(geom);
  std::vector<int> out;
  for (int r = 0; r < geom.rows; ++r) {
    for (int k = 0; k < geom.cols; ++k) {
      const Cell c{r, r % 2 == 0 ? k : geom.cols - 1 - k};
      if (geom.is_surviving(c)) out.push_back(pocs.poc_of(c));
    }
  }
  return out;
}

SequencePlan plan_1d(const GridGeometry& geom, const CodecConfig& cfg, int gop) {
  const std::vector<int> views = serpentine_order(geom);
  const int n = static_cast<int>(views.size());
  const SequenceSchedule seq = build_schedule_1d(n, gop);
  SequencePlan plan;
  plan.structure = Structure::k1D;
  plan.gop = gop;
  for (int t = 0; t < n; ++t) plan.scaling_coords.push_back({t, t});
  for (int t : seq.order) {
    FramePlan f;
    f.frame = t;
    f.view = views[static_cast<std::size_t>(t)];
    f.intra = t == 0;
    f.qp = frame_qp(cfg.qp, seq.qp_offset[static_cast<std::size_t>(t)]);
    f.rps = seq.rps[static_cast<std::size_t>(t)];
    if (!f.intra) f.lists = build_lists_1d(t, f.rps, cfg.n_per_list);
    plan.frames.push_back(std::move(f));
  }
  return plan;
}

void write_coefficients(BitWriter& w, const Coefficients& levels) {
  const int n = static_cast<int>(levels.rows());
  const auto& scan = zigzag_scan(n);
  const std::int32_t* data = levels.data();
  int count = 0;
  for (int pos : scan)
    if (data[pos] != 0) ++count;
  if (count == 0) {
    w.put_bit(false);
    return;
  }
  w.put_bit(true);
  w.put_ue(static_cast<std::uint32_t>(count - 1));
  int run = 0;
  for (int pos : scan) {
    const std::int32_t v = data[pos];
    if (v == 0) {
      ++run;
      continue;
    }
    w.put_ue(static_cast<std::uint32_t>(run));
    w.put_ue(static_cast<std::uint32_t>((v < 0 ? -v : v) - 1));
    w.put_bit(v < 0);
    run = 0;
  }
}

Coefficients read_coefficients(BitReader& r, int size) {
  Coefficients levels = Coefficients::Zero(size, size);
  if (!r.get_bit()) return levels;
  const auto& scan = zigzag_scan(size);
  const std::size_t offset = r.byte_offset();
  const std::uint32_t count = r.get_ue() + 1u;
  if (count > scan.size()) throw DecodeError("coefficient count exceeds block size", offset);
  std::size_t idx = 0;
  std::int32_t* data = levels.data();
  for (std::uint32_t k = 0; k < count; ++k) {
    idx += r.get_ue();
    if (idx >= scan.size()) throw DecodeError("coefficient run past end of block", r.byte_offset());
    const std::uint32_t mag = r.get_ue();
    if (mag >= (1u << 24)) throw DecodeError("coefficient level out of range", r.byte_offset());
    const auto v = static_cast<std::int32_t>(mag + 1);
    data[scan[idx]] = r.get_bit() ? -v : v;
    ++idx;
  }
  return levels;
}

namespace {

using BlockPlanes = std::array<Plane<std::int32_t>, 3>;

struct DecodedFrame {
  Picture recon;  // padded
  std::vector<BlockMotion> motion;
};

Picture pad_picture(const Picture& src, int block) {
  const int w = (src.width() + block - 1) / block * block;
  const int h = (src.height() + block - 1) / block * block;
  Picture out(w, h, src.bit_depth, src.chroma);
  const int s = chroma_shift(src.chroma);
  for (int p = 0; p < 3; ++p) {
    const SamplePlane& in = src.planes[p];
    SamplePlane& o = out.planes[p];
    const int sh = p ? s : 0;
    const int ow = w >> sh;
    const int oh = h >> sh;
    for (int y = 0; y < oh; ++y) {
      const int yy = std::min<int>(y, static_cast<int>(in.rows()) - 1);
      for (int x = 0; x < ow; ++x) o(y, x) = in(yy, std::min<int>(x, static_cast<int>(in.cols()) - 1));
    }
  }
  return out;
}

Picture crop_picture(const Picture& src, int w, int h) {
  Picture out(w, h, src.bit_depth, src.chroma);
  const int s = chroma_shift(src.chroma);
  for (int p = 0; p < 3; ++p) {
    const int sh = p ? s : 0;
    out.planes[p] = src.planes[p].topLeftCorner(h >> sh, w >> sh);
  }
  return out;
}

int chroma_mv(int luma_int, int shift) {
  if (!shift) return luma_int;
  return luma_int >= 0 ? (luma_int + 1) / 2 : -((-luma_int + 1) / 2);
}

bool uses_list(PredMode m, int l) {
  return m == PredMode::kBi || (l == 0 && m == PredMode::kL0) || (l == 1 && m == PredMode::kL1);
}

// Block-level state and reconstruction shared by encoder and decoder.
class FrameCoder {
 public:
  FrameCoder(const SequencePlan& seq, const FramePlan& plan, const std::map<int, DecodedFrame>& dpb,
             const CodecConfig& cfg, int padded_w, int padded_h, int bit_depth, ChromaFormat chroma)
      : seq_(seq), plan_(plan), dpb_(dpb), cfg_(cfg), shift_(chroma_shift(chroma)) {
    frame_.recon = Picture(padded_w, padded_h, bit_depth, chroma);
    blocks_x_ = padded_w / cfg.block_size;
    blocks_y_ = padded_h / cfg.block_size;
    frame_.motion.assign(static_cast<std::size_t>(blocks_x_ * blocks_y_), BlockMotion{});
    for (int l = 0; l < 2; ++l) {
      for (int f : list(l)) {
        if (!dpb_.count(f))
          throw SchedulingError("frame " + std::to_string(plan.frame) + " references frame " + std::to_string(f) +
                                " which is not in the reference buffer");
      }
    }
    if (!plan.intra && !plan.lists.list1.empty()) colocated_frame_ = plan.lists.list1.front();
  }

  int blocks_x() const { return blocks_x_; }
  int blocks_y() const { return blocks_y_; }
  int block_size(int plane) const { return plane ? cfg_.block_size >> shift_ : cfg_.block_size; }
  const std::vector<int>& list(int l) const { return l == 0 ? plan_.lists.list0 : plan_.lists.list1; }
  const DecodedFrame& ref(int l, int ref_idx) const {
    return dpb_.at(list(l).at(static_cast<std::size_t>(ref_idx)));
  }

  std::vector<MotionVector> predictors(int bx, int by, int l, int ref_idx) const {
    MvpContext ctx;
    ctx.cur = seq_.scaling_coords[static_cast<std::size_t>(plan_.frame)];
    ctx.coords = seq_.scaling_coords;
    const std::size_t idx = static_cast<std::size_t>(by * blocks_x_ + bx);
    if (bx > 0) ctx.left = &frame_.motion[idx - 1];
    if (by > 0) ctx.above = &frame_.motion[idx - static_cast<std::size_t>(blocks_x_)];
    if (colocated_frame_ >= 0) {
      ctx.colocated = &dpb_.at(colocated_frame_).motion[idx];
      ctx.colocated_frame = colocated_frame_;
    }
    return predict_mv(ctx, l, list(l).at(static_cast<std::size_t>(ref_idx)));
  }

  BlockPlanes predict(const BlockMode& m, int bx, int by) const {
    BlockPlanes pred;
    for (int p = 0; p < 3; ++p) {
      const int n = block_size(p);
      const int x0 = bx * n;
      const int y0 = by * n;
      if (m.mode == PredMode::kIntraDc) {
        pred[static_cast<std::size_t>(p)] = Plane<std::int32_t>::Constant(n, n, intra_dc(p, x0, y0, n));
        continue;
      }
      const int sh = p ? shift_ : 0;
      std::array<Plane<std::int32_t>, 2> lp;
      int used = 0;
      for (int l = 0; l < 2; ++l) {
        if (!uses_list(m.mode, l)) continue;
        const ListMotion& lm = m.motion[static_cast<std::size_t>(l)];
        const SamplePlane& rp = ref(l, lm.ref_idx).recon.planes[static_cast<std::size_t>(p)];
        fetch_block(rp, x0 + chroma_mv(lm.mv.x / 4, sh), y0 + chroma_mv(lm.mv.y / 4, sh), n, n,
                    lp[static_cast<std::size_t>(used++)]);
      }
      pred[static_cast<std::size_t>(p)] = used == 2 ? ((lp[0] + lp[1] + 1) / 2).eval() : lp[0];
    }
    return pred;
  }

  // Dequantizes, adds the prediction, clips and writes into the frame.
  void reconstruct(const BlockMode& m, const BlockPlanes& pred, int bx, int by) {
    const int maxv = frame_.recon.max_value();
    for (int p = 0; p < 3; ++p) {
      const int n = block_size(p);
      const Residual res = dequantize_inverse(m.residual[static_cast<std::size_t>(p)], plan_.qp);
      frame_.recon.planes[static_cast<std::size_t>(p)].block(by * n, bx * n, n, n) =
          (pred[static_cast<std::size_t>(p)] + res).max(0).min(maxv).cast<Sample>();
    }
    BlockMotion& bm = frame_.motion[static_cast<std::size_t>(by * blocks_x_ + bx)];
    bm = BlockMotion{};
    if (m.mode != PredMode::kIntraDc) {
      bm.inter = true;
      for (int l = 0; l < 2; ++l) {
        if (!uses_list(m.mode, l)) continue;
        const auto ul = static_cast<std::size_t>(l);
        bm.uses[ul] = true;
        bm.mv[ul] = m.motion[ul].mv;
        bm.ref_frame[ul] = list(l)[static_cast<std::size_t>(m.motion[ul].ref_idx)];
      }
    }
  }

  // Writes mode, motion and residual syntax for a block.
  void write_block(BitWriter& w, const BlockMode& m, int bx, int by) const {
    if (!plan_.intra) w.put_ue(static_cast<std::uint32_t>(m.mode));
    for (int l = 0; l < 2; ++l) {
      if (!uses_list(m.mode, l)) continue;
      const ListMotion& lm = m.motion[static_cast<std::size_t>(l)];
      if (list(l).size() > 1) w.put_ue(static_cast<std::uint32_t>(lm.ref_idx));
      const auto preds = predictors(bx, by, l, lm.ref_idx);
      if (preds.size() > 1) w.put_bit(lm.mvp_index != 0);
      const MotionVector& pv = preds[static_cast<std::size_t>(lm.mvp_index)];
      w.put_se((lm.mv.x - pv.x) / 4);
      w.put_se((lm.mv.y - pv.y) / 4);
    }
    for (const auto& r : m.residual) write_coefficients(w, r);
  }

  BlockMode read_block(BitReader& r, int bx, int by) const {
    BlockMode m;
    if (!plan_.intra) {
      const std::size_t at = r.byte_offset();
      const std::uint32_t mode = r.get_ue();
      if (mode > 3) throw DecodeError("invalid prediction mode", at);
      m.mode = static_cast<PredMode>(mode);
    }
    for (int l = 0; l < 2; ++l) {
      if (!uses_list(m.mode, l)) continue;
      ListMotion& lm = m.motion[static_cast<std::size_t>(l)];
      const std::size_t at = r.byte_offset();
      const int size = static_cast<int>(list(l).size());
      if (size == 0) throw DecodeError("block uses an empty reference list", at);
      lm.ref_idx = size > 1 ? static_cast<int>(r.get_ue()) : 0;
      if (lm.ref_idx >= size) throw DecodeError("reference index out of range", at);
      const auto preds = predictors(bx, by, l, lm.ref_idx);
      lm.mvp_index = preds.size() > 1 ? static_cast<int>(r.get_bit()) : 0;
      const MotionVector& pv = preds[static_cast<std::size_t>(lm.mvp_index)];
      const std::int64_t mx = pv.x + 4ll * r.get_se();
      const std::int64_t my = pv.y + 4ll * r.get_se();
      if (mx < kMvMin || mx > kMvMax || my < kMvMin || my > kMvMax)
        throw DecodeError("motion vector out of range", r.byte_offset());
      lm.mv = {static_cast<std::int32_t>(mx), static_cast<std::int32_t>(my)};
    }
    for (int p = 0; p < 3; ++p) m.residual[static_cast<std::size_t>(p)] = read_coefficients(r, block_size(p));
    return m;
  }

  const FramePlan& plan() const { return plan_; }
  DecodedFrame take() { return std::move(frame_); }
  const Picture& recon() const { return frame_.recon; }

 private:
  std::int32_t intra_dc(int p, int x0, int y0, int n) const {
    const SamplePlane& rp = frame_.recon.planes[static_cast<std::size_t>(p)];
    std::int64_t sum = 0;
    int count = 0;
    if (y0 > 0) {
      sum += rp.block(y0 - 1, x0, 1, n).cast<std::int64_t>().sum();
      count += n;
    }
    if (x0 > 0) {
      sum += rp.block(y0, x0 - 1, n, 1).cast<std::int64_t>().sum();
      count += n;
    }
    if (count == 0) return 1 << (frame_.recon.bit_depth - 1);
    return static_cast<std::int32_t>((sum + count / 2) / count);
  }

  const SequencePlan& seq_;
  const FramePlan& plan_;
  const std::map<int, DecodedFrame>& dpb_;
  const CodecConfig& cfg_;
  int shift_;
  int blocks_x_ = 0;
  int blocks_y_ = 0;
  int colocated_frame_ = -1;
  DecodedFrame frame_;
};

void update_dpb(std::map<int, DecodedFrame>& dpb, DecodedFrame cur, int cur_frame, const SequencePlan& plan,
                std::size_t next_index) {
  if (next_index >= plan.frames.size()) {
    dpb.clear();
    return;
  }
  const auto& keep = plan.frames[next_index].rps;
  dpb[cur_frame] = std::move(cur);
  for (auto it = dpb.begin(); it != dpb.end();)
    it = std::binary_search(keep.begin(), keep.end(), it->first) ? std::next(it) : dpb.erase(it);
}

struct Trial {
  BlockMode mode;
  BlockPlanes pred;
  std::int64_t cost = std::numeric_limits<std::int64_t>::max();
};

Json header_json(const SequencePlan& plan, const GridGeometry& geom, const CodecConfig& cfg, const Picture& view) {
  Json h;
  h["structure"] = to_string(plan.structure);
  h["gop"] = plan.gop;
  Json overrides = Json::object();
  for (const auto& [poc, cls] : plan.class_overrides) overrides[std::to_string(poc)] = to_string(cls);
  h["class_overrides"] = overrides;
  h["geometry"] = geom;
  h["config"] = cfg;
  h["view"] = {{"width", view.width()},
               {"height", view.height()},
               {"bit_depth", view.bit_depth},
               {"chroma", to_string(view.chroma)}};
  h["schedule_hash"] = plan.hash();
  return h;
}

void check_plan_covers(const ViewGrid& grid, const SequencePlan& plan) {
  const std::size_t n = grid.views.size();
  if (plan.frames.size() != n) throw ConfigError("plan frame count does not match the grid");
  std::vector<bool> seen(n, false);
  for (const FramePlan& f : plan.frames) {
    if (f.view < 0 || static_cast<std::size_t>(f.view) >= n || seen[static_cast<std::size_t>(f.view)])
      throw ConfigError("plan does not cover every view exactly once");
    seen[static_cast<std::size_t>(f.view)] = true;
    if (f.frame < 0 || static_cast<std::size_t>(f.frame) >= plan.scaling_coords.size())
      throw ConfigError("plan frame id out of range");
  }
  if (plan.frames.empty() || !plan.frames.front().intra) throw ConfigError("plan must start with an intra frame");
}

}  // namespace

EncodeResult encode_sequence(const ViewGrid& grid, const SequencePlan& plan, const CodecConfig& cfg) {
  grid.check_complete();
  check_plan_covers(grid, plan);
  const Picture& v0 = grid.views.front();
  cfg.validate(v0.chroma);
  const int w = v0.width();
  const int h = v0.height();
  const int n = cfg.block_size;
  const int pw = (w + n - 1) / n * n;
  const int ph = (h + n - 1) / n * n;

  EncodeResult result;
  result.recon.geometry = grid.geometry;
  result.recon.views.resize(grid.views.size());
  result.motion.resize(plan.scaling_coords.size());
  std::map<int, DecodedFrame> dpb;

  for (std::size_t k = 0; k < plan.frames.size(); ++k) {
    const FramePlan& fp = plan.frames[k];
    const Picture orig = pad_picture(grid.views[static_cast<std::size_t>(fp.view)], n);
    FrameCoder coder(plan, fp, dpb, cfg, pw, ph, v0.bit_depth, v0.chroma);
    const std::int64_t lambda = mode_lambda(fp.qp);
    const std::int64_t lambda_motion = motion_lambda(fp.qp);
    BitWriter out;
    FrameStats stats;
    stats.frame = fp.frame;
    stats.view = fp.view;
    stats.qp = fp.qp;

    for (int by = 0; by < coder.blocks_y(); ++by) {
      for (int bx = 0; bx < coder.blocks_x(); ++bx) {
        BlockPlanes ob;
        for (int p = 0; p < 3; ++p) {
          const int bn = coder.block_size(p);
          ob[static_cast<std::size_t>(p)] =
              orig.planes[static_cast<std::size_t>(p)].block(by * bn, bx * bn, bn, bn).cast<std::int32_t>();
        }

        std::vector<BlockMode> modes;
        if (!fp.intra) {
          std::array<MotionCandidates, 2> cands;
          for (int l = 0; l < 2; ++l) {
            auto& c = cands[static_cast<std::size_t>(l)];
            for (int ri = 0; ri < static_cast<int>(coder.list(l).size()); ++ri) {
              c.refs.push_back(&coder.ref(l, ri).recon.planes[0]);
              c.predictors.push_back(coder.predictors(bx, by, l, ri));
            }
          }
          const BlockRef blk{&orig.planes[0], bx * n, by * n, n};
          std::array<MotionChoice, 2> best;
          for (int l = 0; l < 2; ++l)
            if (!coder.list(l).empty())
              best[static_cast<std::size_t>(l)] =
                    search_list(blk, cands[static_cast<std::size_t>(l)], l, cfg.search_range, lambda_motion);
          for (PredMode pm : {PredMode::kL0, PredMode::kL1, PredMode::kBi}) {
            if ((pm != PredMode::kL1 && coder.list(0).empty()) || (pm != PredMode::kL0 && coder.list(1).empty()))
              continue;
            BlockMode m;
            m.mode = pm;
            for (int l = 0; l < 2; ++l) {
              const auto ul = static_cast<std::size_t>(l);
              m.motion[ul] = {best[ul].ref_idx, best[ul].mv, best[ul].mvp_index};
            }
            modes.push_back(m);
          }
        }
        // Intra last so equal-cost ties favor inter modes.
        BlockMode intra;
        intra.mode = PredMode::kIntraDc;
        modes.push_back(intra);

        Trial chosen;
        for (BlockMode& m : modes) {
          const BlockPlanes pred = coder.predict(m, bx, by);
          std::int64_t sse = 0;
          for (int p = 0; p < 3; ++p) {
            const auto up = static_cast<std::size_t>(p);
            const Residual res = ob[up] - pred[up];
            m.residual[up] = transform_quantize(res, fp.qp, m.mode == PredMode::kIntraDc);
            const Residual rec = dequantize_inverse(m.residual[up], fp.qp);
            const Plane<std::int32_t> recon = (pred[up] + rec).max(0).min(v0.max_value());
            sse += (recon - ob[up]).cast<std::int64_t>().square().sum();
          }
          BitWriter scratch;
          coder.write_block(scratch, m, bx, by);
          const std::int64_t cost = (sse << 16) + lambda * static_cast<std::int64_t>(scratch.bit_count());
          if (cost < chosen.cost) {
            chosen.cost = cost;
            chosen.mode = m;
            chosen.pred = pred;
          }
        }
        coder.write_block(out, chosen.mode, bx, by);
        coder.reconstruct(chosen.mode, chosen.pred, bx, by);
        ++stats.mode_count[static_cast<std::size_t>(chosen.mode.mode)];
      }
    }

    std::vector<std::uint8_t> payload = out.take();
    stats.bits = payload.size() * 8;
    DecodedFrame decoded = coder.take();
    Picture view_recon = crop_picture(decoded.recon, w, h);
    const PsnrResult q = psnr(grid.views[static_cast<std::size_t>(fp.view)], view_recon);
    stats.psnr_y = q.y;
    stats.psnr_yuv = q.yuv;
    result.recon.views[static_cast<std::size_t>(fp.view)] = std::move(view_recon);
    result.motion[static_cast<std::size_t>(fp.frame)] = decoded.motion;
    result.stream.payloads.push_back(std::move(payload));
    result.stats.push_back(stats);
    update_dpb(dpb, std::move(decoded), fp.frame, plan, k + 1);
  }

  Json header = header_json(plan, grid.geometry, cfg, v0);
  header["recon_hash"] = recon_hash(result.recon);
  result.stream.header_json = header.dump();
  return result;
}

EncodeResult encode_sequence(const ViewGrid& grid, const CodingSchedule& schedule, const CodecConfig& cfg) {
  if (schedule.frame_count() != grid.geometry.view_count())
    throw ConfigError("schedule does not match the grid");
  return encode_sequence(grid, plan_2d(schedule, grid.geometry, cfg), cfg);
}

ViewGrid decode_sequence(const Bitstream& stream) {
  const std::size_t header_offset = 10;
  Json h;
  GridGeometry geom;
  CodecConfig cfg;
  SequencePlan plan;
  int w = 0;
  int hgt = 0;
  int bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k420;
  try {
    h = Json::parse(stream.header_json);
    geom = h.at("geometry").get<GridGeometry>();
    cfg = h.at("config").get<CodecConfig>();
    const Json& v = h.at("view");
    w = v.at("width").get<int>();
    hgt = v.at("height").get<int>();
    bit_depth = v.at("bit_depth").get<int>();
    chroma = chroma_format_from_string(v.at("chroma").get<std::string>());
    cfg.validate(chroma);
    const Structure s = structure_from_string(h.at("structure").get<std::string>());
    if (s == Structure::k2D) {
      ScheduleOptions opts;
      for (const auto& [k, val] : h.at("class_overrides").items())
        opts.class_overrides[std::stoi(k)] = frame_class_from_string(val.get<std::string>());
      plan = plan_2d(geom, cfg, opts);
    } else {
      plan = plan_1d(geom, cfg, h.at("gop").get<int>());
    }
  } catch (const DecodeError&) {
    throw;
  } catch (const std::exception& e) {
    throw DecodeError(std::string("invalid stream header: ") + e.what(), header_offset);
  }
  if (h.value("schedule_hash", std::string()) != plan.hash())
    throw DecodeError("schedule hash mismatch", header_offset);
  if (stream.payloads.size() != plan.frames.size())
    throw DecodeError("frame count does not match the schedule", header_offset + stream.header_json.size());
  if (w <= 0 || hgt <= 0) throw DecodeError("invalid view size", header_offset);

  const int n = cfg.block_size;
  const int pw = (w + n - 1) / n * n;
  const int ph = (hgt + n - 1) / n * n;
  ViewGrid out;
  out.geometry = geom;
  out.views.resize(plan.frames.size());
  std::map<int, DecodedFrame> dpb;
  std::size_t offset = header_offset + stream.header_json.size() + 4;
  for (std::size_t k = 0; k < plan.frames.size(); ++k) {
    const FramePlan& fp = plan.frames[k];
    const auto& payload = stream.payloads[k];
    offset += 4;
    FrameCoder coder(plan, fp, dpb, cfg, pw, ph, bit_depth, chroma);
    BitReader r(payload, offset);
    for (int by = 0; by < coder.blocks_y(); ++by) {
      for (int bx = 0; bx < coder.blocks_x(); ++bx) {
        const BlockMode m = coder.read_block(r, bx, by);
        coder.reconstruct(m, coder.predict(m, bx, by), bx, by);
      }
    }
    if (payload.size() * 8 - r.bit_position() >= 8) throw DecodeError("trailing data in frame payload", r.byte_offset());
    offset += payload.size();
    DecodedFrame decoded = coder.take();
    out.views[static_cast<std::size_t>(fp.view)] = crop_picture(decoded.recon, w, hgt);
    update_dpb(dpb, std::move(decoded), fp.frame, plan, k + 1);
  }
  return out;
}

std::string recon_hash(const ViewGrid& grid) {
  Fnv1a64 h;
  for (const Picture& v : grid.views) {
    for (const auto& plane : v.planes) {
      for (Eigen::Index i = 0; i < plane.size(); ++i) {
        const Sample s = plane.data()[i];
        const std::uint8_t b[2] = {static_cast<std::uint8_t>(s & 0xFF), static_cast<std::uint8_t>(s >> 8)};
        h.update(b);
      }
    }
  }
  return h.hex();
}

}  // namespace lfpseq
