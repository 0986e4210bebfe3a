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
#include <map>
#include <string>
#include <vector>

#include "lfpseq/bitio.hpp"
#include "lfpseq/motion.hpp"
#include "lfpseq/reflists.hpp"
#include "lfpseq/scheduler.hpp"
#include "lfpseq/transform.hpp"
#include "lfpseq/view_grid.hpp"

namespace lfpseq {

struct CodecConfig {
  int block_size = 16;
  int search_range = 8;
  int qp = 25;  // intra QP
  int n_per_list = 4;

  // lambda = 0.85 * 2^((qp - 12) / 3)
  double lambda() const;
  void validate(ChromaFormat chroma) const;
  bool operator==(const CodecConfig&) const = default;
};

enum class Structure { k2D, k1D };

std::string to_string(Structure s);
Structure structure_from_string(const std::string& s);

// One coded frame. Frame ids are POCs for the 2-D structure and sequence
// positions for the 1-D anchor.
struct FramePlan {
  int frame = 0;
  int view = 0;  // POC of the view supplying the samples
  int qp = 0;
  bool intra = false;
  ReferenceLists lists;
  std::vector<int> rps;
};

struct SequencePlan {
  Structure structure = Structure::k2D;
  int gop = 16;
  std::map<int, FrameClass> class_overrides;
  std::vector<FramePlan> frames;          // coding order
  std::vector<ViewCoord> scaling_coords;  // per frame id; drives MV scaling

  // FNV-1a over the canonical JSON form of the plan.
  std::string hash() const;
};

// 2-D hierarchical plan: distance-ordered lists drawn from each RPS and MV
// scaling by view coordinates.
SequencePlan plan_2d(const GridGeometry& geom, const CodecConfig& cfg, const ScheduleOptions& opts = {});
SequencePlan plan_2d(const CodingSchedule& schedule, const GridGeometry& geom, const CodecConfig& cfg);

// 1-D pseudo-sequence anchor: views in serpentine raster order, GOP
// hierarchy, POC-distance lists and POC-distance MV scaling.
SequencePlan plan_1d(const GridGeometry& geom, const CodecConfig& cfg, int gop = 16);

// Grid POCs in serpentine raster order (even rows left to right, odd rows
// right to left).
std::vector<int> serpentine_order(const GridGeometry& geom);

enum class PredMode : std::uint8_t { kL0 = 0, kL1 = 1, kBi = 2, kIntraDc = 3 };

struct ListMotion {
  int ref_idx = 0;
  MotionVector mv;
  int mvp_index = 0;
};

struct BlockMode {
  PredMode mode = PredMode::kIntraDc;
  std::array<ListMotion, 2> motion{};
  std::array<Coefficients, 3> residual;
};

// Residual syntax: cbf flag, then ue(count - 1) and (ue(run), ue(|level| - 1),
// sign) per non-zero coefficient in zig-zag order.
void write_coefficients(BitWriter& w, const Coefficients& levels);
Coefficients read_coefficients(BitReader& r, int size);

struct Bitstream {
  static constexpr char kMagic[4] = {'L', 'F', 'P', 'S'};
  static constexpr std::uint16_t kVersion = 1;

  std::string header_json;
  std::vector<std::vector<std::uint8_t>> payloads;  // coding order

  // magic, u16 version, u32 header length, header, u32 frame count, then
  // u32 length + payload per frame. Little-endian.
  std::vector<std::uint8_t> serialize() const;
  static Bitstream parse(std::span<const std::uint8_t> bytes);
  std::size_t size_bytes() const;
};

struct FrameStats {
  int frame = 0;
  int view = 0;
  int qp = 0;
  std::size_t bits = 0;
  double psnr_y = 0;
  double psnr_yuv = 0;
  std::array<int, 4> mode_count{};  // indexed by PredMode
};

struct EncodeResult {
  Bitstream stream;
  ViewGrid recon;
  std::vector<FrameStats> stats;
  // Per frame id, per block motion of the chosen mode (diagnostics).
  std::vector<std::vector<BlockMotion>> motion;
};

// Throws ConfigError when the plan does not cover the grid.
EncodeResult encode_sequence(const ViewGrid& grid, const SequencePlan& plan, const CodecConfig& cfg);
EncodeResult encode_sequence(const ViewGrid& grid, const CodingSchedule& schedule, const CodecConfig& cfg);

// Rebuilds the plan from the header, checks its hash and reconstructs every
// view. Throws DecodeError on malformed input or a hash mismatch.
ViewGrid decode_sequence(const Bitstream& stream);

// FNV-1a over every sample of every view in POC order.
std::string recon_hash(const ViewGrid& grid);

}  // namespace lfpseq
