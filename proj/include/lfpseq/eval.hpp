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
#include <ostream>
#include <string>
#include <vector>

#include "lfpseq/codec.hpp"
#include "lfpseq/types.hpp"
#include "lfpseq/view_grid.hpp"

namespace lfpseq {

struct PsnrResult {
  double y = 0;
  double u = 0;
  double v = 0;
  double yuv = 0;  // (6 * y + u + v) / 8
  bool lossless() const;
};

// Per-plane MSE-based PSNR with peak (2^bit_depth - 1). Identical planes give
// +infinity; so does the YUV composite when any plane is identical.
// Throws DimensionError on mismatched size, format or bit depth.
PsnrResult psnr(const Picture& reference, const Picture& test);
// Mean squared error accumulated over every view, then converted per plane.
PsnrResult psnr(const ViewGrid& reference, const ViewGrid& test);
double yuv_psnr(double y, double u, double v);

struct RdPoint {
  int qp = 0;
  std::uint64_t bits = 0;
  double psnr_y = 0;
  double psnr_yuv = 0;
};

using RdCurve = std::vector<RdPoint>;

enum class BdMethod { kCubic, kPchip };
enum class BdMetric { kY, kYuv };

// Average log-rate difference of `test` against `anchor` over the shared
// PSNR range, in percent. Negative means `test` is cheaper. Needs at least
// four points per curve; throws EvaluationError otherwise or when the PSNR
// ranges do not overlap.
double bd_rate(const RdCurve& anchor, const RdCurve& test, BdMethod method = BdMethod::kCubic,
               BdMetric metric = BdMetric::kY);

struct BdResult {
  std::optional<double> percent;
  std::string status;  // "ok" or the reason the value is unavailable
};

BdResult try_bd_rate(const RdCurve& anchor, const RdCurve& test, BdMethod method = BdMethod::kCubic,
                     BdMetric metric = BdMetric::kY);

// Encodes, decodes and measures one QP point. Throws SimulationError if the
// decoder disagrees with the encoder reconstruction.
RdPoint measure_point(const ViewGrid& grid, Structure structure, const CodecConfig& cfg, int gop = 16);

struct SweepRow {
  std::string image;
  Structure structure = Structure::k2D;
  RdPoint point;
};

struct SweepJob {
  std::string image;
  const ViewGrid* grid = nullptr;
  Structure structure = Structure::k2D;
};

// One point per (job, qp), run on up to `jobs` threads. Output is sorted by
// image, structure and QP, so it does not depend on scheduling.
std::vector<SweepRow> sweep(const std::vector<SweepJob>& work, const std::vector<int>& qps, const CodecConfig& base,
                            int jobs = 1, int gop = 16);

RdCurve curve_of(const std::vector<SweepRow>& rows, const std::string& image, Structure structure);

// image,structure,qp,bits,psnr_y,psnr_yuv
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
// Whitespace-separated "bits psnr_y psnr_yuv qp" per line.
void write_gnuplot(std::ostream& os, const RdCurve& curve);

std::string format_psnr(double db);

}  // namespace lfpseq
