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

// One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lfpseq/codec.hpp"
#include "lfpseq/eval.hpp"
#include "lfpseq/mvscale.hpp"
#include "lfpseq/reflists.hpp"
#include "lfpseq/scheduler.hpp"
#include "lfpseq/synth.hpp"
#include "oracles.hpp"

using namespace lfpseq;

namespace {

int failures = 0;

template <typename T>
std::string show(const std::vector<T>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ']';
  return os.str();
}

void report(int id, const std::string& title, const std::function<std::string()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = check();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = detail.rfind("ok", 0) == 0;
  if (!ok) ++failures;
  std::printf("criterion %d: %s  %s (%s) [%.2fs]\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
}

std::string order_fixtures() {
  const std::vector<int> axis = axis_order_2d(7);
  const std::vector<int> gop = gop_order_1d(16);
  const std::vector<int> want_axis = {0, 6, 3, 5, 4, 2, 1};
  const std::vector<int> want_gop = {0, 16, 8, 4, 2, 1, 3, 6, 5, 7, 12, 10, 9, 11, 14, 13, 15};
  if (axis != want_axis) return "axis_order_2d(7) = " + show(axis);
  if (gop != want_gop) return "gop_order_1d(16) = " + show(gop);
  return "ok: both orders exact";
}

std::string buffer_bounds() {
  const CodingSchedule s = build_schedule(GridGeometry::default_geometry());
  const int all = simulate_dpb(s).peak;
  const DpbTimeline tl = simulate_dpb(restrict_to_quadrant(s, Quadrant::kTopLeft));
  if (all != 12 || tl.peak != 10) {
    // Discrepancy report: where the TL replay first exceeds its bound.
    std::ostringstream os;
    os << "peak overall " << all << " (want 12), TL " << tl.peak << " (want 10)";
    for (std::size_t k = 0; k < tl.occupancy.size(); ++k)
      if (tl.occupancy[k] > 10) {
        os << "; TL first exceeds at frame " << tl.frame[k] << " holding " << show(tl.members[k]);
        break;
      }
    return os.str();
  }
  return "ok: peak 12 overall, 10 top-left";
}

std::string frame14_lists() {
  const PocMap m(GridGeometry::default_geometry());
  const std::vector<int> available = {13, 6, 3, 15, 38, 41, 44, 77, 80, 0};
  const ReferenceLists l = build_lists(14, partition_directions(14, available, m), 4, m);
  if (l.list0 != std::vector<int>{13, 3, 6, 15} || l.list1 != std::vector<int>{15, 41, 38, 44})
    return "list0 " + show(l.list0) + ", list1 " + show(l.list1);
  return "ok: list0 [13,3,6,15], list1 [15,41,38,44]";
}

std::string mv_scaling() {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-6, 6);
  std::uniform_int_distribution<int> v(kMvMin, kMvMax);
  int cases = 0, copies = 0;
  const auto check = [&](MotionVector mv, const ScalingAnchors& a) -> bool {
    ++cases;
    const ScaledMv s = scale_spatial_detailed(mv, a);
    const ScaledMv t = scale_temporal_detailed(mv, a);
    copies += s.x_copied + s.y_copied + t.x_copied + t.y_copied;
    return s.mv == oracle::spatial(mv, a) && t.mv == oracle::temporal(mv, a);
  };
  for (int k = 0; k < 20000; ++k) {
    const ScalingAnchors a{{c(rng), c(rng)}, {c(rng), c(rng)}, {c(rng), c(rng)}, ViewCoord{c(rng), c(rng)}};
    const MotionVector mv{v(rng), v(rng)};
    if (!check(mv, a)) return "mismatch at case " + std::to_string(k);
  }
  // Forced zero numerators and zero denominators on both axes.
  for (int k = 0; k < 200; ++k) {
    const ViewCoord cur{c(rng), c(rng)};
    const MotionVector mv{v(rng), v(rng)};
    if (!check(mv, {cur, cur, {c(rng), c(rng)}, cur})) return "zero-numerator case failed";
    const ViewCoord d{c(rng), c(rng)};
    if (!check(mv, {cur, {c(rng), c(rng)}, cur, cur})) return "zero-denominator case failed";
    if (!check(mv, {cur, {c(rng), c(rng)}, d, d})) return "temporal zero-denominator case failed";
  }
  if (copies == 0) return "copy path never exercised";
  return "ok: " + std::to_string(cases) + " cases bit-exact, " + std::to_string(copies) + " copied axes";
}

struct FixtureRun {
  std::string name;
  std::vector<SweepRow> rows;
};

// Encodes every fixture with both structures, checks each decode against the
// encoder reconstruction and collects the R-D points for the BD criterion.
std::vector<FixtureRun> runs;

std::string closed_loop() {
  const std::vector<int> qps = {15, 20, 25, 30};
  int points = 0;
  for (SynthKind kind : {SynthKind::kTexture, SynthKind::kPinhole, SynthKind::kNoise}) {
    const ViewGrid grid = synthesize(kind, SynthOptions{});
    FixtureRun run{to_string(kind), {}};
    for (Structure s : {Structure::k2D, Structure::k1D}) {
      for (int qp : qps) {
        CodecConfig cfg;
        cfg.qp = qp;
        const SequencePlan plan = s == Structure::k2D ? plan_2d(grid.geometry, cfg) : plan_1d(grid.geometry, cfg);
        const EncodeResult enc = encode_sequence(grid, plan, cfg);
        const std::vector<std::uint8_t> bytes = enc.stream.serialize();
        const Bitstream parsed = Bitstream::parse(bytes);
        if (parsed.serialize() != bytes) return run.name + " qp " + std::to_string(qp) + ": serialization not stable";
        const ViewGrid dec = decode_sequence(parsed);
        const ViewGrid direct = decode_sequence(enc.stream);
        if (dec.views != enc.recon.views)
          return run.name + " " + to_string(s) + " qp " + std::to_string(qp) + ": decoder differs from encoder";
        if (direct.views != dec.views) return run.name + " qp " + std::to_string(qp) + ": round trip changed decode";
        const PsnrResult q = psnr(grid, dec);
        run.rows.push_back({run.name, s, RdPoint{qp, bytes.size() * 8, q.y, q.yuv}});
        ++points;
      }
    }
    runs.push_back(std::move(run));
  }
  return "ok: " + std::to_string(points) + " encodes sample-exact (3 fixtures x 2 structures x 4 QPs)";
}

std::string chain_constraint() {
  const CodingSchedule s = build_schedule(GridGeometry::default_geometry());
  for (std::size_t k = 0; k + 1 < s.order.size(); ++k) {
    const int cur = s.order[k];
    const int next = s.order[k + 1];
    std::set<int> allowed(s.rps[static_cast<std::size_t>(cur)].begin(), s.rps[static_cast<std::size_t>(cur)].end());
    allowed.insert(cur);
    for (int r : s.rps[static_cast<std::size_t>(next)])
      if (!allowed.count(r))
        return "RPS of " + std::to_string(next) + " holds " + std::to_string(r) + " not available after " +
               std::to_string(cur);
  }
  return "ok: " + std::to_string(s.order.size() - 1) + " transitions checked";
}

std::string directional_rd() {
  if (runs.size() != 3) return "closed-loop runs unavailable";
  std::ostringstream os;
  bool ok = true;
  for (const FixtureRun& r : runs) {
    const double bd = bd_rate(curve_of(r.rows, r.name, Structure::k1D), curve_of(r.rows, r.name, Structure::k2D));
    os << r.name << ' ' << bd << "% ";
    if (r.name != "noise" && !(bd < 0)) ok = false;
  }
  std::string s = os.str();
  s.pop_back();
  return ok ? "ok: " + s : "non-negative on a structured fixture: " + s;
}

std::string bd_oracle() {
  const auto curve = [](const std::vector<double>& bits, const std::vector<double>& db) {
    RdCurve c;
    for (std::size_t k = 0; k < bits.size(); ++k) c.push_back({static_cast<int>(k), static_cast<std::uint64_t>(bits[k]), db[k], db[k]});
    return c;
  };
  struct Case {
    std::vector<double> ra, pa, rb, pb;
  };
  const std::vector<Case> cases = {
      {{1000, 2000, 4000, 8000}, {30, 33, 36, 39}, {900, 1700, 3500, 7000}, {30.2, 33.1, 36.3, 39.1}},
      {{500, 1200, 2600, 6100}, {28, 31.5, 34.2, 37.9}, {520, 1300, 2400, 5000}, {27.5, 31.0, 34.6, 37.0}},
      {{20000, 41000, 90000, 170000}, {35.1, 38.0, 41.2, 43.5}, {15000, 36000, 70000, 160000}, {34.0, 38.3, 41.0, 44.1}},
  };
  double worst = 0;
  for (const Case& c : cases) {
    const double got = bd_rate(curve(c.ra, c.pa), curve(c.rb, c.pb));
    const double want = oracle::bd_rate_trapezoid(c.ra, c.pa, c.rb, c.pb);
    worst = std::max(worst, std::abs(got - want));
    if (bd_rate(curve(c.ra, c.pa), curve(c.ra, c.pa)) != 0.0) return "bd_rate(a, a) is not zero";
  }
  std::ostringstream os;
  os << "max deviation " << worst << " percentage points";
  return worst <= 0.01 ? "ok: " + os.str() : os.str();
}

std::string metric_fixtures() {
  Picture ref(16, 16, 8, ChromaFormat::k444);
  std::mt19937 rng(3);
  for (auto& plane : ref.planes)
    for (Eigen::Index k = 0; k < plane.size(); ++k) plane.data()[k] = static_cast<Sample>(rng() % 255);
  Picture off = ref;
  for (auto& plane : off.planes) plane.array() += 1;
  const double want = 10.0 * std::log10(255.0 * 255.0);
  const PsnrResult p = psnr(ref, off);
  if (std::abs(p.y - want) > 1e-6) return "offset PSNR " + std::to_string(p.y);

  // Per-plane offsets 1, 2 and 4 give MSE 1, 4 and 16.
  Picture mixed = ref;
  mixed.planes[1] = ref.planes[1];
  mixed.planes[2] = ref.planes[2];
  mixed.planes[0].array() += 1;
  for (Eigen::Index k = 0; k < ref.planes[1].size(); ++k) {
    mixed.planes[1].data()[k] = static_cast<Sample>(ref.planes[1].data()[k] < 128 ? ref.planes[1].data()[k] + 2
                                                                                   : ref.planes[1].data()[k] - 2);
    mixed.planes[2].data()[k] = static_cast<Sample>(ref.planes[2].data()[k] < 128 ? ref.planes[2].data()[k] + 4
                                                                                   : ref.planes[2].data()[k] - 4);
  }
  const double y = want, u = 10.0 * std::log10(65025.0 / 4.0), v = 10.0 * std::log10(65025.0 / 16.0);
  const double yuv_hand = (6.0 * y + u + v) / 8.0;
  const PsnrResult m = psnr(ref, mixed);
  if (std::abs(m.u - u) > 1e-6 || std::abs(m.v - v) > 1e-6) return "per-plane PSNR off";
  if (std::abs(m.yuv - yuv_hand) > 1e-6) return "YUV PSNR " + std::to_string(m.yuv) + " vs " + std::to_string(yuv_hand);
  return "ok: offset PSNR and YUV weighting within 1e-6 dB";
}

}  // namespace

int main() {
  report(1, "order fixtures", order_fixtures);
  report(2, "buffer bounds", buffer_bounds);
  report(3, "frame-14 reference lists", frame14_lists);
  report(4, "MV scaling oracle", mv_scaling);
  report(5, "codec closed loop", closed_loop);
  report(6, "RPS chain constraint", chain_constraint);
  report(7, "directional R-D", directional_rd);
  report(8, "BD-rate oracle", bd_oracle);
  report(9, "metric fixtures", metric_fixtures);
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
