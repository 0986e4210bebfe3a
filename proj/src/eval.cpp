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

#include "lfpseq/eval.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <tuple>

namespace lfpseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double psnr_from_sse(double sse, double count, int bit_depth) {
  if (sse == 0) return kInf;
  const double peak = static_cast<double>((1 << bit_depth) - 1);
  return 10.0 * std::log10(peak * peak * count / sse);
}

void check_compatible(const Picture& a, const Picture& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.chroma != b.chroma || a.bit_depth != b.bit_depth)
    throw DimensionError("pictures differ in size, chroma format or bit depth");
}

std::array<double, 3> plane_sse(const Picture& a, const Picture& b) {
  std::array<double, 3> sse{};
  for (std::size_t p = 0; p < 3; ++p) {
    const auto d = a.planes[p].cast<std::int64_t>() - b.planes[p].cast<std::int64_t>();
    sse[p] = static_cast<double>(d.square().sum());
  }
  return sse;
}

}  // namespace

bool PsnrResult::lossless() const { return std::isinf(y) && std::isinf(u) && std::isinf(v); }

double yuv_psnr(double y, double u, double v) { return (6.0 * y + u + v) / 8.0; }

PsnrResult psnr(const Picture& reference, const Picture& test) {
  check_compatible(reference, test);
  const auto sse = plane_sse(reference, test);
  PsnrResult r;
  r.y = psnr_from_sse(sse[0], static_cast<double>(reference.planes[0].size()), reference.bit_depth);
  r.u = psnr_from_sse(sse[1], static_cast<double>(reference.planes[1].size()), reference.bit_depth);
  r.v = psnr_from_sse(sse[2], static_cast<double>(reference.planes[2].size()), reference.bit_depth);
  r.yuv = yuv_psnr(r.y, r.u, r.v);
  return r;
}

PsnrResult psnr(const ViewGrid& reference, const ViewGrid& test) {
  if (reference.views.size() != test.views.size() || reference.views.empty())
    throw DimensionError("grids differ in view count");
  std::array<double, 3> sse{};
  std::array<double, 3> count{};
  for (std::size_t k = 0; k < reference.views.size(); ++k) {
    check_compatible(reference.views[k], test.views[k]);
    const auto s = plane_sse(reference.views[k], test.views[k]);
    for (std::size_t p = 0; p < 3; ++p) {
      sse[p] += s[p];
      count[p] += static_cast<double>(reference.views[k].planes[p].size());
    }
  }
  const int depth = reference.views.front().bit_depth;
  PsnrResult r;
  r.y = psnr_from_sse(sse[0], count[0], depth);
  r.u = psnr_from_sse(sse[1], count[1], depth);
  r.v = psnr_from_sse(sse[2], count[2], depth);
  r.yuv = yuv_psnr(r.y, r.u, r.v);
  return r;
}

namespace {

struct Samples {
  std::vector<double> q;     // PSNR, ascending
  std::vector<double> lr;    // log10(bits)
};

Samples samples_of(const RdCurve& c, BdMetric metric) {
  if (c.size() < 4) throw EvaluationError("BD-rate needs at least four points per curve");
  std::vector<std::pair<double, double>> pts;
  for (const RdPoint& p : c) {
    const double q = metric == BdMetric::kY ? p.psnr_y : p.psnr_yuv;
    if (p.bits == 0 || !std::isfinite(q)) throw EvaluationError("BD-rate needs positive rates and finite PSNR");
    pts.emplace_back(q, std::log10(static_cast<double>(p.bits)));
  }
  std::sort(pts.begin(), pts.end());
  Samples s;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0 && pts[k].first == pts[k - 1].first) throw EvaluationError("BD-rate needs distinct PSNR values");
    s.q.push_back(pts[k].first);
    s.lr.push_back(pts[k].second);
  }
  return s;
}

// Integral of the least-squares cubic through the samples over [lo, hi].
// Abscissae are centered to keep the normal equations well conditioned.
double integrate_cubic(const Samples& s, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(s.q.size());
  double mid = 0;
  for (double q : s.q) mid += q;
  mid /= static_cast<double>(n);
  Eigen::MatrixXd a(n, 4);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = s.q[static_cast<std::size_t>(i)] - mid;
    a(i, 0) = 1;
    a(i, 1) = x;
    a(i, 2) = x * x;
    a(i, 3) = x * x * x;
    b(i) = s.lr[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector4d c = a.colPivHouseholderQr().solve(b);
  const auto prim = [&](double x) {
    x -= mid;
    return c(0) * x + c(1) * x * x / 2 + c(2) * x * x * x / 3 + c(3) * x * x * x * x / 4;
  };
  return prim(hi) - prim(lo);
}

// Fritsch-Carlson monotone slopes; needs at least four samples.
std::vector<double> pchip_slopes(const Samples& s) {
  const std::size_t n = s.q.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = s.q[k + 1] - s.q[k];
    delta[k] = (s.lr[k + 1] - s.lr[k]) / h[k];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0) continue;
    const double w1 = 2 * h[k] + h[k - 1];
    const double w2 = h[k] + 2 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  const auto end_slope = [](double h0, double h1, double d0, double d1) {
    double v = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (v * d0 <= 0) v = 0;
    else if (d0 * d1 <= 0 && std::abs(v) > std::abs(3 * d0)) v = 3 * d0;
    return v;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

double integrate_pchip(const Samples& s, double lo, double hi) {
  const std::vector<double> d = pchip_slopes(s);
  double total = 0;
  for (std::size_t k = 0; k + 1 < s.q.size(); ++k) {
    const double a = std::max(lo, s.q[k]);
    const double b = std::min(hi, s.q[k + 1]);
    if (b <= a) continue;
    const double h = s.q[k + 1] - s.q[k];
    // Hermite basis integrated in closed form over [a, b] in local t.
    const auto prim = [&](double x) {
      const double t = (x - s.q[k]) / h;
      const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
      const double h00 = t4 / 2 - t3 + t;
      const double h10 = t4 / 4 - 2 * t3 / 3 + t2 / 2;
      const double h01 = -t4 / 2 + t3;
      const double h11 = t4 / 4 - t3 / 3;
      return h * (h00 * s.lr[k] + h10 * h * d[k] + h01 * s.lr[k + 1] + h11 * h * d[k + 1]);
    };
    total += prim(b) - prim(a);
  }
  return total;
}

}  // namespace

double bd_rate(const RdCurve& anchor, const RdCurve& test, BdMethod method, BdMetric metric) {
  const Samples a = samples_of(anchor, metric);
  const Samples b = samples_of(test, metric);
  const double lo = std::max(a.q.front(), b.q.front());
  const double hi = std::min(a.q.back(), b.q.back());
  if (!(hi > lo)) throw EvaluationError("R-D curves do not overlap in PSNR");
  const auto integrate = method == BdMethod::kCubic ? integrate_cubic : integrate_pchip;
  const double avg = (integrate(b, lo, hi) - integrate(a, lo, hi)) / (hi - lo);
  return (std::pow(10.0, avg) - 1.0) * 100.0;
}

BdResult try_bd_rate(const RdCurve& anchor, const RdCurve& test, BdMethod method, BdMetric metric) {
  try {
    return {bd_rate(anchor, test, method, metric), "ok"};
  } catch (const EvaluationError& e) {
    return {std::nullopt, e.what()};
  }
}

RdPoint measure_point(const ViewGrid& grid, Structure structure, const CodecConfig& cfg, int gop) {
  const SequencePlan plan =
      structure == Structure::k2D ? plan_2d(grid.geometry, cfg) : plan_1d(grid.geometry, cfg, gop);
  const EncodeResult enc = encode_sequence(grid, plan, cfg);
  const std::vector<std::uint8_t> bytes = enc.stream.serialize();
  const ViewGrid dec = decode_sequence(Bitstream::parse(bytes));
  if (recon_hash(dec) != recon_hash(enc.recon)) throw SimulationError("decoder output differs from encoder reconstruction");
  const PsnrResult q = psnr(grid, dec);
  return RdPoint{cfg.qp, static_cast<std::uint64_t>(bytes.size()) * 8, q.y, q.yuv};
}

std::vector<SweepRow> sweep(const std::vector<SweepJob>& work, const std::vector<int>& qps, const CodecConfig& base,
                            int jobs, int gop) {
  if (qps.empty()) throw ConfigError("QP ladder is empty");
  struct Task {
    std::size_t job;
    int qp;
  };
  std::vector<Task> tasks;
  for (std::size_t j = 0; j < work.size(); ++j)
    for (int qp : qps) tasks.push_back({j, qp});
  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        const SweepJob& job = work[tasks[t].job];
        CodecConfig cfg = base;
        cfg.qp = tasks[t].qp;
        rows[t] = SweepRow{job.image, job.structure, measure_point(*job.grid, job.structure, cfg, gop)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> threads;
  for (int k = 1; k < n; ++k) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.image, a.structure, a.point.qp) < std::tie(b.image, b.structure, b.point.qp);
  });
  return rows;
}

RdCurve curve_of(const std::vector<SweepRow>& rows, const std::string& image, Structure structure) {
  RdCurve c;
  for (const SweepRow& r : rows)
    if (r.image == image && r.structure == structure) c.push_back(r.point);
  std::sort(c.begin(), c.end(), [](const RdPoint& a, const RdPoint& b) { return a.qp < b.qp; });
  return c;
}

std::string format_psnr(double db) {
  if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", db);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "image,structure,qp,bits,psnr_y,psnr_yuv\n";
  for (const SweepRow& r : rows)
    os << r.image << ',' << to_string(r.structure) << ',' << r.point.qp << ',' << r.point.bits << ','
       << format_psnr(r.point.psnr_y) << ',' << format_psnr(r.point.psnr_yuv) << '\n';
}

void write_gnuplot(std::ostream& os, const RdCurve& curve) {
  os << "# bits psnr_y psnr_yuv qp\n";
  for (const RdPoint& p : curve)
    os << p.bits << ' ' << format_psnr(p.psnr_y) << ' ' << format_psnr(p.psnr_yuv) << ' ' << p.qp << '\n';
}

}  // namespace lfpseq
