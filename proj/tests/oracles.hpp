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

// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "lfpseq/mvscale.hpp"

namespace oracle {

// Exact-rational scaling: any exact .5 quotient is representable in long
// double, so llround's half-away-from-zero rule applies to the true value.
inline std::int32_t scale(std::int32_t v, int num, int den) {
  if (num == 0 || den == 0) return v;
  const long double q = static_cast<long double>(v) * num / den;
  const long long r = std::llround(q);
  return static_cast<std::int32_t>(std::clamp<long long>(r, -32768, 32767));
}

inline lfpseq::MotionVector spatial(lfpseq::MotionVector mv, const lfpseq::ScalingAnchors& a) {
  return {scale(mv.x, a.cur_ref.x - a.cur.x, a.donor_ref.x - a.cur.x),
          scale(mv.y, a.cur_ref.y - a.cur.y, a.donor_ref.y - a.cur.y)};
}

inline lfpseq::MotionVector temporal(lfpseq::MotionVector mv, const lfpseq::ScalingAnchors& a) {
  return {scale(mv.x, a.cur_ref.x - a.cur.x, a.donor_ref.x - a.colocated->x),
          scale(mv.y, a.cur_ref.y - a.cur.y, a.donor_ref.y - a.colocated->y)};
}

// Value at x of the polynomial through (xs, ys), by Lagrange's formula.
inline double lagrange(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  double sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double term = ys[i];
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) term *= (x - xs[j]) / (xs[i] - xs[j]);
    sum += term;
  }
  return sum;
}

// Bjontegaard rate difference for 4-point curves (where the cubic fit
// interpolates), integrated with the composite trapezoid rule.
inline double bd_rate_trapezoid(const std::vector<double>& rate_a, const std::vector<double>& psnr_a,
                                const std::vector<double>& rate_b, const std::vector<double>& psnr_b,
                                int steps = 200000) {
  std::vector<double> la, lb;
  for (double r : rate_a) la.push_back(std::log10(r));
  for (double r : rate_b) lb.push_back(std::log10(r));
  const double lo = std::max(*std::min_element(psnr_a.begin(), psnr_a.end()),
                             *std::min_element(psnr_b.begin(), psnr_b.end()));
  const double hi = std::min(*std::max_element(psnr_a.begin(), psnr_a.end()),
                             *std::max_element(psnr_b.begin(), psnr_b.end()));
  const double h = (hi - lo) / steps;
  double ia = 0, ib = 0;
  for (int k = 0; k <= steps; ++k) {
    const double x = lo + h * k;
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    ia += w * lagrange(psnr_a, la, x);
    ib += w * lagrange(psnr_b, lb, x);
  }
  const double avg = (ib - ia) * h / (hi - lo);
  return (std::pow(10.0, avg) - 1.0) * 100.0;
}

}  // namespace oracle
