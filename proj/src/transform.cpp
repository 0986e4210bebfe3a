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

#include "lfpseq/transform.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace lfpseq {

namespace {

constexpr std::array<std::int64_t, 6> kQuantScale = {26008, 23170, 20643, 18390, 16384, 14596};
constexpr std::array<std::int64_t, 6> kDequantScale = {40, 45, 51, 57, 64, 72};

void check_qp(int qp) {
  if (qp < 0 || qp > 51) throw ConfigError("QP must be in 0..51");
}

}  // namespace

IntegerTransform::IntegerTransform(int n) : n_(n), log2n_(std::countr_zero(static_cast<unsigned>(n))), basis_(n, n) {
  const double scale = 64.0 * std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    const double ck = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int i = 0; i < n; ++i) {
      basis_(k, i) = std::llround(scale * ck * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n)));
    }
  }
}

const IntegerTransform& IntegerTransform::of_size(int n) {
  if (n < 4 || n > 64 || (n & (n - 1)) != 0) throw ConfigError("transform size must be a power of two in 4..64");
  static std::mutex mu;
  static std::map<int, IntegerTransform> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, IntegerTransform(n)).first;
  return it->second;
}

IntMatrix IntegerTransform::forward(const Residual& x) const {
  const IntMatrix xm = x.matrix().cast<std::int64_t>();
  return basis_ * xm * basis_.transpose();
}

Residual IntegerTransform::inverse(const IntMatrix& d, int shift) const {
  const IntMatrix full = basis_.transpose() * d * basis_;
  const std::int64_t half = std::int64_t{1} << (shift - 1);
  Residual out(n_, n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out(r, c) = static_cast<std::int32_t>((full(r, c) + half) >> shift);
  return out;
}

double quant_step(int qp) { return std::pow(2.0, (qp - 4) / 6.0); }

Coefficients transform_quantize(const Residual& residual, int qp, bool intra) {
  check_qp(qp);
  const IntegerTransform& t = IntegerTransform::of_size(static_cast<int>(residual.rows()));
  const IntMatrix c = t.forward(residual);
  const int shift = 14 + qp / 6 + t.norm_shift();
  const std::int64_t offset = (intra ? std::int64_t{171} : std::int64_t{85}) << (shift - 9);
  const std::int64_t qs = kQuantScale[static_cast<std::size_t>(qp % 6)];
  Coefficients levels(c.rows(), c.cols());
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      const std::int64_t v = c(r, k);
      const std::int64_t mag = ((v < 0 ? -v : v) * qs + offset) >> shift;
      levels(r, k) = static_cast<std::int32_t>(v < 0 ? -mag : mag);
    }
  }
  return levels;
}

Residual dequantize_inverse(const Coefficients& levels, int qp) {
  check_qp(qp);
  const IntegerTransform& t = IntegerTransform::of_size(static_cast<int>(levels.rows()));
  if ((levels == 0).all()) return Residual::Zero(levels.rows(), levels.cols());
  const std::int64_t iq = kDequantScale[static_cast<std::size_t>(qp % 6)] << (qp / 6);
  const IntMatrix d = levels.matrix().cast<std::int64_t>() * iq;
  return t.inverse(d, 6 + t.norm_shift());
}

const std::vector<int>& zigzag_scan(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<int>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<int> scan;
  scan.reserve(static_cast<std::size_t>(n * n));
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    if (s % 2 == 0) {
      for (int r = std::min(s, n - 1); r >= 0 && s - r < n; --r) scan.push_back(r * n + (s - r));
    } else {
      for (int c = std::min(s, n - 1); c >= 0 && s - c < n; --c) scan.push_back((s - c) * n + c);
    }
  }
  return cache.emplace(n, std::move(scan)).first->second;
}

}  // namespace lfpseq
