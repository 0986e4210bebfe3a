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

#include "lfpseq/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>

namespace lfpseq {

std::string to_string(SynthKind k) {
  switch (k) {
    case SynthKind::kTexture: return "texture";
    case SynthKind::kPinhole: return "pinhole";
    case SynthKind::kNoise: return "noise";
  }
  return "texture";
}

SynthKind synth_kind_from_string(const std::string& s) {
  if (s == "texture") return SynthKind::kTexture;
  if (s == "pinhole") return SynthKind::kPinhole;
  if (s == "noise") return SynthKind::kNoise;
  throw ConfigError("unknown fixture '" + s + "'");
}

namespace {

// Smooth value noise over an unbounded plane, in [0, 1].
class ValueNoise {
 public:
  explicit ValueNoise(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : table_) v = u(rng);
  }

  double operator()(double x, double y) const {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx);
    const auto iy = static_cast<std::int64_t>(fy);
    const double tx = smooth(x - fx);
    const double ty = smooth(y - fy);
    const double a = lerp(at(ix, iy), at(ix + 1, iy), tx);
    const double b = lerp(at(ix, iy + 1), at(ix + 1, iy + 1), tx);
    return lerp(a, b, ty);
  }

 private:
  static constexpr std::size_t kSize = 256;
  static double smooth(double t) { return t * t * (3 - 2 * t); }
  static double lerp(double a, double b, double t) { return a + (b - a) * t; }
  double at(std::int64_t x, std::int64_t y) const {
    const auto hx = static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull;
    const auto hy = static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4Full;
    std::uint64_t h = hx ^ (hy + 0x165667B19E3779F9ull + (hx << 6) + (hx >> 2));
    h ^= h >> 29;
    return table_[h % kSize];
  }
  std::array<double, kSize> table_{};
};

// Multi-octave texture with an oriented sinusoid; values in roughly [0, 1].
class Texture {
 public:
  explicit Texture(std::uint64_t seed) : n1_(seed), n2_(seed + 101), n3_(seed + 202) {}
  double operator()(double x, double y) const {
    const double v = 0.45 * n1_(x / 9.0, y / 9.0) + 0.3 * n2_(x / 4.0, y / 4.0) + 0.15 * n3_(x / 2.0, y / 2.0);
    return v + 0.1 * (0.5 + 0.5 * std::sin(0.37 * x + 0.21 * y));
  }

 private:
  ValueNoise n1_, n2_, n3_;
};

using Field = std::function<double(int plane, double x, double y, ViewCoord view)>;

ViewGrid render(const SynthOptions& opts, const Field& field) {
  opts.geometry.validate();
  if (opts.width <= 0 || opts.height <= 0) throw ConfigError("fixture size must be positive");
  const int s = chroma_shift(opts.chroma);
  if (s && (opts.width % 2 || opts.height % 2)) throw ConfigError("4:2:0 fixtures need even dimensions");
  const PocMap pocs(opts.geometry);
  const double maxv = static_cast<double>((1 << opts.bit_depth) - 1);
  ViewGrid grid;
  grid.geometry = opts.geometry;
  for (int p = 0; p < pocs.size(); ++p) {
    const ViewCoord v = pocs.coord_of(p);
    Picture pic(opts.width, opts.height, opts.bit_depth, opts.chroma);
    for (int c = 0; c < 3; ++c) {
      SamplePlane& plane = pic.planes[static_cast<std::size_t>(c)];
      const int sh = c ? s : 0;
      const double step = static_cast<double>(1 << sh);
      for (int y = 0; y < plane.rows(); ++y) {
        for (int x = 0; x < plane.cols(); ++x) {
          // Chroma samples sit at the center of their luma footprint.
          const double lx = x * step + (step - 1) / 2;
          const double ly = y * step + (step - 1) / 2;
          const double val = std::clamp(field(c, lx, ly, v), 0.0, 1.0);
          plane(y, x) = static_cast<Sample>(std::lround(val * maxv));
        }
      }
    }
    grid.views.push_back(std::move(pic));
  }
  return grid;
}

double chroma_of(const Texture& t, int plane, double x, double y) {
  // Chroma is a dim, offset copy of the luma field.
  const double off = plane == 1 ? 37.0 : -53.0;
  return 0.5 + 0.25 * (t(x + off, y - off) - 0.5);
}

}  // namespace

ViewGrid synthesize(SynthKind kind, const SynthOptions& opts) {
  switch (kind) {
    case SynthKind::kTexture: {
      const Texture tex(opts.seed);
      const double d = opts.disparity;
      return render(opts, [&](int plane, double x, double y, ViewCoord v) {
        const double sx = x + d * v.x;
        const double sy = y + d * v.y;
        return plane == 0 ? tex(sx, sy) : chroma_of(tex, plane, sx, sy);
      });
    }
    case SynthKind::kPinhole: {
      const Texture back(opts.seed);
      const Texture mid(opts.seed + 7);
      const Texture front(opts.seed + 13);
      const double d = opts.disparity;
      const double cx = opts.width / 2.0;
      const double cy = opts.height / 2.0;
      return render(opts, [&](int plane, double x, double y, ViewCoord v) {
        // Disparity is inversely proportional to depth; nearer layers occlude.
        const double fx = x + 2.0 * d * v.x;
        const double fy = y + 2.0 * d * v.y;
        if (std::hypot(fx - cx * 1.25, fy - cy * 1.2) < opts.width * 0.18)
          return plane == 0 ? 0.2 + 0.8 * front(fx, fy) : chroma_of(front, plane, fx, fy);
        const double mx = x + d * v.x;
        const double my = y + d * v.y;
        if (std::abs(mx - cx * 0.7) < opts.width * 0.22 && std::abs(my - cy * 0.8) < opts.height * 0.25)
          return plane == 0 ? 0.1 + 0.6 * mid(mx, my) : chroma_of(mid, plane, mx, my);
        const double bx = x + 0.25 * d * v.x;
        const double by = y + 0.25 * d * v.y;
        return plane == 0 ? 0.3 + 0.5 * back(bx, by) : chroma_of(back, plane, bx, by);
      });
    }
    case SynthKind::kNoise: {
      const Texture base(opts.seed);
      return render(opts, [&, seed = opts.seed](int plane, double x, double y, ViewCoord v) {
        // A static background plus per-view white noise.
        std::uint64_t h = seed ^ (static_cast<std::uint64_t>(plane) << 48) ^
                          (static_cast<std::uint64_t>(static_cast<std::int64_t>(v.x) & 0xFF) << 40) ^
                          (static_cast<std::uint64_t>(static_cast<std::int64_t>(v.y) & 0xFF) << 32) ^
                          (static_cast<std::uint64_t>(static_cast<std::int64_t>(y * 2)) << 16) ^
                          static_cast<std::uint64_t>(static_cast<std::int64_t>(x * 2));
        h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
        h = (h ^ (h >> 27)) * 0x94D049BB133111EBull;
        h ^= h >> 31;
        const double noise = static_cast<double>(h >> 11) / static_cast<double>(1ull << 53) - 0.5;
        const double bg = plane == 0 ? base(x, y) : chroma_of(base, plane, x, y);
        return 0.75 * bg + 0.25 * (noise + 0.5);
      });
    }
  }
  throw ConfigError("unknown fixture kind");
}

}  // namespace lfpseq
