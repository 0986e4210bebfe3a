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
#include <vector>

#include <Eigen/Core>

#include "lfpseq/types.hpp"

namespace lfpseq {

using Residual = Plane<std::int32_t>;
using Coefficients = Plane<std::int32_t>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Separable integer approximation of the orthonormal DCT-II, scaled by
// 64*sqrt(N) and rounded. Sizes are powers of two from 4 to 64.
class IntegerTransform {
 public:
  static const IntegerTransform& of_size(int n);

  int size() const { return n_; }
  int log2_size() const { return log2n_; }
  const IntMatrix& basis() const { return basis_; }
  // log2 of the squared basis scale, 12 + log2(N).
  int norm_shift() const { return 12 + log2n_; }

  // basis * x * basis^T at full precision.
  IntMatrix forward(const Residual& x) const;
  // (basis^T * d * basis) >> shift, rounded.
  Residual inverse(const IntMatrix& d, int shift) const;

 private:
  explicit IntegerTransform(int n);
  int n_;
  int log2n_;
  IntMatrix basis_;
};

// Quantizer step 2^((qp-4)/6) relative to the orthonormal transform, with a
// rounding offset of 1/3 (intra) or 1/6 (inter) of a step.
Coefficients transform_quantize(const Residual& residual, int qp, bool intra);
Residual dequantize_inverse(const Coefficients& levels, int qp);

double quant_step(int qp);

// Diagonal zig-zag scan positions (row-major indices) for an n x n block.
const std::vector<int>& zigzag_scan(int n);

}  // namespace lfpseq
