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
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace lfpseq {

// Sample storage is sized for 10-bit content.
using Sample = std::uint16_t;

template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using SamplePlane = Plane<Sample>;

enum class ChromaFormat { k444, k420 };

inline int chroma_shift(ChromaFormat f) { return f == ChromaFormat::k420 ? 1 : 0; }

std::string to_string(ChromaFormat f);
ChromaFormat chroma_format_from_string(const std::string& s);

// Planar Y/U/V picture. Used for lenslet rasters, views and codec frames.
struct Picture {
  std::array<SamplePlane, 3> planes;
  int bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k420;

  Picture() = default;
  Picture(int width, int height, int bit_depth, ChromaFormat chroma, Sample fill = 0);

  int width() const { return static_cast<int>(planes[0].cols()); }
  int height() const { return static_cast<int>(planes[0].rows()); }
  bool empty() const { return planes[0].size() == 0; }
  Sample max_value() const { return static_cast<Sample>((1 << bit_depth) - 1); }

  // Throws DimensionError when plane sizes disagree with the chroma format
  // or a sample exceeds the bit depth.
  void validate() const;

  bool operator==(const Picture& other) const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };
class LookupError : public Error { using Error::Error; };
class IncompleteGridError : public Error { using Error::Error; };
class SchedulingError : public Error { using Error::Error; };
class SimulationError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class EvaluationError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"), offset_(byte_offset) {}
  std::size_t byte_offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace lfpseq
