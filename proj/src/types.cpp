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

#include "lfpseq/types.hpp"

namespace lfpseq {

std::string to_string(ChromaFormat f) { return f == ChromaFormat::k420 ? "420" : "444"; }

ChromaFormat chroma_format_from_string(const std::string& s) {
  if (s == "420" || s == "4:2:0") return ChromaFormat::k420;
  if (s == "444" || s == "4:4:4") return ChromaFormat::k444;
  throw ConfigError("unknown chroma format '" + s + "'");
}

Picture::Picture(int width, int height, int depth, ChromaFormat format, Sample fill)
    : bit_depth(depth), chroma(format) {
  if (width < 0 || height < 0) throw DimensionError("negative picture size");
  if (depth != 8 && depth != 10) throw DimensionError("bit depth must be 8 or 10");
  const int s = chroma_shift(format);
  if (s && (width % 2 || height % 2)) throw DimensionError("4:2:0 pictures need even dimensions");
  planes[0] = SamplePlane::Constant(height, width, fill);
  for (int p = 1; p < 3; ++p) planes[p] = SamplePlane::Constant(height >> s, width >> s, fill);
}

void Picture::validate() const {
  if (bit_depth != 8 && bit_depth != 10) throw DimensionError("bit depth must be 8 or 10");
  const int s = chroma_shift(chroma);
  for (int p = 1; p < 3; ++p) {
    if (planes[p].rows() != (planes[0].rows() >> s) || planes[p].cols() != (planes[0].cols() >> s))
      throw DimensionError("chroma plane size does not match the chroma format");
  }
  if (s && (planes[0].rows() % 2 || planes[0].cols() % 2))
    throw DimensionError("4:2:0 pictures need even dimensions");
  for (const auto& plane : planes) {
    if (plane.size() && plane.maxCoeff() > max_value()) throw DimensionError("sample exceeds bit depth");
  }
}

bool Picture::operator==(const Picture& other) const {
  if (bit_depth != other.bit_depth || chroma != other.chroma) return false;
  for (int p = 0; p < 3; ++p) {
    if (planes[p].rows() != other.planes[p].rows() || planes[p].cols() != other.planes[p].cols()) return false;
    if ((planes[p] != other.planes[p]).any()) return false;
  }
  return true;
}

}  // namespace lfpseq
