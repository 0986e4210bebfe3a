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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lfpseq/types.hpp"
#include "lfpseq/view_grid.hpp"

namespace lfpseq {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const fs::path& path, const std::string& text);

// Planar raw image: Y, U, V planes back to back, one byte per sample up to
// 8 bits and two little-endian bytes above. The sidecar `<path>.json` holds
// width, height, bit_depth and chroma.
Picture read_raw(const fs::path& path);
std::vector<std::uint8_t> encode_raw(const Picture& pic);
std::string raw_sidecar(const Picture& pic);

// Binary PGM (P5). Reading yields a 4:4:4 picture with mid-grey chroma.
Picture read_pgm(const fs::path& path);

// Reads .pgm by extension, planar raw otherwise.
Picture read_picture(const fs::path& path);

std::string view_file_stem(Cell cell, int poc);

// A directory that only appears at `target` once commit() succeeds; files are
// staged in a sibling directory that is removed if the object dies first.
class StagedDir {
 public:
  explicit StagedDir(fs::path target);
  ~StagedDir();
  StagedDir(const StagedDir&) = delete;
  StagedDir& operator=(const StagedDir&) = delete;

  const fs::path& path() const { return staging_; }
  void commit();

 private:
  fs::path target_;
  fs::path staging_;
  bool committed_ = false;
};

// Writes view_r{row}_c{col}_poc{P}.yuv (+ .json) per view and geometry.json
// holding the geometry and POC map. Returns the written file names in POC
// order.
std::vector<std::string> write_views(const fs::path& dir, const ViewGrid& grid);
ViewGrid read_views(const fs::path& dir);

}  // namespace lfpseq
