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

#include "lfpseq/io.hpp"

#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "lfpseq/serialize.hpp"

namespace lfpseq {

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return bytes;
}

namespace {

std::string unique_suffix() {
  std::random_device rd;
  std::ostringstream os;
  os << std::hex << rd() << rd();
  return os.str();
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

Json read_json(const fs::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::exception& e) {
    throw IoError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  const fs::path tmp = path.string() + ".tmp-" + unique_suffix();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

void write_file_atomic(const fs::path& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string raw_sidecar(const Picture& pic) {
  return Json{{"width", pic.width()},
              {"height", pic.height()},
              {"bit_depth", pic.bit_depth},
              {"chroma", to_string(pic.chroma)}}
             .dump(2) +
         "\n";
}

std::vector<std::uint8_t> encode_raw(const Picture& pic) {
  const bool wide = pic.bit_depth > 8;
  std::vector<std::uint8_t> out;
  for (const auto& plane : pic.planes) {
    for (Eigen::Index i = 0; i < plane.size(); ++i) {
      const Sample s = plane.data()[i];
      out.push_back(static_cast<std::uint8_t>(s & 0xFF));
      if (wide) out.push_back(static_cast<std::uint8_t>(s >> 8));
    }
  }
  return out;
}

Picture read_raw(const fs::path& path) {
  const fs::path side = path.string() + ".json";
  if (!fs::exists(side)) throw IoError("missing sidecar " + side.string());
  const Json h = read_json(side);
  Picture pic;
  try {
    pic = Picture(h.at("width").get<int>(), h.at("height").get<int>(), h.value("bit_depth", 8),
                  chroma_format_from_string(h.value("chroma", std::string("420"))));
  } catch (const Json::exception& e) {
    throw IoError("invalid sidecar " + side.string() + ": " + e.what());
  }
  const auto bytes = read_file(path);
  const std::size_t bps = pic.bit_depth > 8 ? 2 : 1;
  std::size_t need = 0;
  for (const auto& plane : pic.planes) need += static_cast<std::size_t>(plane.size()) * bps;
  if (bytes.size() != need)
    throw IoError(path.string() + " holds " + std::to_string(bytes.size()) + " bytes, expected " + std::to_string(need));
  std::size_t at = 0;
  for (auto& plane : pic.planes) {
    for (Eigen::Index i = 0; i < plane.size(); ++i) {
      Sample s = bytes[at++];
      if (bps == 2) s = static_cast<Sample>(s | bytes[at++] << 8);
      plane.data()[i] = s;
    }
  }
  pic.validate();
  return pic;
}

Picture read_pgm(const fs::path& path) {
  const auto bytes = read_file(path);
  std::size_t pos = 0;
  const auto token = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) t.push_back(static_cast<char>(bytes[pos++]));
    return t;
  };
  if (token() != "P5") throw IoError(path.string() + " is not a binary PGM");
  int w = 0, h = 0, maxv = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    maxv = std::stoi(token());
  } catch (const std::exception&) {
    throw IoError("malformed PGM header in " + path.string());
  }
  ++pos;  // single whitespace before the raster
  if (w <= 0 || h <= 0 || maxv <= 0 || maxv > 65535) throw IoError("unsupported PGM header in " + path.string());
  int depth = 1;
  while ((1 << depth) - 1 < maxv) ++depth;
  depth = std::max(depth, 8);
  const std::size_t bps = maxv > 255 ? 2 : 1;
  if (bytes.size() < pos + static_cast<std::size_t>(w) * h * bps) throw IoError("truncated PGM " + path.string());
  Picture pic(w, h, depth, ChromaFormat::k444, static_cast<Sample>(1 << (depth - 1)));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Sample s = bytes[pos++];
      if (bps == 2) s = static_cast<Sample>(s << 8 | bytes[pos++]);  // PGM is big-endian
      pic.planes[0](y, x) = s;
    }
  }
  return pic;
}

Picture read_picture(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("no such file " + path.string());
  return path.extension() == ".pgm" ? read_pgm(path) : read_raw(path);
}

std::string view_file_stem(Cell cell, int poc) {
  return "view_r" + std::to_string(cell.row) + "_c" + std::to_string(cell.col) + "_poc" + std::to_string(poc);
}

StagedDir::StagedDir(fs::path target) : target_(std::move(target)) {
  staging_ = target_.string() + ".partial-" + unique_suffix();
  std::error_code ec;
  fs::create_directories(staging_, ec);
  if (ec) throw IoError("cannot create " + staging_.string());
}

StagedDir::~StagedDir() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void StagedDir::commit() {
  std::error_code ec;
  if (fs::exists(target_)) fs::remove_all(target_, ec);
  if (ec) throw IoError("cannot replace " + target_.string());
  fs::rename(staging_, target_, ec);
  if (ec) throw IoError("cannot move output into place at " + target_.string());
  committed_ = true;
}

std::vector<std::string> write_views(const fs::path& dir, const ViewGrid& grid) {
  grid.check_complete();
  const PocMap pocs = grid.poc_map();
  std::vector<std::string> names;
  for (int p = 0; p < pocs.size(); ++p) {
    const Picture& v = grid.views[static_cast<std::size_t>(p)];
    const std::string name = view_file_stem(pocs.cell_of(p), p) + ".yuv";
    write_file_atomic(dir / name, encode_raw(v));
    write_file_atomic(dir / (name + ".json"), raw_sidecar(v));
    names.push_back(name);
  }
  write_file_atomic(dir / "geometry.json", poc_map_json(pocs).dump(2) + "\n");
  return names;
}

ViewGrid read_views(const fs::path& dir) {
  const fs::path gpath = dir / "geometry.json";
  if (!fs::exists(gpath)) throw IoError("missing " + gpath.string());
  const Json j = read_json(gpath);
  ViewGrid grid;
  try {
    grid.geometry = j.contains("geometry") ? j.at("geometry").get<GridGeometry>() : j.get<GridGeometry>();
  } catch (const Json::exception& e) {
    throw IoError("invalid geometry in " + gpath.string() + ": " + e.what());
  }
  const PocMap pocs(grid.geometry);
  for (int p = 0; p < pocs.size(); ++p) {
    const std::string stem = view_file_stem(pocs.cell_of(p), p);
    fs::path f = dir / (stem + ".yuv");
    if (!fs::exists(f)) f = dir / (stem + ".pgm");
    if (!fs::exists(f)) throw IncompleteGridError("missing view file for POC " + std::to_string(p) + " (" + stem + ")");
    grid.views.push_back(read_picture(f));
  }
  grid.check_complete();
  return grid;
}

}  // namespace lfpseq
