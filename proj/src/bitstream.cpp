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

#include <cstring>

#include "lfpseq/codec.hpp"

namespace lfpseq {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>((v >> (8 * k)) & 0xFF));
}

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> b) : b_(b) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (b_.size() - pos_ < n) throw DecodeError(std::string("truncated stream: ") + what, pos_);
    auto s = b_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32(const char* what) {
    const auto s = take(4, what);
    return static_cast<std::uint32_t>(s[0]) | static_cast<std::uint32_t>(s[1]) << 8 |
           static_cast<std::uint32_t>(s[2]) << 16 | static_cast<std::uint32_t>(s[3]) << 24;
  }
  std::uint16_t u16(const char* what) {
    const auto s = take(2, what);
    return static_cast<std::uint16_t>(s[0] | s[1] << 8);
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return b_.size() - pos_; }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> Bitstream::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(size_bytes());
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(header_json.size()));
  out.insert(out.end(), header_json.begin(), header_json.end());
  put_u32(out, static_cast<std::uint32_t>(payloads.size()));
  for (const auto& p : payloads) {
    put_u32(out, static_cast<std::uint32_t>(p.size()));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

Bitstream Bitstream::parse(std::span<const std::uint8_t> bytes) {
  Cursor c(bytes);
  const auto magic = c.take(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw DecodeError("bad magic", 0);
  const std::size_t vpos = c.pos();
  if (c.u16("version") != kVersion) throw DecodeError("unsupported stream version", vpos);
  Bitstream s;
  const std::uint32_t hlen = c.u32("header length");
  const auto h = c.take(hlen, "header");
  s.header_json.assign(h.begin(), h.end());
  const std::size_t cpos = c.pos();
  const std::uint32_t count = c.u32("frame count");
  // Each frame needs at least its length field.
  if (count > c.remaining() / 4) throw DecodeError("frame count exceeds stream size", cpos);
  s.payloads.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint32_t len = c.u32("frame length");
    const auto p = c.take(len, "frame payload");
    s.payloads.emplace_back(p.begin(), p.end());
  }
  if (c.remaining() != 0) throw DecodeError("trailing bytes after last frame", c.pos());
  return s;
}

std::size_t Bitstream::size_bytes() const {
  std::size_t n = 4 + 2 + 4 + header_json.size() + 4;
  for (const auto& p : payloads) n += 4 + p.size();
  return n;
}

}  // namespace lfpseq
