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

#include "lfpseq/bitio.hpp"

#include <bit>

namespace lfpseq {

void BitWriter::put_bit(bool b) {
  if (bits_ % 8 == 0) buf_.push_back(0);
  if (b) buf_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
  ++bits_;
}

void BitWriter::put_bits(std::uint32_t value, int count) {
  for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1u);
}

void BitWriter::put_ue(std::uint32_t v) {
  const std::uint64_t code = static_cast<std::uint64_t>(v) + 1;
  const int len = std::bit_width(code);
  for (int i = 0; i < len - 1; ++i) put_bit(false);
  for (int i = len - 1; i >= 0; --i) put_bit((code >> i) & 1u);
}

void BitWriter::put_se(std::int32_t v) {
  const std::int64_t w = v;
  put_ue(static_cast<std::uint32_t>(w > 0 ? 2 * w - 1 : -2 * w));
}

void BitWriter::align() { bits_ = (bits_ + 7) / 8 * 8; }

bool BitReader::get_bit() {
  if (pos_ >= data_.size() * 8) throw DecodeError("unexpected end of bitstream", byte_offset());
  const bool b = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
  ++pos_;
  return b;
}

std::uint32_t BitReader::get_bits(int count) {
  std::uint32_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint32_t>(get_bit());
  return v;
}

std::uint32_t BitReader::get_ue() {
  const std::size_t start = byte_offset();
  int zeros = 0;
  while (!get_bit()) {
    if (++zeros > 32) throw DecodeError("malformed Exp-Golomb code", start);
  }
  std::uint64_t code = 1;
  for (int i = 0; i < zeros; ++i) code = (code << 1) | static_cast<std::uint64_t>(get_bit());
  if (code - 1 > 0xFFFFFFFFull) throw DecodeError("Exp-Golomb value out of range", start);
  return static_cast<std::uint32_t>(code - 1);
}

std::int32_t BitReader::get_se() {
  const std::uint32_t k = get_ue();
  const std::int64_t v = (k & 1u) ? (static_cast<std::int64_t>(k) + 1) / 2 : -static_cast<std::int64_t>(k / 2);
  return static_cast<std::int32_t>(v);
}

int ue_bits(std::uint32_t v) { return 2 * std::bit_width(static_cast<std::uint64_t>(v) + 1) - 1; }

int se_bits(std::int32_t v) {
  const std::int64_t w = v;
  return ue_bits(static_cast<std::uint32_t>(w > 0 ? 2 * w - 1 : -2 * w));
}

std::vector<std::uint8_t> entropy_encode(std::span<const Symbol> symbols) {
  BitWriter w;
  for (const Symbol& s : symbols) {
    switch (s.kind) {
      case SymbolKind::kUnsigned: w.put_ue(static_cast<std::uint32_t>(s.value)); break;
      case SymbolKind::kSigned: w.put_se(static_cast<std::int32_t>(s.value)); break;
      case SymbolKind::kFlag: w.put_bit(s.value != 0); break;
    }
  }
  return w.take();
}

std::vector<Symbol> entropy_decode(std::span<const std::uint8_t> bits, std::span<const SymbolKind> kinds) {
  BitReader r(bits);
  std::vector<Symbol> out;
  out.reserve(kinds.size());
  for (SymbolKind k : kinds) {
    Symbol s{k, 0};
    switch (k) {
      case SymbolKind::kUnsigned: s.value = r.get_ue(); break;
      case SymbolKind::kSigned: s.value = r.get_se(); break;
      case SymbolKind::kFlag: s.value = r.get_bit(); break;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace lfpseq
