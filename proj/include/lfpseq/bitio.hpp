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
#include <span>
#include <vector>

#include "lfpseq/types.hpp"

namespace lfpseq {

// MSB-first bit writer with Exp-Golomb helpers.
class BitWriter {
 public:
  void put_bit(bool b);
  void put_bits(std::uint32_t value, int count);
  void put_ue(std::uint32_t v);
  void put_se(std::int32_t v);
  // Pads with zero bits to a byte boundary.
  void align();

  std::size_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return buf_; }
  std::vector<std::uint8_t> take() {
    align();
    return std::move(buf_);
  }

 private:
  std::vector<std::uint8_t> buf_;
  std::size_t bits_ = 0;
};

// Reads what BitWriter wrote. Running past the end throws DecodeError.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data, std::size_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  bool get_bit();
  std::uint32_t get_bits(int count);
  std::uint32_t get_ue();
  std::int32_t get_se();

  std::size_t bit_position() const { return pos_; }
  std::size_t byte_offset() const { return base_ + pos_ / 8; }
  bool exhausted() const { return pos_ >= data_.size() * 8; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

// Bit cost of ue(v) / se(v) without writing.
int ue_bits(std::uint32_t v);
int se_bits(std::int32_t v);

enum class SymbolKind : std::uint8_t { kUnsigned, kSigned, kFlag };

struct Symbol {
  SymbolKind kind = SymbolKind::kUnsigned;
  std::int64_t value = 0;
  bool operator==(const Symbol&) const = default;
};

std::vector<std::uint8_t> entropy_encode(std::span<const Symbol> symbols);
// Decodes one symbol per entry of `kinds`.
std::vector<Symbol> entropy_decode(std::span<const std::uint8_t> bits, std::span<const SymbolKind> kinds);

}  // namespace lfpseq
