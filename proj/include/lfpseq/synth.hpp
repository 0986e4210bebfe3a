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
#include <string>

#include "lfpseq/view_grid.hpp"

namespace lfpseq {

enum class SynthKind {
  kTexture,  // every view is the base texture shifted by disparity * view coordinate
  kPinhole,  // three fronto-parallel layers at different depths with occlusion
  kNoise,    // independent noise per view; no inter-view redundancy
};

std::string to_string(SynthKind k);
SynthKind synth_kind_from_string(const std::string& s);

struct SynthOptions {
  int width = 64;
  int height = 64;
  int bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k420;
  GridGeometry geometry = GridGeometry::default_geometry();
  double disparity = 1.0;  // pixels per view step for the texture and the nearest layer
  std::uint64_t seed = 1;
};

// Deterministic for a given kind and options. With an integer disparity the
// texture views are exact integer shifts of one another.
ViewGrid synthesize(SynthKind kind, const SynthOptions& opts = {});

}  // namespace lfpseq
