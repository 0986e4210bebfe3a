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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lfpseq/serialize.hpp"

namespace lfpseq {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce a command's outputs. No timestamps, so a
// rerun with the same arguments yields an identical manifest.
struct RunManifest {
  std::string tool = "lfpseq";
  std::string version = kToolVersion;
  std::string subcommand;
  std::map<std::string, std::string> inputs;  // path -> content hash
  Json geometry;
  Json config;
  Json params;
  std::map<std::string, std::string> outputs;  // file name -> content hash

  Json to_json() const;
  static RunManifest from_json(const Json& j);
  bool operator==(const RunManifest&) const = default;
};

// Runs one command line (without the program name). Exit codes: 0 success,
// 1 domain error, 2 usage error. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfpseq
