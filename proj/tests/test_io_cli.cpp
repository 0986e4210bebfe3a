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

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lfpseq/cli.hpp"
#include "lfpseq/io.hpp"
#include "lfpseq/synth.hpp"

using namespace lfpseq;

namespace {

// Fresh directory removed at scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("lfpseq-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("raw planar round trip") {
    TempDir tmp;
    std::mt19937 rng(1);
    for (int depth : {8, 10}) {
      Picture p(6, 4, depth, ChromaFormat::k420);
      for (auto& plane : p.planes)
        for (Eigen::Index k = 0; k < plane.size(); ++k) plane.data()[k] = static_cast<Sample>(rng() % (1u << depth));
      const std::string path = tmp / ("img" + std::to_string(depth) + ".yuv");
      write_file_atomic(path, encode_raw(p));
      write_file_atomic(path + ".json", raw_sidecar(p));
      CHECK(read_raw(path) == p);
      CHECK(fs::file_size(path) == static_cast<std::uintmax_t>((24 + 6 + 6) * (depth > 8 ? 2 : 1)));
    }
    write_file_atomic(tmp / "orphan.yuv", std::string("abc"));
    CHECK_THROWS_AS(read_raw(tmp / "orphan.yuv"), IoError);
  }

  TEST_CASE("PGM input") {
    TempDir tmp;
    std::string data = "P5\n# comment\n3 2\n255\n";
    data += std::string("\x01\x02\x03\x04\x05\x06", 6);
    write_file_atomic(tmp / "a.pgm", data);
    const Picture p = read_picture(tmp / "a.pgm");
    CHECK(p.width() == 3);
    CHECK(p.height() == 2);
    CHECK(p.chroma == ChromaFormat::k444);
    CHECK(p.planes[0](1, 2) == 6);
    CHECK(p.planes[1](0, 0) == 128);
    write_file_atomic(tmp / "b.pgm", std::string("P5\n3 2\n255\n\x01"));
    CHECK_THROWS_AS(read_picture(tmp / "b.pgm"), IoError);
  }

  TEST_CASE("view directories") {
    TempDir tmp;
    SynthOptions o;
    o.width = o.height = 8;
    o.geometry = GridGeometry::with_corners_removed(3, 3);
    const ViewGrid grid = synthesize(SynthKind::kPinhole, o);
    const auto names = write_views(tmp.path, grid);
    CHECK(names.front() == "view_r1_c1_poc0.yuv");
    CHECK(names[1] == "view_r0_c1_poc1.yuv");
    const ViewGrid back = read_views(tmp.path);
    CHECK(back.views == grid.views);
    CHECK(back.geometry.removed == grid.geometry.removed);
    fs::remove(tmp.path / names[2]);
    CHECK_THROWS_AS(read_views(tmp.path), IncompleteGridError);
  }

  TEST_CASE("staged directories appear only on commit") {
    TempDir tmp;
    const fs::path target = tmp.path / "out";
    {
      StagedDir d(target);
      write_file_atomic(d.path() / "x", std::string("1"));
    }
    CHECK_FALSE(fs::exists(target));
    CHECK(std::distance(fs::directory_iterator(tmp.path), fs::directory_iterator()) == 0);
    {
      StagedDir d(target);
      write_file_atomic(d.path() / "x", std::string("1"));
      d.commit();
    }
    CHECK(fs::exists(target / "x"));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("schedule reports") {
    Run r = cli({"schedule", "--output", "/dev/null"});
    CHECK(r.code == 0);
    CHECK(r.out.find("peak DPB: 12") != std::string::npos);
    r = cli({"schedule", "--quadrant", "TL", "--output", "/dev/null"});
    CHECK(r.out.find("peak DPB: 10") != std::string::npos);
    r = cli({"schedule", "--structure", "1d", "--output", "/dev/null"});
    CHECK(r.out.find("peak DPB: 5") != std::string::npos);
    r = cli({"schedule", "--rows", "1", "--cols", "1"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out.substr(r.out.find('{')));
    CHECK(j.at("order") == Json::array({0}));
  }

  TEST_CASE("HM table") {
    TempDir tmp;
    CHECK(cli({"schedule", "--output", tmp / "s.json", "--hm-table", tmp / "hm.txt"}).code == 0);
    const std::string t = slurp(tmp / "hm.txt");
    CHECK(t.find("Frame1:  I  0  0  0") != std::string::npos);
    CHECK(std::count(t.begin(), t.end(), '\n') == 166);
  }

  TEST_CASE("exit codes") {
    TempDir tmp;
    CHECK(cli({}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    const Run missing = cli({"decompose", "--input", tmp / "nope.yuv", "--output", tmp / "views"});
    CHECK(missing.code == 2);
    CHECK_FALSE(fs::exists(tmp / "views"));
    CHECK(std::distance(fs::directory_iterator(tmp.path), fs::directory_iterator()) == 0);
    CHECK(cli({"schedule", "--rows", "4"}).code == 1);
  }

  TEST_CASE("synth, decompose and eval") {
    TempDir tmp;
    const std::vector<std::string> synth = {"synth", "--synth", "texture", "--width", "8", "--height", "8",
                                            "--output", tmp / "views", "--lenslet-name", "lf.yuv"};
    REQUIRE(cli(synth).code == 0);
    CHECK(fs::exists(tmp / "views/view_r6_c6_poc0.yuv"));
    const std::string lf = tmp / "views/lf.yuv";
    REQUIRE(cli({"decompose", "--input", lf, "--output", tmp / "dec"}).code == 0);
    int n = 0;
    for (const auto& e : fs::directory_iterator(tmp / "dec")) n += e.path().extension() == ".yuv";
    CHECK(n == 165);
    const std::string first = slurp(tmp / "dec/manifest.json");
    REQUIRE(cli({"decompose", "--input", lf, "--output", tmp / "dec"}).code == 0);
    CHECK(slurp(tmp / "dec/manifest.json") == first);
    const Run e = cli({"eval", "--reference", tmp / "views", "--test", tmp / "dec"});
    CHECK(e.code == 0);
    CHECK(e.out.find("\"lossless\"") != std::string::npos);
    const Run single = cli({"eval", "--reference", tmp / "views/view_r0_c1_poc1.yuv", "--test",
                            tmp / "dec/view_r0_c1_poc1.yuv"});
    CHECK(single.out.find("\"lossless\"") != std::string::npos);
  }

  TEST_CASE("encode, decode and verify") {
    TempDir tmp;
    const std::vector<std::string> base = {"--synth", "pinhole", "--width", "16", "--height", "16", "--rows",
                                           "5",       "--cols",  "5"};
    std::vector<std::string> enc = {"encode", "--output", tmp / "a.lfps", "--qp", "28", "--stats", tmp / "a.csv"};
    enc.insert(enc.end(), base.begin(), base.end());
    REQUIRE(cli(enc).code == 0);
    const Run d = cli({"decode", "--input", tmp / "a.lfps", "--verify", "--output", tmp / "out"});
    CHECK(d.code == 0);
    CHECK(d.out.find("verify: sample-exact") != std::string::npos);
    CHECK(fs::exists(tmp / "out/geometry.json"));
    CHECK(slurp(tmp / "a.csv").rfind("frame,view,qp,bits", 0) == 0);

    const Json m = Json::parse(slurp(tmp / "a.lfps.manifest.json"));
    CHECK(RunManifest::from_json(m).to_json() == m);
    CHECK(m.at("config").at("qp") == 28);
    REQUIRE(cli(enc).code == 0);
    CHECK(Json::parse(slurp(tmp / "a.lfps.manifest.json")) == m);

    // Corrupt the payload: the decoder must fail cleanly.
    std::string bytes = slurp(tmp / "a.lfps");
    bytes.resize(bytes.size() - 3);
    write_file_atomic(tmp / "bad.lfps", bytes);
    CHECK(cli({"decode", "--input", tmp / "bad.lfps"}).code == 1);
  }

  TEST_CASE("config file sits under explicit flags") {
    TempDir tmp;
    write_file_atomic(tmp / "cfg.json", std::string(R"({"qp": 33, "block_size": 8, "structure": "1d"})"));
    const std::vector<std::string> base = {"--synth", "texture", "--width", "16", "--height", "16", "--rows", "3",
                                           "--cols",  "3",       "--config", tmp / "cfg.json"};
    std::vector<std::string> a = {"encode", "--output", tmp / "a.lfps"};
    a.insert(a.end(), base.begin(), base.end());
    REQUIRE(cli(a).code == 0);
    Json m = Json::parse(slurp(tmp / "a.lfps.manifest.json"));
    CHECK(m.at("config").at("qp") == 33);
    CHECK(m.at("config").at("block_size") == 8);
    CHECK(m.at("config").at("structure") == "1d");
    a.insert(a.end(), {"--qp", "20"});
    REQUIRE(cli(a).code == 0);
    m = Json::parse(slurp(tmp / "a.lfps.manifest.json"));
    CHECK(m.at("config").at("qp") == 20);
    CHECK(m.at("config").at("block_size") == 8);
  }

  TEST_CASE("compare and sweep") {
    TempDir tmp;
    const Run c = cli({"compare", "--synth", "texture", "--width", "16", "--height", "16", "--rows", "5", "--cols",
                       "5", "--structures", "2d,1d", "--qps", "15,20,25,30", "--output", tmp / "r.json", "--csv",
                       tmp / "r.csv", "--gnuplot", tmp / "plots", "--jobs", "2"});
    REQUIRE(c.code == 0);
    const Json r = Json::parse(slurp(tmp / "r.json"));
    CHECK(r.at("bd_rate").at("2d").at("status") == "ok");
    CHECK(r.at("curves").at("1d").size() == 4);
    CHECK(fs::exists(tmp / "plots/texture_2d.dat"));
    const Run s = cli({"sweep", "--synth", "texture", "--width", "16", "--height", "16", "--rows", "3", "--cols", "3",
                       "--qps", "25"});
    CHECK(s.code == 0);
    CHECK(s.out.find("bd-rate: unavailable") != std::string::npos);
  }

  TEST_CASE("scale-mv") {
    Run r = cli({"scale-mv", "--mv", "8,-4", "--cur", "0,0", "--cur-ref", "2,1", "--donor-ref", "4,2"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out).at("mv") == Json::array({4, -2}));
    r = cli({"scale-mv", "--mode", "temporal", "--mv", "6,6", "--cur", "0,0", "--cur-ref", "1,2", "--donor-ref",
             "3,3", "--colocated", "0,0"});
    CHECK(Json::parse(r.out).at("mv") == Json::array({2, 4}));
    CHECK(cli({"scale-mv", "--mode", "temporal", "--mv", "6,6", "--cur", "0,0", "--cur-ref", "1,2", "--donor-ref",
               "3,3"}).code == 2);
    CHECK(cli({"scale-mv", "--mv", "6", "--cur", "0,0", "--cur-ref", "1,2", "--donor-ref", "3,3"}).code == 2);
  }
}
