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

#include "lfpseq/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "lfpseq/codec.hpp"
#include "lfpseq/eval.hpp"
#include "lfpseq/hash.hpp"
#include "lfpseq/io.hpp"
#include "lfpseq/mvscale.hpp"
#include "lfpseq/scheduler.hpp"
#include "lfpseq/synth.hpp"

namespace lfpseq {

Json RunManifest::to_json() const {
  return Json{{"tool", tool},     {"version", version}, {"subcommand", subcommand}, {"inputs", inputs},
              {"geometry", geometry}, {"config", config}, {"params", params},        {"outputs", outputs}};
}

RunManifest RunManifest::from_json(const Json& j) {
  RunManifest m;
  m.tool = j.at("tool").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.subcommand = j.at("subcommand").get<std::string>();
  m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
  m.geometry = j.at("geometry");
  m.config = j.at("config");
  m.params = j.at("params");
  m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
  return m;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hash_bytes(std::span<const std::uint8_t> b) {
  Fnv1a64 h;
  h.update(b);
  return h.hex();
}

std::string hash_text(const std::string& s) {
  Fnv1a64 h;
  h.update(s);
  return h.hex();
}

void require_exists(const std::string& path, const char* what) {
  if (!fs::exists(path)) throw UsageError(std::string(what) + " '" + path + "' does not exist");
}

ViewCoord parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected 'x,y' but got '" + s + "'");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("expected 'x,y' but got '" + s + "'");
  }
}

Json psnr_value(double db) { return std::isfinite(db) ? Json(db) : Json(format_psnr(db)); }

Json psnr_json(const PsnrResult& r) {
  return Json{{"psnr_y", psnr_value(r.y)},
              {"psnr_u", psnr_value(r.u)},
              {"psnr_v", psnr_value(r.v)},
              {"psnr_yuv", psnr_value(r.yuv)},
              {"status", r.lossless() ? "lossless" : "lossy"}};
}

void write_manifest(const fs::path& path, const RunManifest& m) { write_file_atomic(path, m.to_json().dump(2) + "\n"); }

// Geometry flags shared by every command that needs a grid.
struct GeometryArgs {
  std::string file;
  int rows = 13;
  int cols = 13;
  int pitch = 1;
  bool keep_corners = false;

  void add(CLI::App* app) {
    app->add_option("--geometry", file, "Geometry JSON file");
    app->add_option("--rows", rows, "Grid rows (odd)");
    app->add_option("--cols", cols, "Grid columns (odd)");
    app->add_option("--pitch", pitch, "Microlens pitch in samples");
    app->add_flag("--keep-corners", keep_corners, "Keep the four corner views");
  }

  GridGeometry resolve() const {
    GridGeometry g;
    if (!file.empty()) {
      require_exists(file, "geometry file");
      const auto bytes = read_file(file);
      try {
        const Json j = Json::parse(bytes.begin(), bytes.end());
        g = j.contains("geometry") ? j.at("geometry").get<GridGeometry>() : j.get<GridGeometry>();
      } catch (const Json::exception& e) {
        throw ConfigError(std::string("invalid geometry file: ") + e.what());
      }
    } else if (keep_corners) {
      g.rows = rows;
      g.cols = cols;
      g.microlens_pitch = pitch;
    } else {
      g = GridGeometry::with_corners_removed(rows, cols, pitch);
    }
    g.validate();
    return g;
  }
};

// Where a command's views come from: a view directory, a lenslet image or a
// synthetic fixture.
struct GridArgs {
  GeometryArgs geom;
  std::string views;
  std::string lenslet;
  std::string synth;
  SynthOptions synth_opts;
  std::string chroma = "420";

  void add(CLI::App* app) {
    geom.add(app);
    app->add_option("--views", views, "Directory of decomposed views");
    app->add_option("--lenslet", lenslet, "Lenslet image (raw planar with JSON sidecar, or PGM)");
    app->add_option("--synth", synth, "Synthetic fixture: texture, pinhole or noise");
    app->add_option("--width", synth_opts.width, "Synthetic view width");
    app->add_option("--height", synth_opts.height, "Synthetic view height");
    app->add_option("--disparity", synth_opts.disparity, "Synthetic disparity in pixels per view");
    app->add_option("--seed", synth_opts.seed, "Synthetic fixture seed");
    app->add_option("--bit-depth", synth_opts.bit_depth, "Synthetic bit depth");
    app->add_option("--chroma", chroma, "Synthetic chroma format: 420 or 444");
  }

  std::string label() const {
    if (!synth.empty()) return synth;
    return fs::path(!views.empty() ? views : lenslet).filename().string();
  }

  ViewGrid load(RunManifest& m) const {
    const int sources = !views.empty() + !lenslet.empty() + !synth.empty();
    if (sources != 1) throw UsageError("give exactly one of --views, --lenslet or --synth");
    ViewGrid grid;
    if (!views.empty()) {
      require_exists(views, "view directory");
      grid = read_views(views);
      m.inputs[views] = hash_text(recon_hash(grid));
    } else if (!lenslet.empty()) {
      require_exists(lenslet, "lenslet image");
      const Picture img = read_picture(lenslet);
      m.inputs[lenslet] = hash_bytes(encode_raw(img));
      grid = decompose_lenslet(img, geom.resolve());
    } else {
      SynthOptions o = synth_opts;
      o.geometry = geom.resolve();
      o.chroma = chroma_format_from_string(chroma);
      grid = synthesize(synth_kind_from_string(synth), o);
      m.params["synth"] = {{"kind", synth},          {"width", o.width}, {"height", o.height},
                           {"disparity", o.disparity}, {"seed", o.seed},   {"bit_depth", o.bit_depth},
                           {"chroma", chroma}};
    }
    m.geometry = grid.geometry;
    return grid;
  }
};

// Codec flags; a JSON config file fills in anything not given explicitly.
struct CodecArgs {
  std::string config_file;
  CodecConfig cfg;
  std::string structure = "2d";
  int gop = 16;
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App* app, bool with_structure = true) {
    app->add_option("--config", config_file, "JSON config; explicit flags take precedence");
    opts["qp"] = app->add_option("--qp", cfg.qp, "Intra QP");
    opts["block_size"] = app->add_option("--block-size", cfg.block_size, "Block size");
    opts["search_range"] = app->add_option("--search-range", cfg.search_range, "Motion search range");
    opts["n_per_list"] = app->add_option("--n-per-list", cfg.n_per_list, "References per list");
    opts["gop"] = app->add_option("--gop", gop, "GOP size of the 1-D anchor");
    if (with_structure) opts["structure"] = app->add_option("--structure", structure, "2d or 1d");
  }

  Json file_config() const {
    if (config_file.empty()) return Json::object();
    require_exists(config_file, "config file");
    const auto bytes = read_file(config_file);
    try {
      return Json::parse(bytes.begin(), bytes.end());
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("invalid config file: ") + e.what());
    }
  }

  template <class T>
  void merge(const Json& j, const std::string& key, T& value) const {
    const auto it = opts.find(key);
    if ((it == opts.end() || it->second->count() == 0) && j.contains(key)) value = j.at(key).get<T>();
  }

  void resolve() {
    const Json j = file_config();
    try {
      merge(j, "qp", cfg.qp);
      merge(j, "block_size", cfg.block_size);
      merge(j, "search_range", cfg.search_range);
      merge(j, "n_per_list", cfg.n_per_list);
      merge(j, "gop", gop);
      merge(j, "structure", structure);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("invalid config value: ") + e.what());
    }
    structure_from_string(structure);
    if (gop < 1) throw ConfigError("GOP size must be positive");
  }

  Json to_json() const {
    Json j = cfg;
    j["structure"] = structure;
    j["gop"] = gop;
    return j;
  }
};

std::vector<int> parse_qps(const std::string& s) {
  std::vector<int> qps;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      qps.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("invalid QP list '" + s + "'");
    }
  }
  if (qps.empty()) throw UsageError("QP list is empty");
  return qps;
}

std::string hm_table(const CodingSchedule& s) {
  std::ostringstream os;
  os << "#        Type POC QPoffset num_ref_pics reference_pictures | num_rps rps\n";
  int k = 1;
  for (int poc : s.order) {
    const auto p = static_cast<std::size_t>(poc);
    os << "Frame" << k++ << ":  " << (s.refs[p].empty() ? 'I' : 'B') << "  " << poc << "  " << s.qp_offset[p] << "  "
       << s.refs[p].size();
    for (int r : s.refs[p]) os << ' ' << r - poc;
    os << " | " << s.rps[p].size();
    for (int r : s.rps[p]) os << ' ' << r - poc;
    os << '\n';
  }
  return os.str();
}

int cmd_decompose(const std::string& input, GeometryArgs& geom, const std::string& output, std::ostream& out) {
  require_exists(input, "input image");
  RunManifest m;
  m.subcommand = "decompose";
  const Picture img = read_picture(input);
  m.inputs[input] = hash_bytes(encode_raw(img));
  const ViewGrid grid = decompose_lenslet(img, geom.resolve());
  m.geometry = grid.geometry;
  StagedDir dir(output);
  for (const std::string& name : write_views(dir.path(), grid))
    m.outputs[name] = hash_bytes(read_file(dir.path() / name));
  m.outputs["geometry.json"] = hash_bytes(read_file(dir.path() / "geometry.json"));
  write_manifest(dir.path() / "manifest.json", m);
  dir.commit();
  out << grid.views.size() << " views written to " << output << '\n';
  return 0;
}

int cmd_schedule(GeometryArgs& geom, const std::string& quadrant, const std::string& structure, int gop, int n_per_list,
                 const std::string& output, const std::string& hm, std::ostream& out) {
  const GridGeometry g = geom.resolve();
  Json report;
  std::string table;
  if (structure_from_string(structure) == Structure::k1D) {
    const SequenceSchedule s = build_schedule_1d(g.view_count(), gop);
    const DpbTimeline t = simulate_dpb(s.order, s.rps);
    report = Json{{"structure", "1d"}, {"gop", gop}, {"order", s.order}, {"rps", s.rps}, {"dpb", dpb_json(t)}};
    out << "views: " << s.order.size() << "\npeak DPB: " << t.peak << '\n';
  } else {
    CodingSchedule s = build_schedule(g);
    if (!quadrant.empty()) s = restrict_to_quadrant(s, quadrant_from_string(quadrant));
    const DpbTimeline t = simulate_dpb(s);
    report = schedule_json(s, g, n_per_list);
    report["dpb"] = dpb_json(t);
    if (!quadrant.empty()) report["quadrant"] = quadrant;
    table = hm_table(s);
    out << "views: " << s.order.size() << "\npeak DPB: " << t.peak << '\n';
  }
  const std::string text = report.dump(2) + "\n";
  if (output.empty()) out << text;
  else write_file_atomic(output, text);
  if (!hm.empty()) {
    if (table.empty()) throw UsageError("--hm-table is only available for the 2-D structure");
    write_file_atomic(hm, table);
  }
  return 0;
}

int cmd_encode(GridArgs& src, CodecArgs& codec, const std::string& output, const std::string& recon,
               const std::string& stats_path, std::ostream& out) {
  codec.resolve();
  RunManifest m;
  m.subcommand = "encode";
  const ViewGrid grid = src.load(m);
  m.config = codec.to_json();
  const SequencePlan plan = structure_from_string(codec.structure) == Structure::k2D
                                ? plan_2d(grid.geometry, codec.cfg)
                                : plan_1d(grid.geometry, codec.cfg, codec.gop);
  const EncodeResult enc = encode_sequence(grid, plan, codec.cfg);
  const auto bytes = enc.stream.serialize();
  write_file_atomic(output, bytes);
  m.outputs[fs::path(output).filename().string()] = hash_bytes(bytes);
  if (!stats_path.empty()) {
    std::ostringstream os;
    os << "frame,view,qp,bits,psnr_y,psnr_yuv,l0,l1,bi,intra\n";
    for (const FrameStats& f : enc.stats)
      os << f.frame << ',' << f.view << ',' << f.qp << ',' << f.bits << ',' << format_psnr(f.psnr_y) << ','
         << format_psnr(f.psnr_yuv) << ',' << f.mode_count[0] << ',' << f.mode_count[1] << ',' << f.mode_count[2]
         << ',' << f.mode_count[3] << '\n';
    write_file_atomic(stats_path, os.str());
    m.outputs[fs::path(stats_path).filename().string()] = hash_text(os.str());
  }
  if (!recon.empty()) {
    StagedDir dir(recon);
    write_views(dir.path(), enc.recon);
    dir.commit();
    m.outputs["recon"] = recon_hash(enc.recon);
  }
  write_manifest(output + ".manifest.json", m);
  const PsnrResult q = psnr(grid, enc.recon);
  out << "frames: " << enc.stats.size() << "\nbits: " << bytes.size() * 8 << "\npsnr_y: " << format_psnr(q.y)
      << "\npsnr_yuv: " << format_psnr(q.yuv) << '\n';
  return 0;
}

int cmd_decode(const std::string& input, const std::string& output, bool verify, std::ostream& out) {
  require_exists(input, "bitstream");
  const auto bytes = read_file(input);
  const Bitstream stream = Bitstream::parse(bytes);
  const ViewGrid grid = decode_sequence(stream);
  if (!output.empty()) {
    StagedDir dir(output);
    write_views(dir.path(), grid);
    dir.commit();
  }
  out << "views: " << grid.views.size() << '\n';
  if (verify) {
    const Json h = Json::parse(stream.header_json);
    const std::string expected = h.value("recon_hash", std::string());
    if (expected.empty()) throw DecodeError("stream carries no reconstruction hash", 10);
    if (expected != recon_hash(grid)) {
      out << "verify: MISMATCH\n";
      return 1;
    }
    out << "verify: sample-exact\n";
  }
  return 0;
}

int cmd_eval(const std::string& reference, const std::string& test, std::ostream& out) {
  require_exists(reference, "reference");
  require_exists(test, "test");
  PsnrResult r;
  if (fs::is_directory(reference) || fs::is_directory(test)) {
    r = psnr(read_views(reference), read_views(test));
  } else {
    r = psnr(read_picture(reference), read_picture(test));
  }
  out << psnr_json(r).dump(2) << '\n';
  return 0;
}

Json curve_json(const RdCurve& c) {
  Json a = Json::array();
  for (const RdPoint& p : c)
    a.push_back({{"qp", p.qp}, {"bits", p.bits}, {"psnr_y", psnr_value(p.psnr_y)}, {"psnr_yuv", psnr_value(p.psnr_yuv)}});
  return a;
}

int cmd_sweep(GridArgs& src, CodecArgs& codec, const std::string& qps, int jobs, const std::string& csv,
              std::ostream& out) {
  codec.resolve();
  RunManifest m;
  m.subcommand = "sweep";
  const ViewGrid grid = src.load(m);
  const auto rows = sweep({{src.label(), &grid, structure_from_string(codec.structure)}}, parse_qps(qps), codec.cfg,
                          jobs, codec.gop);
  std::ostringstream os;
  write_csv(os, rows);
  if (csv.empty()) {
    out << os.str();
  } else {
    write_file_atomic(csv, os.str());
    m.config = codec.to_json();
    m.params = {{"qps", qps}};
    m.outputs[fs::path(csv).filename().string()] = hash_text(os.str());
    write_manifest(csv + ".manifest.json", m);
  }
  if (rows.size() < 4) out << "bd-rate: unavailable (fewer than four points)\n";
  return 0;
}

int cmd_compare(GridArgs& src, CodecArgs& codec, const std::string& structures, const std::string& anchor,
                const std::string& qps, int jobs, const std::string& method, const std::string& output,
                const std::string& csv, const std::string& gnuplot, std::ostream& out) {
  codec.resolve();
  std::vector<Structure> list;
  std::stringstream ss(structures);
  for (std::string item; std::getline(ss, item, ',');) list.push_back(structure_from_string(item));
  const Structure anchor_s = structure_from_string(anchor);
  if (std::find(list.begin(), list.end(), anchor_s) == list.end()) list.push_back(anchor_s);
  if (list.size() < 2) throw UsageError("compare needs at least two structures");
  if (method != "cubic" && method != "pchip") throw UsageError("--bd-method must be cubic or pchip");
  const BdMethod bm = method == "cubic" ? BdMethod::kCubic : BdMethod::kPchip;

  RunManifest m;
  m.subcommand = "compare";
  const ViewGrid grid = src.load(m);
  m.config = codec.to_json();
  m.params = {{"structures", structures}, {"anchor", anchor}, {"qps", qps}, {"bd_method", method}};
  const std::string image = src.label();
  std::vector<SweepJob> work;
  for (Structure s : list) work.push_back({image, &grid, s});
  const auto rows = sweep(work, parse_qps(qps), codec.cfg, jobs, codec.gop);

  Json report{{"image", image}, {"anchor", anchor}, {"bd_method", method}, {"curves", Json::object()},
              {"bd_rate", Json::object()}};
  const RdCurve anchor_curve = curve_of(rows, image, anchor_s);
  for (Structure s : list) {
    const RdCurve c = curve_of(rows, image, s);
    report["curves"][to_string(s)] = curve_json(c);
    if (s == anchor_s) continue;
    const BdResult y = try_bd_rate(anchor_curve, c, bm, BdMetric::kY);
    const BdResult yuv = try_bd_rate(anchor_curve, c, bm, BdMetric::kYuv);
    report["bd_rate"][to_string(s)] = {{"y", y.percent ? Json(*y.percent) : Json(nullptr)},
                                       {"yuv", yuv.percent ? Json(*yuv.percent) : Json(nullptr)},
                                       {"status", y.status}};
    out << to_string(s) << " vs " << anchor << " BD-rate (Y): "
        << (y.percent ? std::to_string(*y.percent) + " %" : "unavailable (" + y.status + ")") << '\n';
  }
  const std::string text = report.dump(2) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    write_file_atomic(output, text);
    m.outputs[fs::path(output).filename().string()] = hash_text(text);
  }
  if (!csv.empty()) {
    std::ostringstream os;
    write_csv(os, rows);
    write_file_atomic(csv, os.str());
    m.outputs[fs::path(csv).filename().string()] = hash_text(os.str());
  }
  if (!gnuplot.empty()) {
    fs::create_directories(gnuplot);
    for (Structure s : list) {
      std::ostringstream os;
      write_gnuplot(os, curve_of(rows, image, s));
      const std::string name = image + "_" + to_string(s) + ".dat";
      write_file_atomic(fs::path(gnuplot) / name, os.str());
      m.outputs[name] = hash_text(os.str());
    }
  }
  if (!output.empty()) write_manifest(output + ".manifest.json", m);
  return 0;
}

int cmd_synth(GridArgs& src, const std::string& output, const std::string& lenslet, std::ostream& out) {
  if (src.synth.empty()) throw UsageError("--synth is required");
  RunManifest m;
  m.subcommand = "synth";
  const ViewGrid grid = src.load(m);
  StagedDir dir(output);
  for (const std::string& name : write_views(dir.path(), grid))
    m.outputs[name] = hash_bytes(read_file(dir.path() / name));
  if (!lenslet.empty()) {
    const Picture img = recompose(grid);
    const auto bytes = encode_raw(img);
    write_file_atomic(dir.path() / lenslet, bytes);
    write_file_atomic(dir.path() / (lenslet + ".json"), raw_sidecar(img));
    m.outputs[lenslet] = hash_bytes(bytes);
  }
  write_manifest(dir.path() / "manifest.json", m);
  dir.commit();
  out << grid.views.size() << " views written to " << output << '\n';
  return 0;
}

int cmd_scale_mv(const std::string& mode, const std::string& mv, const std::string& cur, const std::string& cur_ref,
                 const std::string& donor_ref, const std::string& colocated, std::ostream& out) {
  const ViewCoord v = parse_pair(mv);
  ScalingAnchors a;
  a.cur = parse_pair(cur);
  a.cur_ref = parse_pair(cur_ref);
  a.donor_ref = parse_pair(donor_ref);
  if (!colocated.empty()) a.colocated = parse_pair(colocated);
  ScaledMv r;
  if (mode == "spatial") {
    r = scale_spatial_detailed({v.x, v.y}, a);
  } else if (mode == "temporal") {
    if (!a.colocated) throw UsageError("temporal scaling needs --colocated");
    r = scale_temporal_detailed({v.x, v.y}, a);
  } else {
    throw UsageError("--mode must be spatial or temporal");
  }
  out << Json{{"mv", {r.mv.x, r.mv.y}}, {"x_copied", r.x_copied}, {"y_copied", r.y_copied}}.dump() << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Light-field pseudo-sequence coding toolkit", "lfpseq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string input, output, quadrant, hm, recon, stats, reference, test, qps = "15,20,25,30", csv, gnuplot;
  std::string structures = "2d,1d", anchor = "1d", method = "cubic", lenslet_out, sched_structure = "2d";
  std::string mode = "spatial", mv, cur, cur_ref, donor_ref, colocated;
  bool verify = false;
  int jobs = 1;
  int n_per_list = 4;
  int sched_gop = 16;

  GeometryArgs dgeom;
  auto* decompose = app.add_subcommand("decompose", "Split a lenslet image into views");
  decompose->add_option("--input", input, "Lenslet image")->required();
  decompose->add_option("--output", output, "Output directory")->required();
  dgeom.add(decompose);

  GeometryArgs sgeom;
  auto* schedule = app.add_subcommand("schedule", "Print the coding schedule and buffer report");
  sgeom.add(schedule);
  schedule->add_option("--quadrant", quadrant, "Replay only the center and one quadrant: TL, TR, BR or BL");
  schedule->add_option("--structure", sched_structure, "2d or 1d");
  schedule->add_option("--gop", sched_gop, "GOP size for the 1-D structure");
  schedule->add_option("--n-per-list", n_per_list, "References per list");
  schedule->add_option("--output", output, "Schedule JSON file (default: standard output)");
  schedule->add_option("--hm-table", hm, "Also write an HM-style GOP table");

  GridArgs esrc;
  CodecArgs ecodec;
  auto* encode = app.add_subcommand("encode", "Encode a light field");
  esrc.add(encode);
  ecodec.add(encode);
  encode->add_option("--output", output, "Bitstream file")->required();
  encode->add_option("--recon", recon, "Directory for reconstructed views");
  encode->add_option("--stats", stats, "Per-frame statistics CSV");

  auto* decode = app.add_subcommand("decode", "Decode a bitstream");
  decode->add_option("--input", input, "Bitstream file")->required();
  decode->add_option("--output", output, "Directory for decoded views");
  decode->add_flag("--verify", verify, "Check the output against the encoder reconstruction hash");

  auto* eval = app.add_subcommand("eval", "PSNR between two images or view directories");
  eval->add_option("--reference", reference, "Reference image or view directory")->required();
  eval->add_option("--test", test, "Test image or view directory")->required();

  GridArgs wsrc;
  CodecArgs wcodec;
  auto* sweep_cmd = app.add_subcommand("sweep", "Encode over a QP ladder");
  wsrc.add(sweep_cmd);
  wcodec.add(sweep_cmd);
  sweep_cmd->add_option("--qps", qps, "Comma-separated QPs");
  sweep_cmd->add_option("--jobs", jobs, "Concurrent encodes")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--csv", csv, "CSV file (default: standard output)");

  GridArgs csrc;
  CodecArgs ccodec;
  auto* compare = app.add_subcommand("compare", "BD-rate comparison of prediction structures");
  csrc.add(compare);
  ccodec.add(compare, false);
  compare->add_option("--structures", structures, "Comma-separated structures");
  compare->add_option("--anchor", anchor, "Reference structure for BD-rate");
  compare->add_option("--qps", qps, "Comma-separated QPs");
  compare->add_option("--jobs", jobs, "Concurrent encodes")->check(CLI::PositiveNumber);
  compare->add_option("--bd-method", method, "cubic or pchip");
  compare->add_option("--output", output, "Report JSON file (default: standard output)");
  compare->add_option("--csv", csv, "CSV of every R-D point");
  compare->add_option("--gnuplot", gnuplot, "Directory for gnuplot data files");

  GridArgs ysrc;
  auto* synth = app.add_subcommand("synth", "Write a synthetic light field");
  ysrc.add(synth);
  synth->add_option("--output", output, "Output directory")->required();
  synth->add_option("--lenslet-name", lenslet_out, "Also write the recomposed lenslet image under this name");

  auto* scale = app.add_subcommand("scale-mv", "Scale a motion vector between references");
  scale->add_option("--mode", mode, "spatial or temporal");
  scale->add_option("--mv", mv, "Vector as x,y")->required();
  scale->add_option("--cur", cur, "Current view coordinate x,y")->required();
  scale->add_option("--cur-ref", cur_ref, "Target reference coordinate x,y")->required();
  scale->add_option("--donor-ref", donor_ref, "Donor reference coordinate x,y")->required();
  scale->add_option("--colocated", colocated, "Colocated view coordinate x,y (temporal)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*decompose) return cmd_decompose(input, dgeom, output, out);
    if (*schedule) return cmd_schedule(sgeom, quadrant, sched_structure, sched_gop, n_per_list, output, hm, out);
    if (*encode) return cmd_encode(esrc, ecodec, output, recon, stats, out);
    if (*decode) return cmd_decode(input, output, verify, out);
    if (*eval) return cmd_eval(reference, test, out);
    if (*sweep_cmd) return cmd_sweep(wsrc, wcodec, qps, jobs, csv, out);
    if (*compare)
      return cmd_compare(csrc, ccodec, structures, anchor, qps, jobs, method, output, csv, gnuplot, out);
    if (*synth) return cmd_synth(ysrc, output, lenslet_out, out);
    if (*scale) return cmd_scale_mv(mode, mv, cur, cur_ref, donor_ref, colocated, out);
  } catch (const UsageError& e) {
    err << "lfpseq: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "lfpseq: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lfpseq
