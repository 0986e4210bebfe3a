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

#include "lfpseq/scheduler.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lfpseq {

std::vector<int> axis_order_2d(int length) {
  if (length < 1) throw ConfigError("axis length must be positive");
  std::vector<int> out{0};
  if (length == 1) return out;
  out.push_back(length - 1);
  std::function<void(int, int)> expand = [&](int a, int b) {
    if (b - a <= 1) return;
    const int m = (a + b + 1) / 2;
    out.push_back(m);
    expand(m, b);
    expand(a, m);
  };
  expand(0, length - 1);
  return out;
}

std::vector<std::vector<int>> axis_brackets(int length) {
  if (length < 1) throw ConfigError("axis length must be positive");
  std::vector<std::vector<int>> br(static_cast<std::size_t>(length));
  if (length == 1) return br;
  br[static_cast<std::size_t>(length - 1)] = {0};
  std::function<void(int, int)> expand = [&](int a, int b) {
    if (b - a <= 1) return;
    const int m = (a + b + 1) / 2;
    br[static_cast<std::size_t>(m)] = {a, b};
    expand(m, b);
    expand(a, m);
  };
  expand(0, length - 1);
  return br;
}

std::vector<int> gop_order_1d(int gop) {
  if (gop < 1 || (gop & (gop - 1)) != 0) throw ConfigError("GOP size must be a power of two");
  std::vector<int> out{0, gop};
  std::function<void(int, int)> expand = [&](int a, int b) {
    if (b - a <= 1) return;
    const int m = (a + b) / 2;
    out.push_back(m);
    expand(a, m);
    expand(m, b);
  };
  expand(0, gop);
  return out;
}

std::string to_string(Quadrant q) {
  switch (q) {
    case Quadrant::kTopLeft: return "TL";
    case Quadrant::kTopRight: return "TR";
    case Quadrant::kBottomRight: return "BR";
    case Quadrant::kBottomLeft: return "BL";
    case Quadrant::kNone: break;
  }
  return "none";
}

Quadrant quadrant_from_string(const std::string& s) {
  if (s == "TL") return Quadrant::kTopLeft;
  if (s == "TR") return Quadrant::kTopRight;
  if (s == "BR") return Quadrant::kBottomRight;
  if (s == "BL") return Quadrant::kBottomLeft;
  if (s == "none") return Quadrant::kNone;
  throw ConfigError("unknown quadrant '" + s + "'");
}

Quadrant quadrant_of(ViewCoord v) {
  if (v.x == 0 && v.y == 0) return Quadrant::kNone;
  if (v.y >= 0) return v.x >= 0 ? Quadrant::kTopLeft : Quadrant::kTopRight;
  return v.x < 0 ? Quadrant::kBottomRight : Quadrant::kBottomLeft;
}

std::vector<Quadrant> quadrant_partition(const GridGeometry& geom) {
  const PocMap pocs(geom);
  std::vector<Quadrant> out(static_cast<std::size_t>(pocs.size()));
  for (int p = 0; p < pocs.size(); ++p) out[static_cast<std::size_t>(p)] = quadrant_of(pocs.coord_of(p));
  return out;
}

std::string to_string(FrameClass c) {
  switch (c) {
    case FrameClass::kAnchor: return "anchor";
    case FrameClass::kRowReference: return "row_reference";
    case FrameClass::kImmediate: return "immediate";
    case FrameClass::kNonReference: return "non_reference";
  }
  return "non_reference";
}

FrameClass frame_class_from_string(const std::string& s) {
  if (s == "anchor") return FrameClass::kAnchor;
  if (s == "row_reference") return FrameClass::kRowReference;
  if (s == "immediate") return FrameClass::kImmediate;
  if (s == "non_reference") return FrameClass::kNonReference;
  throw ConfigError("unknown frame class '" + s + "'");
}

int class_rank(FrameClass c) { return static_cast<int>(c) + 1; }

namespace {

struct PassDirection {
  Quadrant quadrant;
  int row_sign;  // +1: local index i grows upward
  int col_sign;  // +1: local index j grows leftward
};

constexpr PassDirection kPasses[] = {
    {Quadrant::kTopLeft, 1, 1},
    {Quadrant::kTopRight, 1, -1},
    {Quadrant::kBottomRight, -1, -1},
    {Quadrant::kBottomLeft, -1, 1},
};

std::set<int> coarse_indices(int length) {
  std::set<int> c{0, length - 1};
  if (length >= 3) c.insert(length / 2);  // ceil((L-1)/2)
  return c;
}

// Coarse indices bracketing k; k itself plus its hierarchical parents when k
// is coarse.
std::vector<int> anchor_span(int k, const std::set<int>& coarse, const std::vector<std::vector<int>>& brackets) {
  if (coarse.count(k)) {
    std::vector<int> out{k};
    for (int b : brackets[static_cast<std::size_t>(k)]) out.push_back(b);
    return out;
  }
  auto hi = coarse.upper_bound(k);
  auto lo = std::prev(coarse.lower_bound(k));
  return {*lo, *hi};
}

class PassGeometry {
 public:
  PassGeometry(const GridGeometry& g, PassDirection d) : g_(g), d_(d) {}
  Cell cell(int i, int j) const { return {g_.center_row() - d_.row_sign * i, g_.center_col() - d_.col_sign * j}; }

 private:
  const GridGeometry& g_;
  PassDirection d_;
};

struct AnchorTable {
  std::vector<bool> is_anchor;  // per POC
};

AnchorTable anchor_table(const GridGeometry& geom, const PocMap& pocs) {
  const int len_i = geom.center_row() + 1;
  const int len_j = geom.center_col() + 1;
  const auto ci = coarse_indices(len_i);
  const auto cj = coarse_indices(len_j);
  AnchorTable t;
  t.is_anchor.assign(static_cast<std::size_t>(pocs.size()), false);
  for (const PassDirection& d : kPasses) {
    const PassGeometry pg(geom, d);
    for (int i : ci)
      for (int j : cj) {
        const Cell c = pg.cell(i, j);
        if (geom.is_surviving(c)) t.is_anchor[static_cast<std::size_t>(pocs.poc_of(c))] = true;
      }
  }
  return t;
}

}  // namespace

CodingPlan coding_order(const GridGeometry& geom) {
  const PocMap pocs(geom);
  const AnchorTable anchors = anchor_table(geom, pocs);
  const int n = pocs.size();
  const int len_i = geom.center_row() + 1;
  const int len_j = geom.center_col() + 1;
  const auto order_i = axis_order_2d(len_i);
  const auto order_j = axis_order_2d(len_j);
  const auto brackets_i = axis_brackets(len_i);
  const auto brackets_j = axis_brackets(len_j);
  const auto coarse_i = coarse_indices(len_i);
  const auto coarse_j = coarse_indices(len_j);

  CodingPlan plan;
  plan.refs.resize(static_cast<std::size_t>(n));
  plan.pass.assign(static_cast<std::size_t>(n), Quadrant::kNone);
  std::vector<bool> coded(static_cast<std::size_t>(n), false);
  plan.order.push_back(0);
  coded[0] = true;

  auto anchor_at = [&](Cell c) {
    return geom.is_surviving(c) && anchors.is_anchor[static_cast<std::size_t>(pocs.poc_of(c))];
  };

  for (const PassDirection& d : kPasses) {
    const PassGeometry pg(geom, d);
    enum class Line { kRow, kColumn };
    auto code = [&](int i, int j, Line line) {
      const Cell cell = pg.cell(i, j);
      if (!geom.is_surviving(cell)) return;
      const int poc = pocs.poc_of(cell);
      if (coded[static_cast<std::size_t>(poc)]) return;

      std::set<Cell> cand;
      if (line == Line::kRow) {
        for (int b : brackets_j[static_cast<std::size_t>(j)]) {
          const Cell c = pg.cell(i, b);
          // The row's axis-column frame belongs to the column pass; it is only
          // kept around when it is an anchor.
          if (b != 0 || anchor_at(c)) cand.insert(c);
        }
      } else {
        for (int b : brackets_i[static_cast<std::size_t>(i)]) cand.insert(pg.cell(b, j));
      }
      for (int a : anchor_span(i, coarse_i, brackets_i))
        for (int b : anchor_span(j, coarse_j, brackets_j)) {
          const Cell c = pg.cell(a, b);
          if (anchor_at(c)) cand.insert(c);
        }

      std::vector<int>& refs = plan.refs[static_cast<std::size_t>(poc)];
      for (const Cell& c : cand) {
        if (!geom.is_surviving(c)) continue;
        const int r = pocs.poc_of(c);
        if (r != poc && coded[static_cast<std::size_t>(r)]) refs.push_back(r);
      }
      if (refs.empty()) refs.push_back(0);
      std::sort(refs.begin(), refs.end());
      plan.order.push_back(poc);
      plan.pass[static_cast<std::size_t>(poc)] = d.quadrant;
      coded[static_cast<std::size_t>(poc)] = true;
    };

    for (int j : order_j) code(0, j, Line::kRow);
    for (int i : order_i) code(i, 0, Line::kColumn);
    for (int i : order_i) {
      if (i == 0) continue;
      for (int j : order_j) {
        if (j == 0) continue;
        code(i, j, Line::kRow);
      }
    }
  }
  if (static_cast<int>(plan.order.size()) != n)
    throw SchedulingError("coding passes did not cover every view");
  return plan;
}

std::vector<std::vector<int>> build_rps(const std::vector<int>& order, const std::vector<std::vector<int>>& refs) {
  const std::size_t n = refs.size();
  std::vector<int> pos(n, -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int f = order[k];
    if (f < 0 || static_cast<std::size_t>(f) >= n || pos[static_cast<std::size_t>(f)] >= 0)
      throw SchedulingError("coding order is not a permutation");
    pos[static_cast<std::size_t>(f)] = static_cast<int>(k);
  }
  std::vector<int> last_use(n, -1);
  for (int f : order) {
    for (int r : refs[static_cast<std::size_t>(f)]) {
      if (r < 0 || static_cast<std::size_t>(r) >= n || pos[static_cast<std::size_t>(r)] < 0)
        throw SchedulingError("frame " + std::to_string(f) + " references an unscheduled frame");
      if (pos[static_cast<std::size_t>(r)] >= pos[static_cast<std::size_t>(f)])
        throw SchedulingError("frame " + std::to_string(f) + " references frame " + std::to_string(r) +
                              " which is coded later");
      last_use[static_cast<std::size_t>(r)] =
          std::max(last_use[static_cast<std::size_t>(r)], pos[static_cast<std::size_t>(f)]);
    }
  }

  std::vector<std::vector<int>> rps(n);
  std::set<int> live;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto it = live.begin(); it != live.end();) {
      it = last_use[static_cast<std::size_t>(*it)] < static_cast<int>(k) ? live.erase(it) : std::next(it);
    }
    const int f = order[k];
    rps[static_cast<std::size_t>(f)].assign(live.begin(), live.end());
    if (last_use[static_cast<std::size_t>(f)] > static_cast<int>(k)) live.insert(f);
  }

  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const auto& cur = rps[static_cast<std::size_t>(order[k])];
    for (int r : rps[static_cast<std::size_t>(order[k + 1])]) {
      if (r != order[k] && !std::binary_search(cur.begin(), cur.end(), r))
        throw SchedulingError("chain constraint broken at frame " + std::to_string(order[k + 1]));
    }
  }
  return rps;
}

namespace {

std::vector<FrameClass> derive_classes(const std::vector<int>& order, const std::vector<std::vector<int>>& refs,
                                       const std::vector<bool>& is_anchor) {
  const std::size_t n = refs.size();
  std::vector<int> pos(n);
  for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  std::vector<std::vector<int>> users(n);
  for (std::size_t f = 0; f < n; ++f)
    for (int r : refs[f]) users[static_cast<std::size_t>(r)].push_back(static_cast<int>(f));

  std::vector<FrameClass> classes(n, FrameClass::kNonReference);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_anchor[f]) {
      classes[f] = FrameClass::kAnchor;
    } else if (users[f].empty()) {
      classes[f] = FrameClass::kNonReference;
    } else if (users[f].size() == 1 && pos[static_cast<std::size_t>(users[f][0])] == pos[f] + 1) {
      classes[f] = FrameClass::kImmediate;
    } else {
      classes[f] = FrameClass::kRowReference;
    }
  }
  return classes;
}

}  // namespace

std::vector<FrameClass> classify_frames(const GridGeometry& geom) {
  const PocMap pocs(geom);
  const CodingPlan plan = coding_order(geom);
  return derive_classes(plan.order, plan.refs, anchor_table(geom, pocs).is_anchor);
}

int CodingSchedule::position(int poc) const {
  const auto it = std::find(order.begin(), order.end(), poc);
  if (it == order.end()) throw LookupError("POC " + std::to_string(poc) + " is not scheduled");
  return static_cast<int>(it - order.begin());
}

CodingSchedule build_schedule(const GridGeometry& geom, const ScheduleOptions& opts) {
  const PocMap pocs(geom);
  CodingPlan plan = coding_order(geom);
  CodingSchedule s;
  s.classes = derive_classes(plan.order, plan.refs, anchor_table(geom, pocs).is_anchor);
  s.rps = build_rps(plan.order, plan.refs);
  s.order = std::move(plan.order);
  s.refs = std::move(plan.refs);
  s.pass = std::move(plan.pass);
  s.quadrant = quadrant_partition(geom);
  const int n = pocs.size();
  for (const auto& [poc, cls] : opts.class_overrides) {
    if (poc < 0 || poc >= n) throw ConfigError("class override for unknown POC " + std::to_string(poc));
    if (cls == FrameClass::kNonReference) {
      for (const auto& r : s.refs)
        if (std::find(r.begin(), r.end(), poc) != r.end())
          throw ConfigError("POC " + std::to_string(poc) + " is referenced and cannot be NonReference");
    }
    s.classes[static_cast<std::size_t>(poc)] = cls;
  }
  s.coords.resize(static_cast<std::size_t>(n));
  s.qp_offset.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    s.coords[static_cast<std::size_t>(p)] = pocs.coord_of(p);
    s.qp_offset[static_cast<std::size_t>(p)] = p == 0 ? 0 : class_rank(s.classes[static_cast<std::size_t>(p)]);
  }
  return s;
}

CodingSchedule restrict_to_quadrant(const CodingSchedule& s, Quadrant q) {
  CodingSchedule out = s;
  const std::size_t n = s.refs.size();
  std::vector<bool> keep(n, false);
  for (std::size_t f = 0; f < n; ++f) keep[f] = f == 0 || s.pass[f] == q;
  out.order.clear();
  for (int f : s.order)
    if (keep[static_cast<std::size_t>(f)]) out.order.push_back(f);
  for (std::size_t f = 0; f < n; ++f) {
    auto& r = out.refs[f];
    if (!keep[f]) {
      r.clear();
      continue;
    }
    r.erase(std::remove_if(r.begin(), r.end(), [&](int x) { return !keep[static_cast<std::size_t>(x)]; }), r.end());
  }
  // build_rps wants a permutation over all frames; append the dropped ones
  // after the kept ones with no references, then cut them off again.
  std::vector<int> full = out.order;
  for (std::size_t f = 0; f < n; ++f)
    if (!keep[f]) full.push_back(static_cast<int>(f));
  out.rps = build_rps(full, out.refs);
  for (std::size_t f = 0; f < n; ++f)
    if (!keep[f]) out.rps[f].clear();
  return out;
}

SequenceSchedule build_schedule_1d(int frame_count, int gop) {
  if (frame_count < 1) throw ConfigError("sequence needs at least one frame");
  if (gop < 1 || (gop & (gop - 1)) != 0) throw ConfigError("GOP size must be a power of two");
  SequenceSchedule s;
  const std::size_t n = static_cast<std::size_t>(frame_count);
  s.refs.resize(n);
  s.qp_offset.assign(n, 0);
  s.order.push_back(0);
  std::function<void(int, int, int)> expand = [&](int a, int b, int layer) {
    if (b - a <= 1) return;
    const int m = (a + b) / 2;
    s.order.push_back(m);
    s.refs[static_cast<std::size_t>(m)] = {a, b};
    s.qp_offset[static_cast<std::size_t>(m)] = std::min(layer, 4);
    expand(a, m, layer + 1);
    expand(m, b, layer + 1);
  };
  for (int start = 0; start < frame_count - 1; start += gop) {
    const int end = std::min(start + gop, frame_count - 1);
    s.order.push_back(end);
    s.refs[static_cast<std::size_t>(end)] = {start};
    s.qp_offset[static_cast<std::size_t>(end)] = 1;
    expand(start, end, 2);
  }
  s.rps = build_rps(s.order, s.refs);
  return s;
}

DpbTimeline simulate_dpb(const std::vector<int>& order, const std::vector<std::vector<int>>& rps) {
  DpbTimeline t;
  const std::size_t steps = order.size();
  // needed_after[k]: frames held by any RPS at step > k.
  std::vector<std::set<int>> needed_from(steps + 1);
  for (std::size_t k = steps; k-- > 0;) {
    needed_from[k] = needed_from[k + 1];
    const auto& r = rps.at(static_cast<std::size_t>(order[k]));
    needed_from[k].insert(r.begin(), r.end());
  }
  std::set<int> buffer;
  for (std::size_t k = 0; k < steps; ++k) {
    const int f = order[k];
    for (auto it = buffer.begin(); it != buffer.end();)
      it = needed_from[k].count(*it) ? std::next(it) : buffer.erase(it);
    for (int r : rps.at(static_cast<std::size_t>(f))) {
      if (!buffer.count(r))
        throw SimulationError("frame " + std::to_string(r) + " needed by frame " + std::to_string(f) +
                              " is not in the buffer");
    }
    t.frame.push_back(f);
    t.members.emplace_back(buffer.begin(), buffer.end());
    t.occupancy.push_back(static_cast<int>(buffer.size()));
    t.peak = std::max(t.peak, static_cast<int>(buffer.size()));
    if (needed_from[k + 1].count(f)) buffer.insert(f);
  }
  return t;
}

}  // namespace lfpseq
