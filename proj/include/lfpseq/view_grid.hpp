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

#include <compare>
#include <optional>
#include <vector>

#include "lfpseq/types.hpp"

namespace lfpseq {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

// Spatial view coordinate in grid units. Left and top are positive; the
// center view sits at (0, 0).
struct ViewCoord {
  int x = 0;
  int y = 0;
  auto operator<=>(const ViewCoord&) const = default;
};

double distance(ViewCoord a, ViewCoord b);

struct GridGeometry {
  int rows = 13;
  int cols = 13;
  std::vector<Cell> removed;  // boundary cells excluded from coding
  int microlens_pitch = 1;

  // 13x13 with the four extreme corners removed: 165 views.
  static GridGeometry default_geometry();
  static GridGeometry with_corners_removed(int rows, int cols, int pitch = 1);

  int center_row() const { return rows / 2; }
  int center_col() const { return cols / 2; }
  bool contains(Cell c) const { return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols; }
  bool is_removed(Cell c) const;
  bool is_surviving(Cell c) const { return contains(c) && !is_removed(c); }
  int view_count() const { return rows * cols - static_cast<int>(removed.size()); }

  ViewCoord coord_of(Cell c) const { return {center_col() - c.col, center_row() - c.row}; }
  Cell cell_of(ViewCoord v) const { return {center_row() - v.y, center_col() - v.x}; }

  // Throws GeometryError on even dimensions, duplicate or interior removals,
  // a removed center, or a non-positive pitch.
  void validate() const;

  bool operator==(const GridGeometry&) const = default;
};

// Bijection between POC values 0..N-1 and surviving grid cells. The center
// cell gets POC 0; every other surviving cell is numbered in raster order.
class PocMap {
 public:
  PocMap() = default;
  explicit PocMap(const GridGeometry& geom);

  int size() const { return static_cast<int>(cells_.size()); }
  Cell cell_of(int poc) const;
  int poc_of(Cell c) const;
  ViewCoord coord_of(int poc) const;
  int poc_of(ViewCoord v) const;
  // Position of the POC's cell in row-major order over the full grid.
  int raster_index(int poc) const;
  const GridGeometry& geometry() const { return geom_; }

 private:
  GridGeometry geom_;
  std::vector<Cell> cells_;
  std::vector<int> poc_by_raster_;  // -1 for removed cells
};

PocMap assign_poc(const GridGeometry& geom);

ViewCoord poc_to_coord(int poc, const GridGeometry& geom);
int coord_to_poc(ViewCoord coord, const GridGeometry& geom);

// Decomposed light field. views[p] holds the view with POC p.
struct ViewGrid {
  GridGeometry geometry;
  std::vector<Picture> views;

  PocMap poc_map() const { return PocMap(geometry); }
  int view_width() const { return views.empty() ? 0 : views.front().width(); }
  int view_height() const { return views.empty() ? 0 : views.front().height(); }
  // Throws IncompleteGridError when a view is missing or views disagree in
  // size, bit depth or chroma format.
  void check_complete() const;
};

// Each microlens covers a (rows*pitch) x (cols*pitch) block of the raster;
// view (r, c) takes the center sample of the pitch x pitch cell at (r, c)
// inside every block. Chroma planes use the same lattice on the chroma raster.
ViewGrid decompose_lenslet(const Picture& img, const GridGeometry& geom);

// Inverse of decompose_lenslet on the surviving lattice positions. Every other
// position is copied from `base`.
Picture recompose(const ViewGrid& grid, const Picture& base);
// Same, with unset positions zero-filled. The raster size is the minimal one
// implied by the view size.
Picture recompose(const ViewGrid& grid);

}  // namespace lfpseq
