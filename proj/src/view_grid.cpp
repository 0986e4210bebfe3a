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

#include "lfpseq/view_grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lfpseq {

double distance(ViewCoord a, ViewCoord b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

GridGeometry GridGeometry::default_geometry() { return with_corners_removed(13, 13); }

GridGeometry GridGeometry::with_corners_removed(int rows, int cols, int pitch) {
  GridGeometry g;
  g.rows = rows;
  g.cols = cols;
  g.microlens_pitch = pitch;
  std::set<Cell> corners = {{0, 0}, {0, cols - 1}, {rows - 1, 0}, {rows - 1, cols - 1}};
  // A 1-wide grid has its center on the boundary; keep it.
  corners.erase({rows / 2, cols / 2});
  g.removed.assign(corners.begin(), corners.end());
  return g;
}

bool GridGeometry::is_removed(Cell c) const {
  return std::find(removed.begin(), removed.end(), c) != removed.end();
}

void GridGeometry::validate() const {
  if (rows < 1 || cols < 1) throw GeometryError("grid needs at least one row and column");
  if (rows % 2 == 0 || cols % 2 == 0) throw GeometryError("grid rows and cols must be odd");
  if (microlens_pitch < 1) throw GeometryError("microlens pitch must be positive");
  std::set<Cell> seen;
  for (const Cell& c : removed) {
    if (!contains(c)) throw GeometryError("removed cell outside the grid");
    if (c.row != 0 && c.row != rows - 1 && c.col != 0 && c.col != cols - 1)
      throw GeometryError("removed cell is not on the grid boundary");
    if (c == Cell{center_row(), center_col()}) throw GeometryError("the center view cannot be removed");
    if (!seen.insert(c).second) throw GeometryError("duplicate removed cell");
  }
}

PocMap::PocMap(const GridGeometry& geom) : geom_(geom) {
  geom.validate();
  const Cell center{geom.center_row(), geom.center_col()};
  cells_.push_back(center);
  poc_by_raster_.assign(static_cast<std::size_t>(geom.rows * geom.cols), -1);
  poc_by_raster_[static_cast<std::size_t>(center.row * geom.cols + center.col)] = 0;
  for (int r = 0; r < geom.rows; ++r) {
    for (int c = 0; c < geom.cols; ++c) {
      const Cell cell{r, c};
      if (cell == center || geom.is_removed(cell)) continue;
      poc_by_raster_[static_cast<std::size_t>(r * geom.cols + c)] = static_cast<int>(cells_.size());
      cells_.push_back(cell);
    }
  }
}

Cell PocMap::cell_of(int poc) const {
  if (poc < 0 || poc >= size()) throw LookupError("POC " + std::to_string(poc) + " out of range");
  return cells_[static_cast<std::size_t>(poc)];
}

int PocMap::poc_of(Cell c) const {
  if (!geom_.contains(c)) throw LookupError("cell outside the grid");
  const int poc = poc_by_raster_[static_cast<std::size_t>(c.row * geom_.cols + c.col)];
  if (poc < 0) throw LookupError("cell was removed from the grid");
  return poc;
}

ViewCoord PocMap::coord_of(int poc) const { return geom_.coord_of(cell_of(poc)); }

int PocMap::poc_of(ViewCoord v) const { return poc_of(geom_.cell_of(v)); }

int PocMap::raster_index(int poc) const {
  const Cell c = cell_of(poc);
  return c.row * geom_.cols + c.col;
}

PocMap assign_poc(const GridGeometry& geom) { return PocMap(geom); }

ViewCoord poc_to_coord(int poc, const GridGeometry& geom) { return PocMap(geom).coord_of(poc); }

int coord_to_poc(ViewCoord coord, const GridGeometry& geom) { return PocMap(geom).poc_of(coord); }

void ViewGrid::check_complete() const {
  if (static_cast<int>(views.size()) != geometry.view_count())
    throw IncompleteGridError("grid holds " + std::to_string(views.size()) + " views, expected " +
                              std::to_string(geometry.view_count()));
  for (std::size_t p = 0; p < views.size(); ++p) {
    const Picture& v = views[p];
    if (v.empty()) throw IncompleteGridError("view with POC " + std::to_string(p) + " is missing");
    const Picture& ref = views.front();
    if (v.width() != ref.width() || v.height() != ref.height() || v.bit_depth != ref.bit_depth ||
        v.chroma != ref.chroma)
      throw IncompleteGridError("views disagree in size or sample format");
  }
}

namespace {

struct Lattice {
  int lens_rows = 0;  // microlens count per luma column
  int lens_cols = 0;
};

Lattice lattice_for(const Picture& img, const GridGeometry& g) {
  const int block_h = g.rows * g.microlens_pitch;
  const int block_w = g.cols * g.microlens_pitch;
  const int s = chroma_shift(img.chroma);
  const int chroma_rows = static_cast<int>(img.planes[1].rows()) / block_h;
  const int chroma_cols = static_cast<int>(img.planes[1].cols()) / block_w;
  Lattice l;
  l.lens_rows = s ? std::min(img.height() / block_h, 2 * chroma_rows) : img.height() / block_h;
  l.lens_cols = s ? std::min(img.width() / block_w, 2 * chroma_cols) : img.width() / block_w;
  if (s) {
    l.lens_rows -= l.lens_rows % 2;
    l.lens_cols -= l.lens_cols % 2;
  }
  return l;
}

// Raster position of view cell (r, c) inside microlens (ly, lx).
inline int lattice_pos(int lens, int cell, int cells_per_lens, int pitch) {
  return lens * cells_per_lens * pitch + cell * pitch + pitch / 2;
}

}  // namespace

ViewGrid decompose_lenslet(const Picture& img, const GridGeometry& geom) {
  geom.validate();
  img.validate();
  const int p = geom.microlens_pitch;
  if (img.height() < geom.rows * p || img.width() < geom.cols * p)
    throw DimensionError("lenslet image is smaller than one microlens block");
  const Lattice lat = lattice_for(img, geom);
  if (lat.lens_rows < 1 || lat.lens_cols < 1)
    throw DimensionError("lenslet image too small for the geometry and chroma format");

  const PocMap pocs(geom);
  ViewGrid grid;
  grid.geometry = geom;
  grid.views.resize(static_cast<std::size_t>(pocs.size()));
  const int s = chroma_shift(img.chroma);
  for (int poc = 0; poc < pocs.size(); ++poc) {
    const Cell cell = pocs.cell_of(poc);
    Picture view(lat.lens_cols, lat.lens_rows, img.bit_depth, img.chroma);
    for (int pl = 0; pl < 3; ++pl) {
      const int ps = pl ? s : 0;
      const SamplePlane& src = img.planes[pl];
      SamplePlane& dst = view.planes[pl];
      for (int ly = 0; ly < (lat.lens_rows >> ps); ++ly) {
        const int y = lattice_pos(ly, cell.row, geom.rows, p);
        for (int lx = 0; lx < (lat.lens_cols >> ps); ++lx) {
          dst(ly, lx) = src(y, lattice_pos(lx, cell.col, geom.cols, p));
        }
      }
    }
    grid.views[static_cast<std::size_t>(poc)] = std::move(view);
  }
  return grid;
}

namespace {

void scatter_views(const ViewGrid& grid, Picture& out) {
  const GridGeometry& geom = grid.geometry;
  const PocMap pocs(geom);
  const int p = geom.microlens_pitch;
  for (int poc = 0; poc < pocs.size(); ++poc) {
    const Cell cell = pocs.cell_of(poc);
    const Picture& view = grid.views[static_cast<std::size_t>(poc)];
    for (int pl = 0; pl < 3; ++pl) {
      const SamplePlane& src = view.planes[pl];
      SamplePlane& dst = out.planes[pl];
      for (int ly = 0; ly < src.rows(); ++ly) {
        const int y = lattice_pos(ly, cell.row, geom.rows, p);
        for (int lx = 0; lx < src.cols(); ++lx) {
          dst(y, lattice_pos(lx, cell.col, geom.cols, p)) = src(ly, lx);
        }
      }
    }
  }
}

}  // namespace

Picture recompose(const ViewGrid& grid, const Picture& base) {
  grid.check_complete();
  const Picture& v0 = grid.views.front();
  const GridGeometry& g = grid.geometry;
  if (base.bit_depth != v0.bit_depth || base.chroma != v0.chroma)
    throw DimensionError("base image sample format differs from the views");
  if (base.height() < v0.height() * g.rows * g.microlens_pitch ||
      base.width() < v0.width() * g.cols * g.microlens_pitch)
    throw DimensionError("base image is smaller than the recomposed lattice");
  Picture out = base;
  scatter_views(grid, out);
  return out;
}

Picture recompose(const ViewGrid& grid) {
  grid.check_complete();
  const Picture& v0 = grid.views.front();
  const GridGeometry& g = grid.geometry;
  Picture out(v0.width() * g.cols * g.microlens_pitch, v0.height() * g.rows * g.microlens_pitch, v0.bit_depth,
              v0.chroma);
  scatter_views(grid, out);
  return out;
}

}  // namespace lfpseq
