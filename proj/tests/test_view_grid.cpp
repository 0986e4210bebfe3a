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

#include <random>
#include <set>

#include "lfpseq/view_grid.hpp"

using namespace lfpseq;

namespace {

Picture random_picture(int w, int h, int depth, ChromaFormat fmt, std::mt19937& rng) {
  Picture p(w, h, depth, fmt);
  std::uniform_int_distribution<int> d(0, (1 << depth) - 1);
  for (auto& plane : p.planes)
    for (Eigen::Index i = 0; i < plane.size(); ++i) plane.data()[i] = static_cast<Sample>(d(rng));
  return p;
}

GridGeometry full_grid(int rows, int cols, int pitch = 1) {
  GridGeometry g;
  g.rows = rows;
  g.cols = cols;
  g.microlens_pitch = pitch;
  return g;
}

}  // namespace

TEST_SUITE("view_grid") {
  TEST_CASE("3x3 raster POC map") {
    const PocMap m(full_grid(3, 3));
    CHECK(m.poc_of(Cell{1, 1}) == 0);
    const std::vector<Cell> expect = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}};
    for (int p = 1; p <= 8; ++p) CHECK(m.cell_of(p) == expect[static_cast<std::size_t>(p - 1)]);
    CHECK(m.coord_of(1) == ViewCoord{1, 1});
    CHECK(m.coord_of(0) == ViewCoord{0, 0});
  }

  TEST_CASE("default geometry has 165 views and a bijective map") {
    const GridGeometry g = GridGeometry::default_geometry();
    const PocMap m(g);
    REQUIRE(m.size() == 165);
    std::set<Cell> cells;
    for (int p = 0; p < m.size(); ++p) {
      cells.insert(m.cell_of(p));
      CHECK(coord_to_poc(poc_to_coord(p, g), g) == p);
      CHECK(m.poc_of(m.cell_of(p)) == p);
    }
    CHECK(cells.size() == 165);
    CHECK(m.cell_of(0) == Cell{6, 6});
    // Raster monotonicity among non-center views.
    for (int p = 2; p < m.size(); ++p) CHECK(m.raster_index(p - 1) < m.raster_index(p));
  }

  TEST_CASE("out-of-range lookups throw") {
    const GridGeometry g = GridGeometry::default_geometry();
    CHECK_THROWS_AS(poc_to_coord(165, g), LookupError);
    CHECK_THROWS_AS(poc_to_coord(-1, g), LookupError);
    CHECK_THROWS_AS(coord_to_poc(ViewCoord{6, 6}, g), LookupError);  // removed corner
    CHECK_THROWS_AS(coord_to_poc(ViewCoord{7, 0}, g), LookupError);
  }

  TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(full_grid(4, 5).validate(), GeometryError);
    GridGeometry g = full_grid(5, 5);
    g.removed = {{2, 2}};
    CHECK_THROWS_AS(g.validate(), GeometryError);
    g.removed = {{1, 1}};
    CHECK_THROWS_AS(g.validate(), GeometryError);
    CHECK_NOTHROW(GridGeometry::with_corners_removed(1, 1).validate());
    CHECK(GridGeometry::with_corners_removed(1, 1).view_count() == 1);
  }

  TEST_CASE("distance") {
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance({1, 2}, {-2, 6}) == doctest::Approx(5.0));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int k = 0; k < 500; ++k) {
      const ViewCoord a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)};
      CHECK(distance(a, a) == 0.0);
      CHECK(distance(a, b) == distance(b, a));
      CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
      CHECK((distance(a, b) == 0.0) == (a == b));
    }
  }

  TEST_CASE("decompose matches a hand interleave on a 3x3 grid") {
    std::mt19937 rng(3);
    const GridGeometry g = full_grid(3, 3);
    const PocMap m(g);
    std::vector<Picture> views;
    for (int p = 0; p < 9; ++p) views.push_back(random_picture(5, 4, 8, ChromaFormat::k444, rng));
    Picture lenslet(15, 12, 8, ChromaFormat::k444);
    for (int p = 0; p < 9; ++p) {
      const Cell c = m.cell_of(p);
      for (int pl = 0; pl < 3; ++pl)
        for (int y = 0; y < 4; ++y)
          for (int x = 0; x < 5; ++x) lenslet.planes[pl](y * 3 + c.row, x * 3 + c.col) = views[p].planes[pl](y, x);
    }
    const ViewGrid grid = decompose_lenslet(lenslet, g);
    REQUIRE(grid.views.size() == 9);
    for (int p = 0; p < 9; ++p) CHECK(grid.views[static_cast<std::size_t>(p)] == views[static_cast<std::size_t>(p)]);
    CHECK(recompose(grid) == lenslet);
  }

  TEST_CASE("recompose inverts decompose on surviving positions") {
    std::mt19937 rng(11);
    struct Case {
      GridGeometry g;
      int lens_w, lens_h, depth;
      ChromaFormat fmt;
    };
    const std::vector<Case> cases = {
        {GridGeometry::with_corners_removed(5, 5, 1), 6, 4, 8, ChromaFormat::k420},
        {GridGeometry::with_corners_removed(3, 5, 2), 4, 6, 10, ChromaFormat::k444},
        {GridGeometry::with_corners_removed(13, 13, 1), 4, 2, 8, ChromaFormat::k420},
        {full_grid(3, 3, 3), 2, 2, 10, ChromaFormat::k420},
    };
    for (const Case& c : cases) {
      const int w = c.lens_w * c.g.cols * c.g.microlens_pitch;
      const int h = c.lens_h * c.g.rows * c.g.microlens_pitch;
      const Picture img = random_picture(w, h, c.depth, c.fmt, rng);
      const ViewGrid grid = decompose_lenslet(img, c.g);
      CHECK(grid.views.size() == static_cast<std::size_t>(c.g.view_count()));
      CHECK(recompose(grid, img) == img);
      const Picture again = recompose(grid, Picture(w, h, c.depth, c.fmt));
      CHECK(decompose_lenslet(again, c.g).views == grid.views);
    }
  }

  TEST_CASE("replacing one view changes only its lattice positions") {
    std::mt19937 rng(5);
    const GridGeometry g = full_grid(3, 3);
    const Picture img = random_picture(12, 9, 8, ChromaFormat::k444, rng);
    ViewGrid grid = decompose_lenslet(img, g);
    const int poc = 4;  // cell (1, 0)
    grid.views[poc].planes[0].setConstant(0);
    grid.views[poc].planes[0](0, 0) = static_cast<Sample>(img.planes[0](1, 0) ^ 1);
    const Picture out = recompose(grid, img);
    for (int y = 0; y < 9; ++y)
      for (int x = 0; x < 12; ++x)
        if (out.planes[0](y, x) != img.planes[0](y, x)) CHECK((y % 3 == 1 && x % 3 == 0));
    CHECK(out.planes[0](1, 0) != img.planes[0](1, 0));
    CHECK((out.planes[1] == img.planes[1]).all());
  }

  TEST_CASE("1x1 geometry returns the single view unchanged") {
    std::mt19937 rng(1);
    const Picture img = random_picture(8, 6, 8, ChromaFormat::k420, rng);
    const ViewGrid grid = decompose_lenslet(img, full_grid(1, 1));
    REQUIRE(grid.views.size() == 1);
    CHECK(grid.views[0] == img);
    CHECK(recompose(grid) == img);
  }

  TEST_CASE("incomplete grids are rejected") {
    ViewGrid grid;
    grid.geometry = full_grid(3, 3);
    grid.views.resize(8, Picture(4, 4, 8, ChromaFormat::k420));
    CHECK_THROWS_AS(grid.check_complete(), IncompleteGridError);
    CHECK_THROWS_AS(recompose(grid), IncompleteGridError);
    grid.views.resize(9, Picture(4, 4, 8, ChromaFormat::k420));
    grid.views[3] = Picture(6, 4, 8, ChromaFormat::k420);
    CHECK_THROWS_AS(grid.check_complete(), IncompleteGridError);
  }

  TEST_CASE("undersized lenslet") {
    CHECK_THROWS_AS(decompose_lenslet(Picture(10, 10, 8, ChromaFormat::k444), GridGeometry::default_geometry()),
                    DimensionError);
  }
}
