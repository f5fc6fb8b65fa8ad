#pragma once

#include <cmath>
#include <cstddef>

#include "anisotm/domain.hpp"

namespace anisotm {

// Uniform cell grid. Cell (i, j) spans [x0 + i h, x0 + (i+1) h] x [y0 + j h, y0 + (j+1) h].
struct Grid {
  double x0 = 0, y0 = 0, h = 1;
  int nx = 0, ny = 0;

  // Smallest h-aligned grid covering the box with `margin` extra cells on each side.
  static Grid covering(const Box& b, double h, int margin = 0);

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  double cx(int i) const { return x0 + (i + 0.5) * h; }
  double cy(int j) const { return y0 + (j + 0.5) * h; }
};

// Spacing strings like "1/256" or "0.01".
double parse_spacing(const std::string& s);

}  // namespace anisotm
