#pragma once

#include <string>
#include <vector>

#include "anisotm/cutcell.hpp"
#include "anisotm/gauge.hpp"
#include "anisotm/quadrature.hpp"

namespace anisotm {

// Values at cell centres (centroid of the inside part for boundary cells whose centre is outside);
// weight[k] is the area of cell k inside the domain, 0 for cells that miss it.
struct SampledField {
  Domain domain;
  Grid grid;
  std::vector<double> values;
  std::vector<double> weights;
  std::vector<double> sample_x, sample_y;

  // Cell weights by cut-cell clipping against the domain boundary.
  static SampledField on_domain(const Domain& d, double h, int margin = 1);
  template <class F>
  static SampledField sample(const Domain& d, double h, F&& f);

  double total_area() const;
  std::size_t active_cells() const;
  // Weighted sum of g(value) over active cells, fixed-order pairwise reduction.
  template <class F>
  double integrate(F&& g) const;
  // Centred differences in the interior, one-sided next to inactive cells.
  Vec2 gradient(int i, int j) const;
  // sum_k w_k F(grad u)^p
  double dirichlet_energy(const Gauge& g, double p) const;
  bool active(int i, int j) const { return weights[grid.index(i, j)] > 0.0; }
};

template <class F>
SampledField SampledField::sample(const Domain& d, double h, F&& f) {
  SampledField s = on_domain(d, h);
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) {
      const auto k = s.grid.index(i, j);
      s.values[k] = s.weights[k] > 0.0 ? f(s.sample_x[k], s.sample_y[k]) : 0.0;
    }
  return s;
}

template <class F>
double SampledField::integrate(F&& g) const {
  std::vector<double> terms;
  terms.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    if (weights[k] > 0.0) terms.push_back(weights[k] * g(values[k]));
  return pairwise_sum(terms);
}

}  // namespace anisotm
