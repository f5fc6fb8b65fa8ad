#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "anisotm/field.hpp"
#include "anisotm/profile.hpp"
#include "report.hpp"

namespace anisotm::app {

struct CriterionResult {
  int id;
  std::string title;
  std::vector<Check> checks;
  Json details = Json::object();
  double seconds = 0.0;  // kept out of reports
  bool pass() const;
};

// Runs the numbered acceptance criteria (all when `which` is empty).
std::vector<CriterionResult> run_criteria(bool quick, unsigned seed, const std::vector<int>& which = {});
Report verify_all(bool quick, unsigned seed);

// Random decreasing piecewise-linear profile with U(1) = 0.
RadialProfile random_profile(std::mt19937_64& rng, int min_nodes = 5, int max_nodes = 12);
// Smooth random field on the unit disk vanishing with its gradient at the boundary.
SampledField random_disk_field(std::mt19937_64& rng, double h);

}  // namespace anisotm::app
