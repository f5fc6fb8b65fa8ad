#pragma once

#include <memory>

#include "anisotm/green.hpp"
#include "config.hpp"
#include "report.hpp"

namespace anisotm::app {

// Green field for (domain, gauge, pole) by the configured method.
// auto: closed form for a Wulff ball with the pole at its centre, finite differences otherwise.
std::shared_ptr<const GreenField> make_green(const Domain& d, const Gauge& g, const Vec2& pole, double h,
                                             const std::string& method);
// Closed-form images Green function when the domain allows one.
std::shared_ptr<const GreenField> images_oracle(const Domain& d, const Vec2& pole, double h);

Report run_command(const RunConfig& cfg);

}  // namespace anisotm::app
