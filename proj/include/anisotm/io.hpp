#pragma once

#include <string>

#include "anisotm/field.hpp"
#include "anisotm/profile.hpp"

namespace anisotm {

// x,y,value per active cell (sample point), one header line.
void write_field_csv(const SampledField& f, const std::string& path);
// Values are matched to the cells of SampledField::on_domain(d, h) by position; cells missing from the file stay 0.
SampledField read_field_csv(const std::string& path, const Domain& d, double h);

// t,value per node, one header line.
void write_profile_csv(const RadialProfile& U, const std::string& path);
RadialProfile read_profile_csv(const std::string& path);

}  // namespace anisotm
