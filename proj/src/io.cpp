#include "anisotm/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "anisotm/errors.hpp"
#include "anisotm/green.hpp"
#include "json.hpp"

namespace anisotm {
namespace {

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path);
  os << std::setprecision(17);
  return os;
}

std::vector<std::vector<double>> read_rows(const std::string& path, std::size_t columns, const std::string& header) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path);
  std::string line;
  if (!std::getline(is, line)) throw InputError(path + ": empty file");
  std::string h = line;
  h.erase(std::remove_if(h.begin(), h.end(), ::isspace), h.end());
  if (h != header) throw InputError(path + ": expected header '" + header + "'");
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InputError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
    }
    if (row.size() != columns)
      throw InputError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_field_csv(const SampledField& f, const std::string& path) {
  auto os = open_out(path);
  os << "x,y,value\n";
  for (std::size_t k = 0; k < f.values.size(); ++k)
    if (f.weights[k] > 0.0) os << f.sample_x[k] << ',' << f.sample_y[k] << ',' << f.values[k] << '\n';
}

SampledField read_field_csv(const std::string& path, const Domain& d, double h) {
  SampledField f = SampledField::on_domain(d, h);
  for (const auto& r : read_rows(path, 3, "x,y,value")) {
    const int i = static_cast<int>(std::floor((r[0] - f.grid.x0) / h));
    const int j = static_cast<int>(std::floor((r[1] - f.grid.y0) / h));
    if (i < 0 || j < 0 || i >= f.grid.nx || j >= f.grid.ny || !f.active(i, j))
      throw InputError(path + ": point (" + std::to_string(r[0]) + ", " + std::to_string(r[1]) +
                       ") is not in an active cell of the domain");
    if (!std::isfinite(r[2])) throw InputError(path + ": non-finite value");
    f.values[f.grid.index(i, j)] = r[2];
  }
  return f;
}

void write_profile_csv(const RadialProfile& U, const std::string& path) {
  auto os = open_out(path);
  os << "t,value\n";
  for (std::size_t k = 0; k < U.size(); ++k) os << U.nodes()[k] << ',' << U.values()[k] << '\n';
}

RadialProfile read_profile_csv(const std::string& path) {
  std::vector<double> t, v;
  for (const auto& r : read_rows(path, 2, "t,value")) {
    t.push_back(r[0]);
    v.push_back(r[1]);
  }
  return RadialProfile(std::move(t), std::move(v));
}

void save_green(const GreenField& gf, const std::string& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["domain"] = gf.domain().spec();
  meta["gauge"] = gf.gauge().spec();
  meta["pole"] = {gf.pole().x(), gf.pole().y()};
  meta["h"] = gf.h();
  meta["method"] = gf.method();
  meta["kappa"] = gf.kappa();
  meta["tau"] = gf.tau();
  meta["rho"] = gf.rho();
  meta["residual"] = gf.info.residual;
  {
    auto os = open_out((std::filesystem::path(dir) / "metadata.json").string());
    os << meta.dump(2) << '\n';
  }
  write_field_csv(gf.sample_G(), (std::filesystem::path(dir) / "G.csv").string());
  write_field_csv(gf.sample_H(), (std::filesystem::path(dir) / "H.csv").string());
}

}  // namespace anisotm
