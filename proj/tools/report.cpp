#include "report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "anisotm/errors.hpp"

namespace anisotm::app {

double Check::abs_error() const { return std::abs(value - target); }

double Check::rel_error() const { return target != 0.0 ? std::abs(value / target - 1.0) : abs_error(); }

bool Check::pass() const {
  if (!std::isfinite(value)) return false;
  switch (kind) {
    case Kind::Relative: return rel_error() <= tolerance;
    case Kind::Absolute: return abs_error() <= tolerance;
    case Kind::AtLeast: return value >= target - tolerance;
    case Kind::AtMost: return value <= target + tolerance;
  }
  return false;
}

bool Report::pass() const {
  for (const auto& c : checks_)
    if (c.gating && !c.pass()) return false;
  return true;
}

Json check_json(const Check& c) {
  static const char* kinds[] = {"relative", "absolute", "at_least", "at_most"};
  Json j;
  j["name"] = c.name;
  j["value"] = c.value;
  j["target"] = c.target;
  j["anchor"] = c.anchor;
  j["comparison"] = kinds[static_cast<int>(c.kind)];
  j["abs_error"] = c.abs_error();
  j["rel_error"] = c.rel_error();
  j["tolerance"] = c.tolerance;
  j["gating"] = c.gating;
  j["pass"] = c.pass();
  return j;
}

Json Report::to_json() const {
  Json j;
  j["command"] = command_;
  j["inputs"] = inputs;
  j["values"] = values;
  j["checks"] = Json::array();
  for (const auto& c : checks_) j["checks"].push_back(check_json(c));
  j["pass"] = pass();
  return j;
}

void Report::write(const std::string& dir, double wall_seconds) const {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir) / command_;
  {
    std::ofstream os(base.string() + ".json");
    if (!os) throw InputError("cannot write report in " + dir);
    os << to_json().dump(2) << '\n';
  }
  std::ofstream ts(base.string() + ".timing.json");
  Json t;
  t["command"] = command_;
  t["wall_seconds"] = wall_seconds;
  ts << t.dump(2) << '\n';
}

}  // namespace anisotm::app
