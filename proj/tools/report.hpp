#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace anisotm::app {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  double value;
  double target;
  std::string anchor;     // where the target comes from
  double tolerance;
  enum class Kind { Relative, Absolute, AtLeast, AtMost } kind = Kind::Relative;
  bool gating = true;     // non-gating checks are reported but do not affect the exit status
  bool pass() const;
  double abs_error() const;
  double rel_error() const;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}
  Json inputs = Json::object();
  Json values = Json::object();
  void add(Check c) { checks_.push_back(std::move(c)); }
  const std::vector<Check>& checks() const { return checks_; }
  bool pass() const;
  Json to_json() const;
  // <dir>/<command>.json; the wall time goes to <dir>/<command>.timing.json so reports stay comparable.
  void write(const std::string& dir, double wall_seconds) const;

 private:
  std::string command_;
  std::vector<Check> checks_;
};

Json check_json(const Check& c);

}  // namespace anisotm::app
