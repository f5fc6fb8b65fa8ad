#pragma once

#include <map>
#include <string>
#include <vector>

#include "anisotm/gauge.hpp"

namespace anisotm::app {

enum class Command { Constants, Kappa, Radius, Green, Transplant, Evaluate, Concentrate, Maximize, VerifyAll };

Command parse_command(const std::string& s);
std::string command_name(Command c);

// Flat key=value settings. Keys may carry a section prefix ("sweep.eps"); the prefix must name a known section.
struct RunConfig {
  Command command = Command::Constants;
  std::string gauge = "euclidean";
  std::string domain = "disk:1";
  Vec2 pole = Vec2::Zero();
  int n = 2;
  double p = 0.0;        // 0: not requested
  double beta = 0.0;
  double A = 0.0;        // 0: default (Wulff-ball volume of the domain scale)
  std::vector<double> eps = {1e-2, 1e-3, 1e-4};
  double R_exponent = -0.5;
  std::string h_text = "1/256";
  double h = 1.0 / 256;
  std::string out = "anisotm-out";
  unsigned seed = 42;
  bool quick = false;
  std::string input;      // profile or field CSV
  std::string method = "auto";  // Green field: auto | fdm | images | ball
  std::string mode = "exact";   // functional: exact | approx
  double t = 0.2;         // Green level-set diagnostics
  int nodes = 64;
  int iterations = 4000;
  std::string start = "psi";  // maximizer start: psi | zero

  void set(const std::string& key, const std::string& value);
  void validate() const;
  std::map<std::string, std::string> echo() const;
};

// Reads key=value lines ('#' comments); unknown keys are rejected.
void load_config_file(RunConfig& cfg, const std::string& path);

}  // namespace anisotm::app
