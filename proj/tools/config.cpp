#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "anisotm/errors.hpp"
#include "anisotm/grid.hpp"

namespace anisotm::app {
namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::Constants, "constants"},     {Command::Kappa, "kappa"},       {Command::Radius, "radius"},
    {Command::Green, "green"},             {Command::Transplant, "transplant"},
    {Command::Evaluate, "evaluate"},       {Command::Concentrate, "concentrate"},
    {Command::Maximize, "maximize"},       {Command::VerifyAll, "verify-all"}};

const std::set<std::string> kSections = {"run", "gauge", "domain", "green", "sweep", "functional", "maximize",
                                         "transplant", "constants"};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (trim(v.substr(used)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw InputError("config: '" + key + "' expects a number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != static_cast<int>(d)) throw InputError("config: '" + key + "' expects an integer, got '" + v + "'");
  return static_cast<int>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw InputError("config: '" + key + "' expects a comma-separated list");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError("config: '" + key + "' expects true or false, got '" + v + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Command parse_command(const std::string& s) {
  for (const auto& [c, name] : kCommands)
    if (name == s) return c;
  throw InputError("unknown command '" + s + "'");
}

std::string command_name(Command c) {
  for (const auto& [k, name] : kCommands)
    if (k == c) return name;
  return "?";
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (const auto dot = key.find('.'); dot != std::string::npos) {
    const std::string section = key.substr(0, dot);
    if (!kSections.count(section)) throw InputError("config: unknown section '" + section + "'");
    key = key.substr(dot + 1);
  }
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "command") command = parse_command(value);
  else if (key == "gauge") gauge = value;
  else if (key == "domain") domain = value;
  else if (key == "pole") {
    const auto v = to_list(key, value);
    if (v.size() != 2) throw InputError("config: 'pole' expects x,y");
    pole = Vec2(v[0], v[1]);
  } else if (key == "n") n = to_int(key, value);
  else if (key == "p") p = to_double(key, value);
  else if (key == "beta") beta = to_double(key, value);
  else if (key == "A") A = to_double(key, value);
  else if (key == "eps") eps = to_list(key, value);
  else if (key == "R_exponent") R_exponent = to_double(key, value);
  else if (key == "h") {
    h_text = value;
    h = parse_spacing(value);
  } else if (key == "out") out = value;
  else if (key == "seed") {
    const int s = to_int(key, value);
    if (s < 0) throw InputError("config: 'seed' must be nonnegative");
    seed = static_cast<unsigned>(s);
  } else if (key == "quick") quick = to_bool(key, value);
  else if (key == "input") input = value;
  else if (key == "method") method = value;
  else if (key == "mode") mode = value;
  else if (key == "t") t = to_double(key, value);
  else if (key == "nodes") nodes = to_int(key, value);
  else if (key == "iterations") iterations = to_int(key, value);
  else if (key == "start") start = value;
  else throw InputError("config: unknown key '" + raw_key + "'");
}

void RunConfig::validate() const {
  if (n < 2) throw InputError("n must be at least 2");
  if (!(beta >= 0.0 && beta < n)) throw InputError("beta must lie in [0, n)");
  if (p != 0.0 && !(p > 1.0 && p <= n)) throw InputError("p must lie in (1, n]");
  if (A < 0.0) throw InputError("A must be positive");
  if (!(h > 0.0 && h <= 0.25)) throw InputError("h must lie in (0, 1/4]");
  for (double e : eps)
    if (!(e > 0.0 && e < 1.0)) throw InputError("eps values must lie in (0, 1)");
  if (!(t > 0.0)) throw InputError("t must be positive");
  if (nodes < 4) throw InputError("nodes must be at least 4");
  if (iterations < 1) throw InputError("iterations must be positive");
  if (method != "auto" && method != "fdm" && method != "images" && method != "ball")
    throw InputError("method must be auto, fdm, images or ball");
  if (mode != "exact" && mode != "approx") throw InputError("mode must be exact or approx");
  if (start != "psi" && start != "zero") throw InputError("start must be psi or zero");
  if (out.empty()) throw InputError("out must be a directory path");
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::ostringstream e;
  for (std::size_t k = 0; k < eps.size(); ++k) e << (k ? "," : "") << fmt(eps[k]);
  return {{"command", command_name(command)},
          {"gauge", gauge},
          {"domain", domain},
          {"pole", fmt(pole.x()) + "," + fmt(pole.y())},
          {"n", std::to_string(n)},
          {"p", fmt(p)},
          {"beta", fmt(beta)},
          {"A", fmt(A)},
          {"eps", e.str()},
          {"R_exponent", fmt(R_exponent)},
          {"h", h_text},
          {"seed", std::to_string(seed)},
          {"quick", quick ? "true" : "false"},
          {"input", input},
          {"method", method},
          {"mode", mode},
          {"t", fmt(t)},
          {"nodes", std::to_string(nodes)},
          {"iterations", std::to_string(iterations)},
          {"start", start}};
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(path + ":" + std::to_string(lineno) + ": expected key=value");
    cfg.set(line.substr(0, eq), line.substr(eq + 1));
  }
}

}  // namespace anisotm::app
