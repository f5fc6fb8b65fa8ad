#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "anisotm/constants.hpp"
#include "anisotm/green.hpp"
#include "anisotm/sequences.hpp"
#include "anisotm/symmetrize.hpp"
#include "anisotm/transplant.hpp"

namespace anisotm::app {
namespace {

using Kind = Check::Kind;
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

Json sweep_json(const SweepResult& sw) {
  Json phis = Json::array();
  for (const auto& e : sw.entries) phis.push_back({{"epsilon", e.epsilon}, {"phi", e.phi}, {"energy", e.energy}});
  return {{"entries", phis},
          {"level", sw.level},
          {"extrapolated", sw.extrapolated},
          {"extrapolated_three_point", sw.extrapolated3},
          {"rho", sw.rho}};
}

CriterionResult c1_c2(int id, double beta) {
  CriterionResult r{id, beta == 0.0 ? "concentration level on the unit disk" : "singular concentration level"};
  const auto gf = std::make_shared<GreenField>(ball_green(Gauge::euclidean(), Vec2::Zero(), 1.0, 1.0 / 256));
  SweepOptions opt;
  opt.beta = beta;
  const SweepResult sw = concentration_sweep(gf, {1e-2, 1e-3, 1e-4}, opt);
  const double target = beta == 0.0 ? kPi * kE : 2.0 * kPi * kE;
  r.checks.push_back({"extrapolated limit", sw.extrapolated, target,
                      beta == 0.0 ? "concentration level kappa rho^n e^{H}, pi e"
                                  : "singular concentration level n/(n-beta) kappa rho^{n-beta} e^{H}, 2 pi e",
                      beta == 0.0 ? 2e-2 : 3e-2});
  for (const auto& e : sw.entries)
    r.checks.push_back({"energy of psi_eps", e.energy, 1.0, "unit-energy normalization", 2e-2});
  r.details = sweep_json(sw);
  return r;
}

CriterionResult c3() {
  CriterionResult r{3, "harmonic-radius scaling of the level"};
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const Vec2 a(0.5, 0.0);
  const auto gf = std::make_shared<GreenField>(solve_robin(disk, Gauge::euclidean(), a, 1.0 / 256));
  r.checks.push_back({"finite-difference rho", gf->rho(), 1.0 - a.squaredNorm(), "method-of-images oracle 1 - |a|^2",
                      1e-3, Kind::Absolute});
  const SweepResult sw = concentration_sweep(gf, {1e-2, 1e-3, 1e-4});
  r.checks.push_back({"extrapolated limit", sw.extrapolated, kPi * 0.75 * 0.75 * kE,
                      "concentration level kappa rho^n e^{H}, pi 0.75^2 e", 3e-2});
  r.details = sweep_json(sw);
  return r;
}

CriterionResult c4() {
  CriterionResult r{4, "N_p limits"};
  for (int n : {2, 3, 4})
    for (double beta : {0.0, 1.0}) {
      const double kappa = unit_ball_volume(n);
      const double p = n - 1e-6;
      const double v = np_value(1.0, n, p, beta, kappa);
      const double target = beta == 0.0 ? std::exp(harmonic_sum(n))
                                        : n / (n - beta) * std::pow(kappa, beta / n) * std::exp(harmonic_sum(n));
      r.checks.push_back({"N_p at p = n - 1e-6, n=" + std::to_string(n) + ", beta=" + std::to_string(int(beta)), v,
                          target, beta == 0.0 ? "limit A e^{H}" : "limit n/(n-beta) kappa^{beta/n} A^{(n-beta)/n} e^{H}",
                          1e-4});
    }
  return r;
}

CriterionResult c5() {
  CriterionResult r{5, "sharp constants against bubble quotients"};
  const struct {
    int n;
    double p, beta;
  } cases[] = {{2, 1.5, 0.0}, {3, 2.0, 0.0}, {2, 1.5, 0.5}, {3, 2.0, 1.0}};
  for (const auto& c : cases) {
    BubbleSpec bs;
    bs.n = c.n;
    bs.p = c.p;
    bs.beta = c.beta;
    bs.kappa = unit_ball_volume(c.n);
    bs.nodes = 3;
    const BubbleReport b = bubble(bs);
    const double S = c.beta == 0.0 ? talenti_constant(c.n, c.p) : alvino_constant(c.n, c.p, c.beta);
    r.checks.push_back({"S(n=" + std::to_string(c.n) + ", p=" + std::to_string(c.p).substr(0, 3) +
                            ", beta=" + std::to_string(c.beta).substr(0, 3) + ")",
                        S, b.quotient, "bubble Rayleigh-quotient oracle", 1e-5});
  }
  return r;
}

CriterionResult c6(bool quick, unsigned seed) {
  CriterionResult r{6, "transplantation energy identity"};
  std::mt19937_64 rng(seed);
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const auto g256 = std::make_shared<GreenField>(images_green(disk, Vec2(0.5, 0.0), 1.0 / 256));
  const auto g512 = std::make_shared<GreenField>(images_green(disk, Vec2(0.5, 0.0), 1.0 / 512));
  const int count = quick ? 3 : 10;
  Json errs = Json::array();
  double worst256 = 0.0, worst512 = 0.0;
  for (int k = 0; k < count; ++k) {
    const RadialProfile U = random_profile(rng);
    const double ball = U.energy(2, kPi);
    const double e1 = dirichlet_energy(transplant(U, g256, 1.0 / 256), 2.0);
    const double e2 = dirichlet_energy(transplant(U, g512, 1.0 / 512), 2.0);
    const double r1 = std::abs(e1 / ball - 1.0), r2 = std::abs(e2 / ball - 1.0);
    r.checks.push_back({"profile " + std::to_string(k) + " at h=1/256", e1, ball,
                        "n-harmonic transplantation energy identity", 1e-2});
    worst256 = std::max(worst256, r1);
    worst512 = std::max(worst512, r2);
    errs.push_back({{"rel_error_256", r1}, {"rel_error_512", r2}, {"ratio", r2 / r1}});
  }
  r.checks.push_back({"worst error ratio 1/512 : 1/256", worst512 / worst256, 0.5, "mesh refinement halves the error",
                      0.0, Kind::AtMost});
  r.details["errors"] = errs;
  return r;
}

CriterionResult c7_c8(int id) {
  const bool energy = id == 7;
  CriterionResult r{id, energy ? "Green level-set energy identity" : "isoperimetric minimality of Green level sets"};
  const Gauge g = Gauge::euclidean();
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const GreenField ball = images_green(disk, Vec2::Zero(), 1.0 / 256);
  const GreenField off = images_green(disk, Vec2(0.5, 0.0), 1.0 / 256);
  const GreenField sq = solve_robin(Domain::rectangle(Vec2(-1, -1), Vec2(1, 1)), g, Vec2::Zero(), 1.0 / 256);
  for (double t : {0.2, 0.4}) {
    const auto d = level_set_diagnostics(ball, t);
    if (energy && t == 0.2)
      r.checks.push_back({"disk, t=0.2", d.energy_below, t, "Green level-set energy identity", 1e-4, Kind::Absolute});
    if (!energy)
      r.checks.push_back({"ball field, t=" + std::to_string(t).substr(0, 3), d.isoperimetric_ratio, 1.0,
                          "equality for Wulff balls", 1e-3, Kind::Absolute});
  }
  if (!energy)
    for (double t : {0.2, 0.4}) {
      const auto d = level_set_diagnostics(off, t);
      r.checks.push_back({"offset disk, t=" + std::to_string(t).substr(0, 3), d.isoperimetric_ratio, 1.0,
                          "isoperimetric minimality of Green level sets", 5e-3, Kind::AtLeast});
    }
  for (double t : {0.1, 0.3, 0.5}) {
    if (t >= level_set_t_max(sq)) continue;
    const auto d = level_set_diagnostics(sq, t);
    if (energy)
      r.checks.push_back({"finite-difference square, t=" + std::to_string(t).substr(0, 3), d.energy_below, t,
                          "Green level-set energy identity", 2e-2});
    else
      r.checks.push_back({"finite-difference square, t=" + std::to_string(t).substr(0, 3), d.isoperimetric_ratio, 1.0,
                          "isoperimetric minimality of Green level sets", 5e-3, Kind::AtLeast});
  }
  return r;
}

CriterionResult c9() {
  CriterionResult r{9, "strict inequality certificate"};
  for (auto start : {MaximizerOptions::Start::Psi, MaximizerOptions::Start::Zero}) {
    MaximizerOptions opt;
    opt.kappa = kPi;
    opt.start = start;
    const MaximizerResult m = radial_maximizer(opt);
    const std::string s = start == MaximizerOptions::Start::Psi ? "psi start" : "zero start";
    r.checks.push_back({s + ": validated phi", m.phi_validated, kPi * kE,
                        "strict inequality over the concentration level pi e", 0.0, Kind::AtLeast});
    r.checks.push_back({s + ": margin", m.margin, 0.0, "strict inequality over the concentration level", 0.0,
                        Kind::AtLeast});
    r.checks.push_back({s + ": energy residual", m.energy_residual, 0.0, "unit-energy projection", 1e-8, Kind::AtMost});
    r.details[s] = {{"phi", m.phi}, {"phi_validated", m.phi_validated}, {"iterations", m.iterations}};
  }
  return r;
}

CriterionResult c10(unsigned seed) {
  CriterionResult r{10, "gauge identities"};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  std::uniform_real_distribution<double> T(-3.0, 3.0);
  Mat A2(2, 2), A3(3, 3);
  A2 << 2.0, 0.6, 0.6, 1.0;
  A3 << 3.0, 0.5, 0.2, 0.5, 2.0, 0.3, 0.2, 0.3, 1.0;
  const std::vector<std::pair<std::string, Gauge>> families = {
      {"euclidean", Gauge::euclidean()},
      {"pnorm 1.5", Gauge::pnorm(2, 1.5)},
      {"pnorm 4", Gauge::pnorm(2, 4.0)},
      {"pnorm 3 in R^3", Gauge::pnorm(3, 3.0)},
      {"quadratic", Gauge::quadratic(A2)},
      {"quadratic in R^3", Gauge::quadratic(A3)},
      {"polytope hexagon", Gauge::parse("polytope:1,0;0.5,0.9;-0.5,0.9;-1,0;-0.5,-0.9;0.5,-0.9")}};
  for (const auto& [name, g] : families) {
    double hom = 0.0, euler = 0.0, dual = 0.0;
    for (int k = 0; k < 200; ++k) {
      Vec x(g.dimension());
      for (auto& c : x) c = N01(rng);
      const double t = T(rng);
      const double f = g.eval(x);
      hom = std::max(hom, std::abs(g.eval(t * x) - std::abs(t) * f) / f);
      euler = std::max(euler, std::abs(x.dot(g.grad(x)) - f) / f);
      dual = std::max(dual, std::max(std::abs(g.eval(g.grad_polar(x)) - 1.0), std::abs(g.polar(g.grad(x)) - 1.0)));
    }
    r.checks.push_back({name + ": homogeneity", hom, 0.0, "1-homogeneity", 1e-10, Kind::AtMost});
    r.checks.push_back({name + ": Euler identity", euler, 0.0, "<x, grad F(x)> = F(x)", 1e-8, Kind::AtMost});
    r.checks.push_back({name + ": polar duality", dual, 0.0, "F(grad F°) = F°(grad F) = 1", 1e-8, Kind::AtMost});
  }
  return r;
}

CriterionResult c11(bool quick, unsigned seed) {
  CriterionResult r{11, "symmetrization"};
  std::mt19937_64 rng(seed + 11);
  const int count = quick ? 5 : 20;
  const double h = quick ? 1.0 / 128 : 1.0 / 256;
  Mat A(2, 2);
  A << 1.5, 0.4, 0.4, 0.8;
  const std::vector<Gauge> gauges = {Gauge::euclidean(), Gauge::quadratic(A), Gauge::pnorm(2, 3.0)};
  double eq_worst = 0.0, ps_worst = -1e300;
  for (int k = 0; k < count; ++k) {
    const SampledField f = random_disk_field(rng, h);
    const Gauge& g = gauges[k % gauges.size()];
    const Symmetrized s = convex_symmetrization(f, g);
    for (double q : {1.0, 2.0}) {
      const double lhs = f.integrate([q](double v) { return std::pow(std::abs(v), q); });
      const double rhs = wulff_radial_integral(s.profile, g, s.radius, 0.0, [q](double v) { return std::pow(std::abs(v), q); });
      eq_worst = std::max(eq_worst, std::abs(rhs / lhs - 1.0));
    }
    const double E = f.dirichlet_energy(g, 2.0);
    const double Es = s.profile.energy(2, g.kappa(), 2.0, s.radius);
    ps_worst = std::max(ps_worst, Es - E);
  }
  r.checks.push_back({"equimeasurability, worst relative gap over q in {1, 2}", eq_worst, 0.0,
                      "equimeasurability of rearrangements", 1e-3, Kind::AtMost});
  r.checks.push_back({"Polya-Szego, worst energy(u*) - energy(u)", ps_worst, 0.0, "Polya-Szego inequality", 1e-6,
                      Kind::AtMost});
  return r;
}

CriterionResult c12(unsigned seed) {
  CriterionResult r{12, "determinism"};
  auto dump = [seed] {
    Json j = Json::array();
    for (const auto& c : run_criteria(true, seed, {4, 5, 10}))
      for (const auto& k : c.checks) j.push_back(check_json(k));
    return j.dump();
  };
  const std::string a = dump(), b = dump();
  r.checks.push_back({"repeated runs serialize identically", a == b ? 1.0 : 0.0, 1.0, "determinism", 0.0,
                      Kind::Absolute});
  return r;
}

}  // namespace

bool CriterionResult::pass() const {
  for (const auto& c : checks)
    if (c.gating && !c.pass()) return false;
  return true;
}

RadialProfile random_profile(std::mt19937_64& rng, int min_nodes, int max_nodes) {
  std::uniform_int_distribution<int> M(min_nodes, max_nodes);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int m = M(rng);
  std::vector<double> t(m), v(m);
  for (int i = 0; i < m; ++i) t[i] = static_cast<double>(i) / (m - 1);
  for (int i = 1; i + 1 < m; ++i) t[i] += (U(rng) - 0.5) * 0.6 / (m - 1);
  v[m - 1] = 0.0;
  for (int i = m - 2; i >= 0; --i) v[i] = v[i + 1] + U(rng);
  return RadialProfile(std::move(t), std::move(v));
}

SampledField random_disk_field(std::mt19937_64& rng, double h) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int bumps = 2 + static_cast<int>(4 * U(rng));
  std::vector<std::array<double, 4>> b(bumps);
  for (auto& x : b) {
    const double rr = 0.6 * std::sqrt(U(rng)), th = 2.0 * kPi * U(rng);
    x = {rr * std::cos(th), rr * std::sin(th), 0.1 + 0.2 * U(rng), 0.5 + U(rng)};
  }
  return SampledField::sample(Domain::disk(Vec2::Zero(), 1.0), h, [&b](double x, double y) {
    double v = 0.0;
    for (const auto& q : b) v += q[3] * std::exp(-((x - q[0]) * (x - q[0]) + (y - q[1]) * (y - q[1])) / (q[2] * q[2]));
    const double w = std::max(0.0, 1.0 - (x * x + y * y));
    return v * w * w * w;
  });
}

std::vector<CriterionResult> run_criteria(bool quick, unsigned seed, const std::vector<int>& which) {
  std::vector<CriterionResult> out;
  auto want = [&which](int id) { return which.empty() || std::find(which.begin(), which.end(), id) != which.end(); };
  auto timed = [&out](auto&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = f();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  };
  if (want(1)) timed([] { return c1_c2(1, 0.0); });
  if (want(2)) timed([] { return c1_c2(2, 1.0); });
  if (want(3)) timed([] { return c3(); });
  if (want(4)) timed([] { return c4(); });
  if (want(5)) timed([] { return c5(); });
  if (want(6)) timed([&] { return c6(quick, seed); });
  if (want(7)) timed([] { return c7_c8(7); });
  if (want(8)) timed([] { return c7_c8(8); });
  if (want(9)) timed([] { return c9(); });
  if (want(10)) timed([&] { return c10(seed); });
  if (want(11)) timed([&] { return c11(quick, seed); });
  if (want(12)) timed([&] { return c12(seed); });
  return out;
}

Report verify_all(bool quick, unsigned seed) {
  Report rep("verify-all");
  Json crit = Json::array();
  for (const auto& c : run_criteria(quick, seed)) {
    Json j;
    j["id"] = c.id;
    j["title"] = c.title;
    j["pass"] = c.pass();
    j["details"] = c.details;
    crit.push_back(j);
    for (auto k : c.checks) {
      k.name = "criterion " + std::to_string(c.id) + ": " + k.name;
      rep.add(std::move(k));
    }
  }
  rep.values["criteria"] = crit;
  return rep;
}

}  // namespace anisotm::app
