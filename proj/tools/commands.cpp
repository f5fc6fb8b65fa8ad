#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "anisotm/constants.hpp"
#include "anisotm/errors.hpp"
#include "anisotm/functionals.hpp"
#include "anisotm/io.hpp"
#include "anisotm/sequences.hpp"
#include "anisotm/transplant.hpp"
#include "verify.hpp"

namespace anisotm::app {
namespace {

using Kind = Check::Kind;

std::string path_in(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out) / name).string();
}

std::string gfmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool centred_ball(const Domain& d, const Gauge& g, const Vec2& pole) {
  return d.kind() == Domain::Kind::WulffBall && d.ball_gauge().spec() == g.spec() &&
         (pole - d.ball_center()).norm() <= 1e-14 * (1.0 + d.ball_radius());
}

Json green_json(const GreenField& gf) {
  Json j;
  j["method"] = gf.method();
  j["kappa"] = gf.kappa();
  j["tau"] = gf.tau();
  j["rho"] = gf.rho();
  j["h"] = gf.h();
  j["unknowns"] = gf.info.unknowns;
  j["residual"] = gf.info.residual;
  j["boundary_max"] = gf.info.boundary_max;
  return j;
}

// Cell-counting oracle for |{F° <= 1}| on an m x m grid over the bounding square.
double kappa_count_oracle(const Gauge& g, int m) {
  double ext = 0.0;
  for (int k = 0; k < 720; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 720;
    ext = std::max(ext, 1.0 / g.polar2(std::cos(th), std::sin(th)));
  }
  ext *= 1.01;
  const double h = 2.0 * ext / m;
  long count = 0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      count += g.polar2(-ext + (i + 0.5) * h, -ext + (j + 0.5) * h) <= 1.0;
  return count * h * h;
}

Report cmd_constants(const RunConfig& cfg) {
  Report rep("constants");
  const Gauge g = Gauge::parse(cfg.gauge, cfg.n);
  const SharpConstants sc = sharp_constants(cfg.n, g.kappa(), cfg.beta);
  rep.values["n"] = sc.n;
  rep.values["kappa"] = sc.kappa;
  rep.values["beta"] = sc.beta;
  rep.values["lambda_n"] = sc.lambda_n;
  rep.values["lambda_n_beta"] = sc.lambda_n_beta;
  rep.values["omega_n"] = sc.omega_n;
  rep.values["omega_sphere"] = sc.omega_sphere;
  rep.values["alpha_n"] = sc.alpha_n;
  rep.values["harmonic_sum"] = sc.harmonic_sum;
  rep.add({"lambda_n_beta = (1 - beta/n) lambda_n", sc.lambda_n_beta, (1.0 - cfg.beta / cfg.n) * sc.lambda_n,
           "singular Trudinger-Moser exponent", 1e-14});
  rep.add({"n omega_n = sphere measure", cfg.n * sc.omega_n, sc.omega_sphere, "omega convention", 1e-14});
  if (g.kind() == GaugeKind::PNorm && g.spec() == "euclidean")
    rep.add({"lambda_n = alpha_n for the Euclidean gauge", sc.lambda_n, sc.alpha_n,
             "Euclidean Trudinger-Moser exponent", 1e-12});
  if (cfg.p > 0.0 && cfg.p < cfg.n) {
    rep.values["p"] = cfg.p;
    rep.values["talenti_S_p0"] = talenti_constant(cfg.n, cfg.p);
    if (cfg.beta < cfg.p) rep.values["alvino_S_pbeta"] = alvino_constant(cfg.n, cfg.p, cfg.beta);
    const double A = cfg.A > 0.0 ? cfg.A : 1.0;
    rep.values["A"] = A;
    if (cfg.p > np_p_min(cfg.n, cfg.beta)) rep.values["N_p"] = np_value(A, cfg.n, cfg.p, cfg.beta, sc.kappa);
    rep.values["N_p_limit"] = np_limit(A, cfg.n, cfg.beta, sc.kappa);
  }
  return rep;
}

Report cmd_kappa(const RunConfig& cfg) {
  Report rep("kappa");
  const Gauge g = Gauge::parse(cfg.gauge, cfg.n);
  const double k = g.kappa();
  const BiLipschitz bl = g.bilipschitz();
  rep.values["gauge"] = g.spec();
  rep.values["kappa"] = k;
  rep.values["bilipschitz_alpha"] = bl.alpha;
  rep.values["bilipschitz_beta"] = bl.beta;
  if (cfg.n == 2) {
    const int m = cfg.quick ? 1000 : 4000;
    rep.add({"kappa against cell counting", k, kappa_count_oracle(g, m), "cell-counting oracle", 2e-3});
  }
  if (g.kind() == GaugeKind::Quadratic)
    rep.add({"kappa = omega_n sqrt(det A)", k, unit_ball_volume(cfg.n) * std::sqrt(g.matrix().determinant()),
             "ellipsoid volume", 1e-12});
  return rep;
}

Report cmd_radius(const RunConfig& cfg) {
  Report rep("radius");
  const Gauge g = Gauge::parse(cfg.gauge);
  const Domain d = Domain::parse(cfg.domain, g);
  if (centred_ball(d, g, cfg.pole)) {
    const double r = harmonic_radius(d, g, cfg.pole, cfg.h);
    rep.values["rho"] = r;
    rep.values["method"] = "wulff-ball";
    rep.add({"harmonic radius of a centred Wulff ball", r, d.ball_radius(), "Wulff-ball radius", 1e-14});
    return rep;
  }
  const GreenField gf = solve_robin(d, g, cfg.pole, cfg.h);
  rep.values["green"] = green_json(gf);
  rep.values["rho"] = gf.rho();
  rep.values["tau"] = gf.tau();
  rep.add({"discrete residual", gf.info.residual, 0.0, "linear solve", 1e-10, Kind::AtMost});
  if (auto oracle = images_oracle(d, cfg.pole, cfg.h))
    rep.add({"rho against the images formula", gf.rho(), oracle->rho(), "method-of-images oracle", 1e-3,
             Kind::Absolute});
  return rep;
}

Report cmd_green(const RunConfig& cfg) {
  Report rep("green");
  const Gauge g = Gauge::parse(cfg.gauge);
  const Domain d = Domain::parse(cfg.domain, g);
  const auto gf = make_green(d, g, cfg.pole, cfg.h, cfg.method);
  save_green(*gf, path_in(cfg, "green"));
  rep.values["green"] = green_json(*gf);
  const bool analytic = gf->method() != "fdm";
  const double tmax = level_set_t_max(*gf);
  rep.values["t_max"] = tmax;
  if (cfg.t < tmax) {
    const LevelSetDiagnostics ls = level_set_diagnostics(*gf, cfg.t);
    rep.values["level_set"] = {{"t", ls.t},
                               {"energy_below", ls.energy_below},
                               {"isoperimetric_ratio", ls.isoperimetric_ratio},
                               {"radius_ratio", ls.radius_ratio},
                               {"area_above", ls.area_above},
                               {"predicted_radius", ls.predicted_radius},
                               {"gradient_ratio_dev", ls.gradient_ratio_dev}};
    rep.add({"energy below level t", ls.energy_below, cfg.t, "Green level-set energy identity",
             analytic ? 1e-4 : 2e-2, analytic ? Kind::Absolute : Kind::Relative});
    rep.add({"isoperimetric ratio", ls.isoperimetric_ratio, 1.0, "isoperimetric minimality of Green level sets", 5e-3,
             Kind::AtLeast});
    rep.add({"radius ratio", ls.radius_ratio, 1.0, "small level sets are Wulff balls", 5e-2, Kind::Relative, false});
  } else {
    rep.values["level_set"] = "t at or above t_max, diagnostics skipped";
  }
  if (gf->method() == "fdm") {
    rep.add({"discrete residual", gf->info.residual, 0.0, "linear solve", 1e-10, Kind::AtMost});
    if (auto oracle = images_oracle(d, cfg.pole, cfg.h)) {
      const SampledField a = gf->sample_G(), b = oracle->sample_G();
      double sup = 0.0;
      for (std::size_t k = 0; k < a.values.size(); ++k) {
        if (a.weights[k] <= 0.0) continue;
        const Vec2 x(a.sample_x[k], a.sample_y[k]);
        if ((x - cfg.pole).norm() <= 3.0 * cfg.h) continue;
        sup = std::max(sup, std::abs(a.values[k] - b.values[k]));
      }
      rep.add({"sup |G - G_images| away from the pole", sup, 0.0, "method-of-images oracle", 5e-3, Kind::AtMost});
    }
  }
  return rep;
}

RadialProfile input_profile(const RunConfig& cfg) {
  if (!cfg.input.empty()) return read_profile_csv(cfg.input);
  return RadialProfile({0.0, 1.0}, {1.0, 0.0});
}

Report cmd_transplant(const RunConfig& cfg) {
  Report rep("transplant");
  const Gauge g = Gauge::parse(cfg.gauge);
  const Domain d = Domain::parse(cfg.domain, g);
  const RadialProfile U = input_profile(cfg);
  if (!U.zero_trace(1e-12)) throw InputError("transplant: profile must vanish at t = 1");
  const auto gf = make_green(d, g, cfg.pole, cfg.h, cfg.method);
  const TransplantedFunction u = transplant(U, gf, cfg.h);
  write_field_csv(u.samples, path_in(cfg, "transplant.csv"));
  rep.values["green"] = green_json(*gf);
  rep.values["pole_cells"] = u.pole_cells;
  const int n = 2;
  const double p = cfg.p > 0.0 ? cfg.p : n;
  const double E = dirichlet_energy(u, p);
  rep.values["energy"] = E;
  if (p == n) {
    rep.add({"energy of u against the profile energy", E, U.energy(n, gf->kappa()),
             "n-harmonic transplantation energy identity", 1e-2});
  } else {
    rep.add({"energy of u against the rho^{n-p} scaled profile energy", E,
             std::pow(gf->rho(), n - p) * U.energy(n, gf->kappa(), p), "p-energy scaling under transplantation", 2e-2,
             Kind::Relative, false});
  }
  const MassComparison mc = mass_comparison(U, gf, [](double s) { return s * s; });
  rep.values["mass"] = {{"omega_integral", mc.omega_integral},
                        {"ball_integral", mc.ball_integral},
                        {"rescaled_integral", mc.rescaled_integral}};
  rep.add({"int_Omega u^2 >= ball integral", mc.omega_integral, mc.ball_integral, "transplantation mass comparison",
           1e-3 * std::max(1.0, mc.ball_integral), Kind::AtLeast});
  return rep;
}

Report cmd_evaluate(const RunConfig& cfg) {
  Report rep("evaluate");
  if (cfg.input.empty()) throw InputError("evaluate: --input is required");
  std::string header;
  {
    std::ifstream is(cfg.input);
    if (!is) throw InputError("cannot read " + cfg.input);
    std::getline(is, header);
    header.erase(std::remove_if(header.begin(), header.end(), ::isspace), header.end());
  }
  const Gauge g = Gauge::parse(cfg.gauge, header == "t,value" ? cfg.n : 2);
  const double kappa = g.kappa();
  FunctionalValue fv{};
  FunctionalSpec spec;
  auto make_spec = [&](int n, double A_default) {
    if (cfg.mode == "exact") return FunctionalSpec::exact(n, kappa, cfg.beta);
    if (cfg.p <= 0.0) throw InputError("evaluate: approx mode needs --p");
    return FunctionalSpec::approx(n, kappa, cfg.p, cfg.A > 0.0 ? cfg.A : A_default, cfg.beta);
  };
  if (header == "t,value") {
    const RadialProfile U = read_profile_csv(cfg.input);
    spec = make_spec(cfg.n, kappa);
    fv = tm_functional(U, spec);
    rep.values["input_kind"] = "profile";
  } else if (header == "x,y,value") {
    const Domain d = Domain::parse(cfg.domain, g);
    const SampledField f = read_field_csv(cfg.input, d, cfg.h);
    double A_default = kappa;
    if (cfg.mode == "approx" && cfg.A <= 0.0) A_default = kappa * std::pow(harmonic_radius(d, g, cfg.pole, cfg.h), 2);
    spec = make_spec(2, A_default);
    fv = tm_functional(f, spec, g, cfg.pole);
    rep.values["input_kind"] = "field";
  } else {
    throw InputError("evaluate: input must be a profile (t,value) or field (x,y,value) CSV");
  }
  rep.values["lambda"] = spec.lambda;
  if (spec.mode == FunctionalSpec::Mode::Approx) rep.values["A"] = spec.A;
  rep.values["value"] = fv.value;
  rep.values["log_value"] = fv.log_value;
  rep.values["overflow_cells"] = fv.overflow_cells;
  rep.values["quadrature_error_estimate"] = fv.error_estimate;
  return rep;
}

Report cmd_concentrate(const RunConfig& cfg) {
  Report rep("concentrate");
  const Gauge g = Gauge::parse(cfg.gauge);
  const Domain d = Domain::parse(cfg.domain, g);
  const auto gf = make_green(d, g, cfg.pole, cfg.h, cfg.method);
  rep.values["green"] = green_json(*gf);
  if (gf->method() == "fdm")
    if (auto oracle = images_oracle(d, cfg.pole, cfg.h))
      rep.add({"rho against the images formula", gf->rho(), oracle->rho(), "method-of-images oracle", 1e-3,
               Kind::Absolute});
  SweepOptions opt;
  opt.beta = cfg.beta;
  opt.R_exponent = cfg.R_exponent;
  opt.h = cfg.h;
  const SweepResult sw = concentration_sweep(gf, cfg.eps, opt);
  Json entries = Json::array();
  for (const auto& e : sw.entries) {
    entries.push_back({{"epsilon", e.epsilon},
                       {"R", e.R},
                       {"phi", e.phi},
                       {"phi_inner", e.phi_inner},
                       {"phi_outer", e.phi_outer},
                       {"energy", e.energy},
                       {"tail_energy", e.tail_energy},
                       {"c", e.c},
                       {"b", e.b},
                       {"c_pow", e.c_pow},
                       {"c_pow_expansion", e.c_pow_expansion},
                       {"continuity_jump", e.continuity_jump},
                       {"inner_energy", e.inner_energy},
                       {"inner_energy_quadrature", e.inner_energy_quadrature}});
    rep.add({"energy at eps=" + gfmt(e.epsilon), e.energy, 1.0, "unit-energy normalization", 2e-2});
    rep.add({"inner-cap energy closed form at eps=" + gfmt(e.epsilon), e.inner_energy_quadrature,
             e.inner_energy, "inner-cap energy closed form", 1e-8});
    rep.add({"continuity across R eps at eps=" + gfmt(e.epsilon), e.continuity_jump, 0.0,
             "matching condition", 1e-10, Kind::AtMost});
  }
  rep.values["entries"] = entries;
  rep.values["level"] = sw.level;
  rep.values["extrapolated"] = sw.extrapolated;
  rep.values["extrapolated_three_point"] = sw.extrapolated3;
  rep.values["tail_delta"] = sw.tail_delta;
  const bool tight = cfg.beta == 0.0 && centred_ball(d, g, cfg.pole);
  rep.add({"extrapolated limit against the concentration level", sw.extrapolated, sw.level,
           cfg.beta > 0.0 ? "singular concentration level n/(n-beta) kappa rho^{n-beta} e^{H}"
                          : "concentration level kappa rho^n e^{H}",
           tight ? 2e-2 : 3e-2});
  rep.add({"tail energy decreases along the sweep", sw.tail_monotone ? 1.0 : 0.0, 1.0,
           "concentrating-sequence energy localization", 0.0, Kind::Absolute});
  rep.add({"tail energy outside the delta-ball at the smallest eps", sw.entries.back().tail_energy, 0.0,
           "concentrating-sequence tail threshold", 5e-2, Kind::AtMost, false});
  rep.add({"|phi - level| decreases over the last three entries", sw.approach_monotone ? 1.0 : 0.0, 1.0,
           "monotone approach", 0.0, Kind::Absolute, false});
  {
    std::ofstream os = [&] {
      std::filesystem::create_directories(cfg.out);
      return std::ofstream(path_in(cfg, "concentrate.csv"));
    }();
    os << std::setprecision(17) << "epsilon,R,phi,energy,tail_energy,c,b\n";
    for (const auto& e : sw.entries)
      os << e.epsilon << ',' << e.R << ',' << e.phi << ',' << e.energy << ',' << e.tail_energy << ',' << e.c << ','
         << e.b << '\n';
  }
  PsiSpec ps;
  ps.green = gf;
  ps.epsilon = sw.entries.back().epsilon;
  ps.R = sw.entries.back().R;
  ps.beta = cfg.beta;
  ps.h = cfg.h;
  const PsiResult psi = build_psi(ps);
  write_field_csv(*psi.samples, path_in(cfg, "psi.csv"));
  return rep;
}

Report cmd_maximize(const RunConfig& cfg) {
  Report rep("maximize");
  if (cfg.beta != 0.0) throw InputError("maximize: only beta = 0 is supported");
  const Gauge g = Gauge::parse(cfg.gauge, cfg.n);
  MaximizerOptions opt;
  opt.n = cfg.n;
  opt.kappa = g.kappa();
  opt.nodes = cfg.nodes;
  opt.max_iterations = cfg.iterations;
  opt.start = cfg.start == "zero" ? MaximizerOptions::Start::Zero : MaximizerOptions::Start::Psi;
  const MaximizerResult r = radial_maximizer(opt);
  write_profile_csv(r.profile, path_in(cfg, "maximize_profile.csv"));
  rep.values["phi"] = r.phi;
  rep.values["phi_validated"] = r.phi_validated;
  rep.values["level"] = r.level;
  rep.values["margin"] = r.margin;
  rep.values["iterations"] = r.iterations;
  rep.values["converged"] = r.converged;
  rep.add({"certificate phi > kappa e^{H}", r.phi_validated, r.level, "strict inequality over the concentration level",
           0.0, Kind::AtLeast});
  rep.add({"margin is positive", r.margin, 0.0, "strict inequality over the concentration level", 0.0,
           Kind::AtLeast});
  rep.add({"energy residual", r.energy_residual, 0.0, "unit-energy projection", 1e-8, Kind::AtMost});
  rep.add({"largest iterate residual", r.max_iterate_residual, 0.0, "unit-energy projection", 1e-6, Kind::AtMost});
  return rep;
}

}  // namespace

std::shared_ptr<const GreenField> make_green(const Domain& d, const Gauge& g, const Vec2& pole, double h,
                                             const std::string& method) {
  if (method == "ball" || (method == "auto" && centred_ball(d, g, pole))) {
    if (!centred_ball(d, g, pole)) throw CapabilityError("method ball needs a Wulff ball centred at the pole");
    return std::make_shared<GreenField>(ball_green(g, d.ball_center(), d.ball_radius(), h));
  }
  if (method == "images") {
    if (d.kind() != Domain::Kind::WulffBall || d.ball_gauge().spec() != g.spec())
      throw CapabilityError("method images needs a Wulff ball of the same gauge");
    return std::make_shared<GreenField>(images_green(d, pole, h));
  }
  return std::make_shared<GreenField>(solve_robin(d, g, pole, h));
}

std::shared_ptr<const GreenField> images_oracle(const Domain& d, const Vec2& pole, double h) {
  if (d.kind() != Domain::Kind::WulffBall) return nullptr;
  const Gauge& g = d.ball_gauge();
  if (!(g.kind() == GaugeKind::Quadratic || g.spec() == "euclidean")) return nullptr;
  return std::make_shared<GreenField>(images_green(d, pole, h));
}

Report run_command(const RunConfig& cfg) {
  cfg.validate();
  Report rep = [&] {
    switch (cfg.command) {
      case Command::Constants: return cmd_constants(cfg);
      case Command::Kappa: return cmd_kappa(cfg);
      case Command::Radius: return cmd_radius(cfg);
      case Command::Green: return cmd_green(cfg);
      case Command::Transplant: return cmd_transplant(cfg);
      case Command::Evaluate: return cmd_evaluate(cfg);
      case Command::Concentrate: return cmd_concentrate(cfg);
      case Command::Maximize: return cmd_maximize(cfg);
      case Command::VerifyAll: return verify_all(cfg.quick, cfg.seed);
    }
    throw InputError("unknown command");
  }();
  for (const auto& [k, v] : cfg.echo()) rep.inputs[k] = v;
  return rep;
}

}  // namespace anisotm::app
