#include "anisotm/functionals.hpp"

#include <cmath>
#include <limits>

#include "anisotm/constants.hpp"
#include "anisotm/errors.hpp"
#include "anisotm/quadrature.hpp"

namespace anisotm {
namespace {

// 1 - q for the approximation family.
double delta_of(const FunctionalSpec& s) { return (s.n - s.p) / ((s.n - s.beta) * (s.p - 1.0)); }

double exponent_power(const FunctionalSpec& s) {
  return s.mode == FunctionalSpec::Mode::Exact ? s.n / (s.n - 1.0) : s.p / (s.p - 1.0);
}

double coefficient(const FunctionalSpec& s) {
  return s.mode == FunctionalSpec::Mode::Exact ? s.lambda : alpha_p(s.A, s.n, s.p, s.beta, s.kappa);
}

// log(exp(a) - 1) for a > 0
double log_expm1(double a) { return a > 30.0 ? a + std::log1p(-std::exp(-a)) : std::log(std::expm1(a)); }

// log(e^x + e^y)
double log_add(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

}  // namespace

FunctionalSpec FunctionalSpec::exact(int n, double kappa, double beta) {
  const SharpConstants c = sharp_constants(n, kappa, beta);
  FunctionalSpec s;
  s.n = n;
  s.beta = beta;
  s.kappa = kappa;
  s.lambda = c.lambda_n_beta;
  s.mode = Mode::Exact;
  return s;
}

FunctionalSpec FunctionalSpec::approx(int n, double kappa, double p, double A, double beta) {
  FunctionalSpec s = exact(n, kappa, beta);
  s.mode = Mode::Approx;
  s.p = p;
  s.A = A;
  s.validate();
  return s;
}

void FunctionalSpec::validate() const {
  if (n < 2) throw InputError("functional: n must be >= 2");
  if (!(beta >= 0.0 && beta < n)) throw InputError("functional: beta must lie in [0, n)");
  if (!(kappa > 0.0)) throw InputError("functional: kappa must be positive");
  if (!(log_cap > 0.0 && log_cap <= 709.0)) throw InputError("functional: log cap must lie in (0, 709]");
  if (mode == Mode::Exact) {
    if (!(lambda > 0.0)) throw InputError("functional: lambda must be positive");
    return;
  }
  if (!(A > 0.0)) throw InputError("functional: A must be positive");
  if (!(p > np_p_min(n, beta) && p < n)) throw InputError("functional: p outside the admissible range");
  if (beta > 0.0 && !(beta < p)) throw InputError("functional: beta must be below p");
}

double exp_q(double q, double r) {
  if (!(q > 0.0 && q < 1.0)) throw InputError("exp_q: q must lie in (0, 1)");
  if (!(r >= 0.0)) throw InputError("exp_q: r must be nonnegative");
  const double d = 1.0 - q;
  return std::exp(std::log1p(d * r) / d);
}

double log_integrand(const FunctionalSpec& spec, double s) {
  const double a = coefficient(spec) * std::pow(std::abs(s), exponent_power(spec));
  if (spec.mode == FunctionalSpec::Mode::Exact) return a;
  const double d = delta_of(spec);
  return std::log1p(d * a) / d;
}

double integrand(const FunctionalSpec& spec, double s) { return std::expm1(log_integrand(spec, s)); }

FunctionalValue tm_functional(const RadialProfile& U, const FunctionalSpec& spec, double radius) {
  spec.validate();
  if (!(radius > 0.0)) throw InputError("tm_functional: radius must be positive");
  const int n = spec.n;
  const double m = n - spec.beta;
  const auto& t = U.nodes();
  const auto& v = U.values();
  // Largest log-integrand sits at a node (|U| is piecewise linear, the map is monotone in |U|).
  double peak = 0.0;
  std::size_t overflow = 0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double e = std::max(log_integrand(spec, v[k]), log_integrand(spec, v[k + 1]));
    peak = std::max(peak, e);
    overflow += e > spec.log_cap;
  }
  // Integrate (e^{E} - 1) e^{-shift}; shift = 0 in the normal regime.
  const double shift = peak > spec.log_cap ? peak : 0.0;
  auto f = [&](double u) {
    const double e = log_integrand(spec, u);
    if (shift == 0.0) return std::expm1(e);
    return std::exp(e - shift) - std::exp(-shift);
  };
  CompensatedSum acc, err;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    Integral I{};
    if (spec.beta <= n - 1.0) {
      I = integrate([&](double x) { return f(U(x)) * std::pow(x, n - 1.0 - spec.beta); }, t[k], t[k + 1], 1e-12);
    } else {
      I = integrate([&](double s) { return f(U(std::pow(s, 1.0 / m))) / m; }, std::pow(t[k], m),
                    std::pow(t[k + 1], m), 1e-12);
    }
    acc.add(I.value);
    err.add(std::abs(I.error));
  }
  const double pref = n * spec.kappa * std::pow(radius, m);
  FunctionalValue out{};
  out.overflow_cells = overflow;
  const double core = acc.value();
  out.log_value = core > 0 ? std::log(pref) + std::log(core) + shift : -std::numeric_limits<double>::infinity();
  out.value = shift == 0.0 ? pref * core : std::exp(out.log_value);
  out.error_estimate = shift == 0.0 ? pref * err.value() : std::exp(std::log(pref * err.value()) + shift);
  return out;
}

FunctionalValue tm_functional(const SampledField& u, const FunctionalSpec& spec, const Gauge& g, const Vec2& pole) {
  spec.validate();
  if (spec.n != 2 || g.dimension() != 2) throw CapabilityError("tm_functional: grid fields are planar");
  std::vector<double> logs;
  std::vector<double> terms;
  logs.reserve(u.values.size());
  terms.reserve(u.values.size());
  std::size_t overflow = 0;
  bool any_overflow = false;
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) {
      const auto k = u.grid.index(i, j);
      if (u.weights[k] <= 0.0) continue;
      double lw = std::log(u.weights[k]);
      if (spec.beta > 0.0) {
        const double r = g.polar2(u.sample_x[k] - pole.x(), u.sample_y[k] - pole.y());
        if (r == 0.0) throw InputError("tm_functional: sample at the singular pole");
        lw -= spec.beta * std::log(r);
      }
      const double e = log_integrand(spec, u.values[k]);
      if (e == 0.0) continue;
      if (e > spec.log_cap) {
        ++overflow;
        any_overflow = true;
      }
      logs.push_back(lw + log_expm1(e));
      terms.push_back(std::exp(lw) * std::expm1(std::min(e, spec.log_cap)));
    }
  FunctionalValue out{};
  out.overflow_cells = overflow;
  out.error_estimate = 0.0;
  if (!any_overflow) {
    out.value = pairwise_sum(terms);
    out.log_value = out.value > 0 ? std::log(out.value) : -std::numeric_limits<double>::infinity();
    return out;
  }
  double lv = -std::numeric_limits<double>::infinity();
  for (double l : logs) lv = log_add(lv, l);
  out.log_value = lv;
  out.value = std::exp(lv);
  return out;
}

SandwichConstants sandwich_constants(const FunctionalSpec& spec) {
  spec.validate();
  if (spec.mode != FunctionalSpec::Mode::Approx) throw InputError("sandwich_constants: approx mode required");
  const double d = delta_of(spec);
  const double gamma = 1.0 / d;
  const double a = d * alpha_p(spec.A, spec.n, spec.p, spec.beta, spec.kappa);
  SandwichConstants c{};
  c.gamma = gamma;
  c.c1 = std::pow(a, gamma);
  const double k = gamma * std::pow(2.0, gamma - 1.0);
  c.C1 = k * a;
  c.C2 = k * std::pow(a, gamma - 1.0);
  c.pstar = spec.p * (spec.n - spec.beta) / (spec.n - spec.p);
  return c;
}

}  // namespace anisotm
