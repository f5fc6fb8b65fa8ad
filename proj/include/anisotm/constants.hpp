#pragma once

namespace anisotm {

struct SharpConstants {
  int n;
  double kappa;
  double beta;
  double lambda_n;
  double lambda_n_beta;
  double omega_n;          // volume of the Euclidean unit ball
  double omega_sphere;     // (n-1)-measure of the unit sphere, = n * omega_n
  double alpha_n;          // n * omega_sphere^{1/(n-1)}
  double harmonic_sum;     // sum_{k=1}^{n-1} 1/k
};

double harmonic_sum(int n);
SharpConstants sharp_constants(int n, double kappa, double beta = 0.0);

// exp(-(n kappa)^{1/(n-1)} tau) and its inverse.
double radius_from_robin(int n, double kappa, double tau);
double robin_from_radius(int n, double kappa, double rho);

double talenti_constant(int n, double p);
double alvino_constant(int n, double p, double beta);
double log_talenti_constant(int n, double p);
double log_alvino_constant(int n, double p, double beta);

// alpha_p, or alpha_{p,beta} when beta > 0.
double alpha_p(double A, int n, double p, double beta, double kappa);

// N_p (beta = 0) or N_{p,beta}. kappa is the Wulff-ball volume of the gauge.
double np_value(double A, int n, double p, double beta, double kappa);
double log_np_value(double A, int n, double p, double beta, double kappa);
double np_limit(double A, int n, double beta, double kappa);
// Smallest admissible p (exclusive) for np_value.
double np_p_min(int n, double beta);

double concentration_level(double kappa, double rho, int n, double beta = 0.0);

}  // namespace anisotm
