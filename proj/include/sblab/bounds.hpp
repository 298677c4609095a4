#pragma once

#include <span>
#include <string>

namespace sblab {

enum class BoundFamily { kThmMain, kGraph, kInfDiv, kPoisson, kCoverage, kUrnNonuniform };

std::string to_string(BoundFamily family);
BoundFamily bound_family_from_string(std::string const& text);

/// Inputs of the bounded-coupling tail bounds: mean, variance, almost-sure
/// coupling bound C, and whether the coupling is monotone (Y^s >= Y).
struct BoundParams {
  double mu = 0.0;
  double sigma2 = 0.0;
  double C = 0.0;
  bool monotone = false;
  BoundFamily family = BoundFamily::kThmMain;

  double A() const { return C * mu / sigma2; }
  double B() const;
};

/// Validates mu, sigma2, C > 0 and finite.
BoundParams make_bound_params(double mu, double sigma2, double C, bool monotone,
                              BoundFamily family = BoundFamily::kThmMain);

/// exp(-t^2 / (2A)). Requires a monotone coupling; throws if bp.monotone is
/// false or t < 0.
double bound_left_monotone(BoundParams const& bp, double t);
/// exp(-t^2 / (2(A + B t))).
double bound_right(BoundParams const& bp, double t);

double bound_left_from_A(double A, double t);
double bound_right_from_AB(double A, double B, double t);

/// Isolated vertices in G(n, p).
struct GraphBoundCtx {
  int n = 0;
  double p = 0.0;
  double beta = 0.0;  // (1-p)^(-n)
  double mu = 0.0;
  double sigma2 = 0.0;

  static GraphBoundCtx make(int n, double p);
};

double graph_gamma_s(double s, GraphBoundCtx const& ctx);
/// (mu / 2 sigma^2) * int_0^theta s gamma_s ds, adaptive Simpson to 1e-10.
double graph_H(double theta, GraphBoundCtx const& ctx);
/// Largest theta with n log(1 + p e^theta / (1-p)) + 2 theta < 700.
double graph_theta_max(GraphBoundCtx const& ctx);
/// inf over theta in [0, theta_max] of exp(-theta t + H(theta)).
double graph_right_tail(GraphBoundCtx const& ctx, double t);
double graph_right_tail_capped(GraphBoundCtx const& ctx, double t, double theta0);
double graph_left_tail(GraphBoundCtx const& ctx, double t);

/// Nonnegative infinitely divisible Y with Y^s = Y + X, X independent.
struct InfDivCtx {
  double mu = 0.0;
  double sigma2 = 0.0;
  double nu = 0.0;     // E X
  double C_x = 0.0;    // E X e^{gamma X}
  double gamma = 0.0;
  double K = 0.0;      // (C_x + nu) / 2

  static InfDivCtx make(double mu, double sigma2, double nu, double C_x, double gamma);
};

struct TailPair {
  double left = 1.0;
  double right = 1.0;
};

TailPair infdiv_bounds(InfDivCtx const& ctx, double t);

/// Constants for compound Poisson with Gamma(alpha, beta_scale) claims over a
/// horizon with Poisson mean lambda_tau, taking gamma = 1 / (M beta_scale).
/// sigma2 follows the printed display lambda_tau * beta^2 * alpha.
InfDivCtx gamma_compound_constants(double alpha, double beta_scale, double lambda_tau,
                                   double M);

struct UrnNonuniformConstants {
  double gamma = 0.0;
  double A = 0.0;
  double B = 0.0;
  bool valid = false;
};

UrnNonuniformConstants urn_nonuniform_constants(int n, std::span<double const> p);

/// Volume of the union of two unit balls in R^d with centers r apart.
double coverage_omega(int d, double r);

struct CoverageCtx {
  int n = 0;
  double rho = 0.0;
  int d = 1;
  double phi = 0.0;  // pi_d rho^d
  int kappa_d = 0;   // 0 = not supplied

  static CoverageCtx make(int n, double rho, int d, int kappa_d = 0);
};

struct CoverageMoments {
  double mu_V = 0.0;
  double sigma2_V = 0.0;
  double mu_S = 0.0;
  double sigma2_S = 0.0;
};

CoverageMoments coverage_moments(CoverageCtx const& ctx);

/// d pi_d int_0^r exp(-rho^d omega_d(t)) t^{d-1} dt.
double coverage_J(double r, int d, double rho);

struct CoverageLimits {
  double vol_frac_limit = 0.0;  // 1 - e^{-phi}
  double gV = 0.0;
  double gS = 0.0;
};

CoverageLimits coverage_limits(double rho, int d);

/// e^{-alpha} - e^{-2 alpha} (alpha^2 - alpha + 1).
double urn_limit_g2(double alpha);

TailPair poisson_bounds(double lambda, double t);

}  // namespace sblab
