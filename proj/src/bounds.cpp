#include "sblab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sblab/distcore.hpp"
#include "sblab/numerics.hpp"

namespace sblab {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr double kCoverageQuadTol = 1e-9;

double clamp_prob(double value) { return std::min(value, 1.0); }

void require_nonnegative_t(double t, char const* who) {
  if (!(t >= 0.0)) throw DomainError(std::string(who) + ": t must be >= 0");
}

}  // namespace

std::string to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::kThmMain: return "thm-main";
    case BoundFamily::kGraph: return "graph";
    case BoundFamily::kInfDiv: return "infdiv";
    case BoundFamily::kPoisson: return "poisson";
    case BoundFamily::kCoverage: return "coverage";
    case BoundFamily::kUrnNonuniform: return "urn-nonuniform";
  }
  return "unknown";
}

BoundFamily bound_family_from_string(std::string const& text) {
  for (auto f : {BoundFamily::kThmMain, BoundFamily::kGraph, BoundFamily::kInfDiv,
                 BoundFamily::kPoisson, BoundFamily::kCoverage,
                 BoundFamily::kUrnNonuniform}) {
    if (to_string(f) == text) return f;
  }
  throw DomainError("unknown bound family '" + text + "'");
}

double BoundParams::B() const { return C / (2.0 * std::sqrt(sigma2)); }

BoundParams make_bound_params(double mu, double sigma2, double C, bool monotone,
                              BoundFamily family) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(mu) || !positive(sigma2) || !positive(C)) {
    throw DomainError("BoundParams: mu, sigma2 and C must be finite and positive");
  }
  return BoundParams{mu, sigma2, C, monotone, family};
}

double bound_left_from_A(double A, double t) {
  require_nonnegative_t(t, "bound_left");
  return clamp_prob(std::exp(-t * t / (2.0 * A)));
}

double bound_right_from_AB(double A, double B, double t) {
  require_nonnegative_t(t, "bound_right");
  return clamp_prob(std::exp(-t * t / (2.0 * (A + B * t))));
}

double bound_left_monotone(BoundParams const& bp, double t) {
  if (!bp.monotone) {
    throw DomainError("bound_left_monotone: requires a monotone coupling");
  }
  return bound_left_from_A(bp.A(), t);
}

double bound_right(BoundParams const& bp, double t) {
  return bound_right_from_AB(bp.A(), bp.B(), t);
}

// ---------------------------------------------------------------------------
// Isolated vertices

GraphBoundCtx GraphBoundCtx::make(int n, double p) {
  if (n < 2) throw DomainError("graph: n must be >= 2");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("graph: p must lie in (0,1)");
  GraphBoundCtx ctx;
  ctx.n = n;
  ctx.p = p;
  double const q = 1.0 - p;
  ctx.beta = std::pow(q, -static_cast<double>(n));
  ctx.mu = n * std::pow(q, n - 1);
  ctx.sigma2 = ctx.mu * (1.0 + n * p * std::pow(q, n - 2) - std::pow(q, n - 2));
  if (!std::isfinite(ctx.beta) || !(ctx.mu > 0.0) || !(ctx.sigma2 > 0.0)) {
    throw DomainError("graph: parameters give a degenerate or overflowing context");
  }
  return ctx;
}

double graph_gamma_s(double s, GraphBoundCtx const& ctx) {
  if (!(s >= 0.0)) throw DomainError("graph_gamma_s: s must be >= 0");
  double const log_term =
      2.0 * s + ctx.n * std::log1p(ctx.p * std::exp(s) / (1.0 - ctx.p));
  double const head = 2.0 * std::exp(log_term);
  double const value = head + ctx.beta + 1.0;
  if (!std::isfinite(value)) {
    throw std::overflow_error("graph_gamma_s: value overflows double at s=" +
                              std::to_string(s));
  }
  return value;
}

double graph_H(double theta, GraphBoundCtx const& ctx) {
  if (!(theta >= 0.0)) throw DomainError("graph_H: theta must be >= 0");
  if (theta == 0.0) return 0.0;
  double const scale = ctx.mu / (2.0 * ctx.sigma2);
  auto integrand = [&ctx](double s) { return s * graph_gamma_s(s, ctx); };
  // Relative acceptance keeps large theta tractable, where H itself is huge.
  return scale * adaptive_simpson(integrand, 0.0, theta, kQuadTol / scale, 60, 1e-14);
}

double graph_theta_max(GraphBoundCtx const& ctx) {
  auto g = [&ctx](double theta) {
    return ctx.n * std::log1p(ctx.p * std::exp(theta) / (1.0 - ctx.p)) + 2.0 * theta;
  };
  constexpr double kLimit = 700.0;
  if (g(0.0) >= kLimit) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (g(hi) < kLimit) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    double const mid = 0.5 * (lo + hi);
    (g(mid) < kLimit ? lo : hi) = mid;
  }
  return lo;
}

double graph_right_tail(GraphBoundCtx const& ctx, double t) {
  require_nonnegative_t(t, "graph_right_tail");
  if (t == 0.0) return 1.0;
  double const theta_max = graph_theta_max(ctx);
  if (theta_max <= 0.0) return 1.0;
  // The objective -theta t + H(theta) is convex with derivative
  // -t + (mu / 2 sigma^2) theta gamma_theta, so the minimizer lies below the
  // first theta where that derivative turns positive.
  double const scale = ctx.mu / (2.0 * ctx.sigma2);
  auto slope = [&](double theta) { return scale * theta * graph_gamma_s(theta, ctx) - t; };
  double hi = theta_max;
  if (slope(theta_max) > 0.0) {
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
      double const mid = 0.5 * (lo + hi);
      (slope(mid) > 0.0 ? hi : lo) = mid;
    }
  }
  auto objective = [&](double theta) { return -theta * t + graph_H(theta, ctx); };
  Minimum const best = golden_section_minimize(objective, 0.0, hi, 1e-8);
  return clamp_prob(std::exp(std::min(best.value, 0.0)));
}

double graph_right_tail_capped(GraphBoundCtx const& ctx, double t, double theta0) {
  require_nonnegative_t(t, "graph_right_tail_capped");
  if (!(theta0 > 0.0)) throw DomainError("graph_right_tail_capped: theta0 must be > 0");
  double const gamma0 = graph_gamma_s(theta0, ctx);
  double const breakpoint = theta0 * ctx.mu * gamma0 / (2.0 * ctx.sigma2);
  if (t <= breakpoint) {
    return clamp_prob(std::exp(-t * t * ctx.sigma2 / (ctx.mu * gamma0)));
  }
  return clamp_prob(
      std::exp(-theta0 * t + ctx.mu * gamma0 * theta0 * theta0 / (4.0 * ctx.sigma2)));
}

double graph_left_tail(GraphBoundCtx const& ctx, double t) {
  require_nonnegative_t(t, "graph_left_tail");
  return clamp_prob(
      std::exp(-0.5 * t * t * ctx.sigma2 / (ctx.mu * (ctx.beta + 1.0))));
}

// ---------------------------------------------------------------------------
// Infinitely divisible and compound Poisson

InfDivCtx InfDivCtx::make(double mu, double sigma2, double nu, double C_x, double gamma) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(mu) || !positive(sigma2) || !positive(nu) || !positive(C_x) ||
      !positive(gamma)) {
    throw DomainError("InfDivCtx: mu, sigma2, nu, C_x and gamma must be positive");
  }
  return InfDivCtx{mu, sigma2, nu, C_x, gamma, 0.5 * (C_x + nu)};
}

TailPair infdiv_bounds(InfDivCtx const& ctx, double t) {
  require_nonnegative_t(t, "infdiv_bounds");
  TailPair out;
  double const breakpoint = ctx.gamma * ctx.K * ctx.mu / ctx.sigma2;
  if (t < breakpoint) {
    out.right = std::exp(-t * t * ctx.sigma2 / (2.0 * ctx.K * ctx.mu));
  } else {
    out.right = std::exp(-ctx.gamma * t +
                         ctx.K * ctx.mu * ctx.gamma * ctx.gamma / (2.0 * ctx.sigma2));
  }
  out.left = std::exp(-t * t * ctx.sigma2 / (2.0 * ctx.nu * ctx.mu));
  out.right = clamp_prob(out.right);
  out.left = clamp_prob(out.left);
  return out;
}

InfDivCtx gamma_compound_constants(double alpha, double beta_scale, double lambda_tau,
                                   double M) {
  if (!(alpha > 0.0) || !(beta_scale > 0.0) || !(lambda_tau > 0.0)) {
    throw DomainError("gamma_compound_constants: alpha, beta, lambda_tau must be > 0");
  }
  if (!(M > 1.0)) throw DomainError("gamma_compound_constants: M must be > 1");
  double const nu = (alpha + 1.0) * beta_scale;
  double const mu = lambda_tau * alpha * beta_scale;
  double const sigma2 = lambda_tau * beta_scale * beta_scale * alpha;
  double const gamma = 1.0 / (M * beta_scale);
  double const C_x = (alpha + 1.0) * beta_scale * std::pow(M / (M - 1.0), alpha + 2.0);
  return InfDivCtx::make(mu, sigma2, nu, C_x, gamma);
}

// ---------------------------------------------------------------------------
// Urn allocation, nonuniform

UrnNonuniformConstants urn_nonuniform_constants(int n, std::span<double const> p) {
  if (n < 1) throw DomainError("urn_nonuniform_constants: n must be >= 1");
  if (p.empty()) throw DomainError("urn_nonuniform_constants: empty probability vector");
  CompensatedSum total;
  double max_p = 0.0;
  double sum_sq = 0.0;
  for (double const pi : p) {
    if (!(pi > 0.0 && pi < 1.0)) {
      throw DomainError("urn_nonuniform_constants: probabilities must lie in (0,1)");
    }
    total.add(pi);
    max_p = std::max(max_p, pi);
    sum_sq += pi * pi;
  }
  if (std::fabs(total.value() - 1.0) > 1e-9) {
    throw DomainError("urn_nonuniform_constants: probabilities must sum to 1");
  }
  UrnNonuniformConstants out;
  out.gamma = std::max(n * max_p, 1.0);
  double const g = out.gamma;
  out.A = 24495.0 * g * g * std::exp(2.1 * g);
  out.B = 1.5 * std::sqrt(7776.0) * g * std::exp(1.05 * g) / (n * std::sqrt(sum_sq));
  double const n_required = 83.0 * g * g * (1.0 + 3.0 * g + 3.0 * g * g) * std::exp(1.05 * g);
  out.valid = max_p <= 1.0 / 11.0 && static_cast<double>(n) >= n_required;
  return out;
}

// ---------------------------------------------------------------------------
// Coverage

double coverage_omega(int d, double r) {
  if (d < 1) throw DomainError("coverage_omega: d must be >= 1");
  if (!(r >= 0.0 && r <= 2.0)) throw DomainError("coverage_omega: r must lie in [0,2]");
  if (d == 1) return 2.0 + r;
  double const half_power = 0.5 * (d - 1);
  auto slice = [half_power](double t) {
    double const base = std::max(0.0, 1.0 - 0.25 * t * t);
    return std::pow(base, half_power);
  };
  double const lens = unit_ball_volume(d - 1);
  return unit_ball_volume(d) + lens * adaptive_simpson(slice, 0.0, r, kQuadTol / lens);
}

CoverageCtx CoverageCtx::make(int n, double rho, int d, int kappa_d) {
  if (n < 4) throw DomainError("coverage: n must be >= 4");
  if (!(rho > 0.0)) throw DomainError("coverage: rho must be > 0");
  if (d < 1) throw DomainError("coverage: d must be >= 1");
  CoverageCtx ctx;
  ctx.n = n;
  ctx.rho = rho;
  ctx.d = d;
  ctx.phi = unit_ball_volume(d) * std::pow(rho, d);
  ctx.kappa_d = d == 1 && kappa_d == 0 ? 2 : kappa_d;
  if (kappa_d < 0) throw DomainError("coverage: kappa_d must be >= 0");
  if (!(ctx.phi < n)) throw DomainError("coverage: ball volume must be below torus volume n");
  return ctx;
}

CoverageMoments coverage_moments(CoverageCtx const& ctx) {
  double const n = ctx.n;
  int const d = ctx.d;
  double const phi = ctx.phi;
  double const rho_d = std::pow(ctx.rho, d);
  double const shell = d * unit_ball_volume(d);
  double const two_d = std::pow(2.0, d);
  auto union_term = [&](double r, long exponent) {
    double const w = rho_d * coverage_omega(d, std::min(2.0, r / ctx.rho)) / n;
    return pow0(1.0 - w, exponent) * std::pow(r, d - 1);
  };

  CoverageMoments out;
  double const q = 1.0 - phi / n;
  out.mu_V = n * (1.0 - std::pow(q, n));
  out.mu_S = n * std::pow(q, n - 1);

  double const ball_integral = shell * adaptive_simpson(
      [&](double r) { return union_term(r, ctx.n); }, 0.0, 2.0 * ctx.rho,
      kCoverageQuadTol / (n * shell));
  out.sigma2_V = n * ball_integral + n * (n - two_d * phi) * std::pow(1.0 - 2.0 * phi / n, n) -
                 n * n * std::pow(q, 2.0 * n);

  double const annulus_integral = shell * adaptive_simpson(
      [&](double r) { return union_term(r, ctx.n - 2); }, ctx.rho, 2.0 * ctx.rho,
      kCoverageQuadTol / (n * shell));
  double const qs = std::pow(q, n - 1);
  out.sigma2_S = n * qs * (1.0 - qs) + (n - 1.0) * annulus_integral +
                 n * (n - 1.0) *
                     ((1.0 - two_d * phi / n) * pow0(1.0 - 2.0 * phi / n, ctx.n - 2) -
                      std::pow(q, 2.0 * n - 2.0));
  return out;
}

double coverage_J(double r, int d, double rho) {
  if (!(r >= 0.0 && r <= 2.0)) throw DomainError("coverage_J: r must lie in [0,2]");
  double const rho_d = std::pow(rho, d);
  double const shell = d * unit_ball_volume(d);
  auto integrand = [&](double t) {
    return std::exp(-rho_d * coverage_omega(d, t)) * std::pow(t, d - 1);
  };
  return shell * adaptive_simpson(integrand, 0.0, r, kQuadTol / shell);
}

CoverageLimits coverage_limits(double rho, int d) {
  if (!(rho > 0.0)) throw DomainError("coverage_limits: rho must be > 0");
  if (d < 1) throw DomainError("coverage_limits: d must be >= 1");
  double const phi = unit_ball_volume(d) * std::pow(rho, d);
  double const rho_d = std::pow(rho, d);
  double const two_d = std::pow(2.0, d);
  double const j2 = coverage_J(2.0, d, rho);
  double const j1 = coverage_J(1.0, d, rho);
  CoverageLimits out;
  out.vol_frac_limit = -std::expm1(-phi);
  out.gV = rho_d * j2 - (two_d * phi + phi * phi) * std::exp(-2.0 * phi);
  out.gS = std::exp(-phi) - (1.0 + (two_d - 2.0) * phi + phi * phi) * std::exp(-2.0 * phi) +
           rho_d * (j2 - j1);
  return out;
}

double urn_limit_g2(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("urn_limit_g2: alpha must be > 0");
  return std::exp(-alpha) - std::exp(-2.0 * alpha) * (alpha * alpha - alpha + 1.0);
}

TailPair poisson_bounds(double lambda, double t) {
  if (!(lambda > 0.0)) throw DomainError("poisson_bounds: lambda must be > 0");
  require_nonnegative_t(t, "poisson_bounds");
  return TailPair{clamp_prob(std::exp(-0.5 * t * t)),
                  clamp_prob(std::exp(-t * t / (2.0 + t / std::sqrt(lambda))))};
}

}  // namespace sblab
