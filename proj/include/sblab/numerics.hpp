#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace sblab {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive Simpson quadrature of f over [a, b]. A panel is accepted once its
/// error estimate is below its share of `abs_tol` or below `rel_tol` times
/// its own magnitude. Throws QuadratureError if the recursion depth limit is
/// hit first.
double adaptive_simpson(std::function<double(double)> const& f, double a, double b,
                        double abs_tol, int max_depth = 60, double rel_tol = 0.0);

/// Midpoint Riemann sum with `points` cells. Reference oracle for tests.
double midpoint_riemann(std::function<double(double)> const& f, double a, double b,
                        long points);

struct Minimum {
  double x;
  double value;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi],
/// stopping when the bracket width is below rel_tol * max(1, |x|).
/// Endpoints are compared too, so the result is never worse than f(lo)
/// or f(hi).
Minimum golden_section_minimize(std::function<double(double)> const& f, double lo,
                                double hi, double rel_tol);

/// Unit-ball volume pi^(d/2) / Gamma(1 + d/2); pi_0 = 1.
double unit_ball_volume(int d);

/// base^exponent with 0^0 = 1.
double pow0(double base, long exponent);

}  // namespace sblab
