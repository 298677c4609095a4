#include "sblab/numerics.hpp"

#include <algorithm>
#include <numbers>

#include "sblab/distcore.hpp"

namespace sblab {

namespace {

struct SimpsonState {
  std::function<double(double)> const& f;
  int max_depth;
  double rel_tol;
};

double simpson_step(SimpsonState const& st, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  double const m = 0.5 * (a + b);
  double const lm = 0.5 * (a + m);
  double const rm = 0.5 * (m + b);
  double const flm = st.f(lm);
  double const frm = st.f(rm);
  double const left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double const right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double const delta = left + right - whole;
  if (!std::isfinite(delta)) throw QuadratureError("adaptive_simpson: non-finite integrand");
  if (std::fabs(delta) <= 15.0 * std::max(tol, st.rel_tol * std::fabs(left + right))) return left + right + delta / 15.0;
  if (depth >= st.max_depth || m - a <= 0.0) {
    throw QuadratureError("adaptive_simpson: tolerance not reached at depth limit");
  }
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(std::function<double(double)> const& f, double a, double b,
                        double abs_tol, int max_depth, double rel_tol) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, abs_tol, max_depth, rel_tol);
  SimpsonState const st{f, max_depth, rel_tol};
  // Split into a few panels first so narrow features are not missed by the
  // initial five-point estimate.
  constexpr int kPanels = 8;
  double total = 0.0;
  double const h = (b - a) / kPanels;
  for (int i = 0; i < kPanels; ++i) {
    double const lo = a + h * i;
    double const hi = i + 1 == kPanels ? b : a + h * (i + 1);
    double const fa = f(lo);
    double const fb = f(hi);
    double const fm = f(0.5 * (lo + hi));
    double const whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(st, lo, hi, fa, fm, fb, whole, abs_tol / kPanels, 0);
  }
  return total;
}

double midpoint_riemann(std::function<double(double)> const& f, double a, double b,
                        long points) {
  double const h = (b - a) / static_cast<double>(points);
  CompensatedSum sum;
  for (long i = 0; i < points; ++i) sum.add(f(a + (static_cast<double>(i) + 0.5) * h));
  return sum.value() * h;
}

Minimum golden_section_minimize(std::function<double(double)> const& f, double lo,
                                double hi, double rel_tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > rel_tol * std::max(1.0, std::fabs(0.5 * (a + b)))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  Minimum best = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  double const mid = 0.5 * (a + b);
  double const fmid = f(mid);
  if (fmid < best.value) best = {mid, fmid};
  double const flo = f(lo);
  if (flo < best.value) best = {lo, flo};
  double const fhi = f(hi);
  if (fhi < best.value) best = {hi, fhi};
  return best;
}

double unit_ball_volume(int d) {
  if (d < 0) throw DomainError("unit_ball_volume: dimension must be >= 0");
  switch (d) {
    case 0: return 1.0;
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: break;
  }
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(1.0 + 0.5 * d);
}

double pow0(double base, long exponent) {
  if (exponent == 0) return 1.0;
  return std::pow(base, static_cast<double>(exponent));
}

}  // namespace sblab
