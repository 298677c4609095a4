#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sblab/distcore.hpp"
#include "sblab/parallel.hpp"
#include "sblab/rng.hpp"

namespace sblab {

/// One draw of (Y, Y^s) from a size-bias coupling.
struct CoupledPair {
  double y = 0.0;
  double y_s = 0.0;
};

/// Draws alpha with probability weights[alpha] / sum(weights).
std::size_t choose_index(std::span<double const> weights, RngStream& rng);

/// Cumulative table for repeated index draws from fixed weights.
class IndexChooser {
 public:
  explicit IndexChooser(std::span<double const> weights);
  std::size_t operator()(RngStream& rng) const;
  std::size_t size() const noexcept { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
  bool uniform_ = false;
};

/**
 * Dependency structure of a sum Y = sum_beta X_beta where each X_beta is a
 * function of independent site variables on its window V_beta.
 *
 * footprint(alpha) lists every beta whose window meets V_alpha; these are
 * the only summands that can change when the variables on V_alpha are
 * resampled. max_footprint() is b, the largest such count.
 */
class LocalDependence {
 public:
  LocalDependence(std::size_t num_sites, std::vector<std::vector<std::size_t>> windows);

  std::size_t num_sites() const noexcept { return num_sites_; }
  std::size_t num_summands() const noexcept { return windows_.size(); }
  std::span<std::size_t const> window(std::size_t alpha) const { return windows_.at(alpha); }
  std::span<std::size_t const> footprint(std::size_t alpha) const {
    return footprints_.at(alpha);
  }
  std::size_t max_footprint() const noexcept { return max_footprint_; }

 private:
  std::size_t num_sites_;
  std::vector<std::vector<std::size_t>> windows_;
  std::vector<std::vector<std::size_t>> footprints_;
  std::size_t max_footprint_ = 0;
};

class SupportError : public DomainError {
 public:
  using DomainError::DomainError;
};

/**
 * Biases a configuration of independent site variables in direction alpha.
 *
 * `kernel(rng, values)` must fill `values` (one entry per site of V_alpha,
 * in window order) with a draw from the base law of those sites reweighted
 * by X_alpha / E X_alpha, independently of `base`. Sites outside V_alpha
 * keep their base values. Resampled values failing `in_support` raise
 * SupportError.
 */
template <class T, class Kernel, class Support>
void local_dependence_bias_into(std::span<T const> base, std::size_t alpha,
                                LocalDependence const& dep, Kernel&& kernel,
                                Support&& in_support, RngStream& rng,
                                std::vector<T>& out, std::vector<T>& scratch) {
  auto const window = dep.window(alpha);
  out.assign(base.begin(), base.end());
  scratch.resize(window.size());
  kernel(rng, std::span<T>(scratch));
  for (std::size_t k = 0; k < window.size(); ++k) {
    if (!in_support(scratch[k])) {
      throw SupportError("local_dependence_bias: resampled value outside base support");
    }
    out[window[k]] = scratch[k];
  }
}

template <class T, class Kernel, class Support>
std::vector<T> local_dependence_bias(std::span<T const> base, std::size_t alpha,
                                     LocalDependence const& dep, Kernel&& kernel,
                                     Support&& in_support, RngStream& rng) {
  std::vector<T> out, scratch;
  local_dependence_bias_into(base, alpha, dep, kernel, in_support, rng, out, scratch);
  return out;
}

/// sum over beta in footprint of X_beta(after) - X_beta(before), where
/// `summand(beta, config)` evaluates X_beta.
template <class T, class Summand>
double footprint_delta(std::span<T const> before, std::span<T const> after,
                       std::span<std::size_t const> footprint, Summand&& summand) {
  double delta = 0.0;
  for (std::size_t const beta : footprint) delta += summand(beta, after) - summand(beta, before);
  return delta;
}

// ---------------------------------------------------------------------------
// Characterization audit: E[Y f(Y)] = mu E[f(Y^s)]

struct TestFunction {
  std::string name;
  std::function<double(double)> f;
};

/// f = 1, f(y) = y, f(y) = y^2, f(y) = 1(y <= mu).
std::vector<TestFunction> default_test_functions(double mu);

struct CharResidual {
  std::string name;
  double lhs = 0.0;        // mean of y f(y)
  double rhs = 0.0;        // mu * mean of f(y_s)
  double residual = 0.0;   // |lhs - rhs|
  double std_error = 0.0;
  bool within = false;
};

struct CouplingAudit {
  std::uint64_t n_samples = 0;
  double mu = 0.0;
  double max_diff = -std::numeric_limits<double>::infinity();
  double min_diff = std::numeric_limits<double>::infinity();
  std::uint64_t monotone_violations = 0;
  std::uint64_t bound_violations = 0;
  std::optional<double> coupling_bound;
  bool expect_monotone = false;
  double se_multiplier = 4.0;
  std::vector<CharResidual> char_residuals;
  std::optional<CoupledPair> first_monotone_violation;
  std::optional<CoupledPair> first_bound_violation;

  bool characterization_ok() const;
  bool passed() const;
};

void to_json(nlohmann::json& j, CouplingAudit const& audit);

struct AuditOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double mu = 0.0;                     // analytic mean of Y
  std::optional<double> coupling_bound;  // C, when the coupling is bounded
  bool expect_monotone = false;
  double se_multiplier = 4.0;
};

namespace detail {

struct RunningMoments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++n;
    double const delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  void merge(RunningMoments const& o) noexcept {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double const total = static_cast<double>(n + o.n);
    double const delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

struct AuditBlock {
  std::vector<RunningMoments> diff;  // y f(y) - mu f(y_s)
  std::vector<RunningMoments> lhs;
  std::vector<RunningMoments> rhs;
  double max_diff = -std::numeric_limits<double>::infinity();
  double min_diff = std::numeric_limits<double>::infinity();
  std::uint64_t monotone_violations = 0;
  std::uint64_t bound_violations = 0;
  std::optional<CoupledPair> first_monotone_violation;
  std::optional<CoupledPair> first_bound_violation;
};

CouplingAudit finish_audit(std::vector<AuditBlock> const& blocks,
                           std::vector<TestFunction> const& fs, AuditOptions const& opt);

}  // namespace detail

/**
 * Estimates both sides of E[Y f(Y)] = mu E[f(Y^s)] for each test function
 * from `opt.samples` coupled draws and records the range of Y^s - Y.
 * `make_sampler()` returns a callable CoupledPair(RngStream&); one is built
 * per worker thread. Block b uses stream id stream_id_for(kAudit, b), so
 * results are identical for any worker count.
 */
template <class MakeSampler>
CouplingAudit audit_characterization(MakeSampler&& make_sampler, AuditOptions const& opt,
                                     std::vector<TestFunction> const& fs) {
  if (opt.samples < 1000) throw DomainError("audit_characterization: need N >= 1000");
  double const tol = 1e-9;
  std::vector<detail::AuditBlock> blocks(block_count(opt.samples));
  for_each_block(
      opt.samples, opt.workers, make_sampler,
      [&](BlockRange range, auto& sampler) {
        RngStream rng(opt.seed, stream_id_for(StreamPurpose::kAudit, range.index));
        detail::AuditBlock acc;
        acc.diff.resize(fs.size());
        acc.lhs.resize(fs.size());
        acc.rhs.resize(fs.size());
        for (std::uint64_t i = 0; i < range.count; ++i) {
          CoupledPair const pair = sampler(rng);
          double const d = pair.y_s - pair.y;
          acc.max_diff = std::max(acc.max_diff, d);
          acc.min_diff = std::min(acc.min_diff, d);
          if (d < -tol * (1.0 + std::fabs(pair.y))) {
            if (acc.monotone_violations++ == 0) acc.first_monotone_violation = pair;
          }
          if (opt.coupling_bound && std::fabs(d) > *opt.coupling_bound + tol) {
            if (acc.bound_violations++ == 0) acc.first_bound_violation = pair;
          }
          for (std::size_t k = 0; k < fs.size(); ++k) {
            double const l = pair.y * fs[k].f(pair.y);
            double const r = opt.mu * fs[k].f(pair.y_s);
            acc.lhs[k].add(l);
            acc.rhs[k].add(r);
            acc.diff[k].add(l - r);
          }
        }
        blocks[range.index] = std::move(acc);
      });
  return detail::finish_audit(blocks, fs, opt);
}

}  // namespace sblab
