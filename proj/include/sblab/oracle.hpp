#pragma once

#include <vector>

#include "json.hpp"
#include "sblab/distcore.hpp"
#include "sblab/processes.hpp"

namespace sblab {

/// The instance exceeds the exhaustive-enumeration guard.
class EnumerationInfeasible : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Exact joint law of (Y, Y^s) under a process coupling.
struct JointLaw {
  struct Entry {
    double y;
    double y_s;
    double prob;
  };
  std::vector<Entry> pairs;  // sorted by (y, y_s), distinct

  FinitePmf marginal_y() const;
  FinitePmf marginal_ys() const;
};

void to_json(nlohmann::json& j, JointLaw const& law);
JointLaw joint_law_from_json(nlohmann::json const& j);

/// Largest elementary-outcome count enumerate_coupling will visit.
inline constexpr double kCouplingOutcomeGuard = 1e8;

/**
 * Exact law of Y by exhaustive enumeration. Guards: runs n <= 24, perm
 * n <= 8, extrema dim 1 with n <= 9, uniform urn m^n <= 1e7, lightbulb
 * n <= 6, graph n <= 6. Poisson and compound Poisson with finite claims
 * return their truncated series at eps = 1e-13.
 */
FinitePmf enumerate_law(ProcessConfig const& cfg);

/// Exact joint law of (Y, Y^s), also enumerating the coupling index and any
/// auxiliary randomness. Same guards, plus at most 1e8 outcomes in total.
JointLaw enumerate_coupling(ProcessConfig const& cfg);

/// Poisson(lambda) cut where the remaining tail mass is below eps, then
/// renormalized. Requires 0 < lambda <= 500 and eps <= 1e-10.
FinitePmf poisson_truncated_pmf(double lambda, double eps);

/// Law of sum_{i <= N} Z_i, N ~ Poisson(lambda), from convolution powers of
/// Z weighted by the truncated Poisson series.
FinitePmf compound_truncated_pmf(double lambda, FinitePmf const& z, double eps);

}  // namespace sblab
