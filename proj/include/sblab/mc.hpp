#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sblab/coupling.hpp"
#include "sblab/distcore.hpp"
#include "sblab/processes.hpp"

namespace sblab {

/// One-sided Clopper-Pearson bounds for k successes in N trials at level cl.
struct BinomialBounds {
  double lower = 0.0;
  double upper = 1.0;
};

BinomialBounds clopper_pearson(std::uint64_t k, std::uint64_t N, double cl);

/// Tail probabilities of one side over the t grid.
struct SideTail {
  std::vector<std::uint64_t> counts;  // empty for exact tails
  std::vector<double> estimate;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
};

/**
 * Tail table P((Y - mu)/sigma >= t) and P((Y - mu)/sigma <= -t) over a grid.
 * Monte Carlo tables carry counts and Clopper-Pearson bounds; exact tables
 * (N == 0) carry the exact value in all three columns. sigma == 0 switches
 * to raw deviations Y - mu.
 */
struct EmpiricalTail {
  std::string process;
  std::vector<double> t_grid;
  std::uint64_t N = 0;
  double cl = 0.999;
  std::uint64_t seed = 0;
  std::uint64_t block_size = 0;
  double mu = 0.0;
  double sigma = 0.0;
  bool exact = false;
  bool assume_monotone = false;
  SideTail left;
  SideTail right;

  bool raw_mode() const noexcept { return sigma == 0.0; }
  SideTail const& side(Side s) const noexcept { return s == Side::kLeft ? left : right; }
};

struct TailExperimentOptions {
  std::vector<double> t_grid;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double cl = 0.999;
  bool assume_monotone = false;
  std::optional<Moments> standardize;  // replaces the analytic (mu, sigma^2)
};

/// Requires N >= 1e4, a finite nondecreasing grid and 0.5 < cl < 1. The
/// result depends on the seed only, not on the worker count.
EmpiricalTail run_tail_experiment(ProcessConfig const& cfg, TailExperimentOptions const& opt);

/// Exact tails of `law` standardized by (mu, sigma).
EmpiricalTail exact_tail_table(std::string process, FinitePmf const& law, double mu, double sigma,
                               std::span<double const> t_grid);

/// Analytic bound values on a grid; a side is empty when no bound applies.
struct BoundCurve {
  std::string process;
  std::string family;
  std::vector<double> t_grid;
  std::optional<std::vector<double>> left;
  std::optional<std::vector<double>> right;
};

/// Requires t >= 0 on the whole grid.
BoundCurve make_bound_curve(ProcessInfo const& info, std::span<double const> t_grid);
BoundCurve scale_bound_curve(BoundCurve curve, double factor);

struct VerdictRow {
  Side side = Side::kRight;
  double t = 0.0;
  std::uint64_t N = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound = 0.0;
  bool pass = true;
};

struct Verdict {
  std::string process;
  std::vector<VerdictRow> rows;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

/// Per t and side with a bound: fail when ci_low exceeds the bound by more
/// than 1e-12 (rounding slack for exact tables). Mismatched grids throw.
Verdict verify_domination(EmpiricalTail const& tail, BoundCurve const& curve);

/// Coupling audit of a process through its coupled sampler.
CouplingAudit run_coupling_audit(ProcessConfig const& cfg, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers);

/// Sample means and standard errors of V and S for the coverage process.
struct CoverageMeans {
  std::uint64_t N = 0;
  double mean_V = 0.0;
  double se_V = 0.0;
  double mean_S = 0.0;
  double se_S = 0.0;
};

CoverageMeans run_coverage_means(Coverage const& cfg, std::uint64_t samples, std::uint64_t seed,
                                 unsigned workers);

/// Locale-independent shortest round-trip decimal.
std::string format_double(double x);

/// Parses "start:stop:step" into start + i step for i = 0, 1, ... up to stop
/// (inclusive within 1e-9 step), each rounded to 12 significant digits.
/// Throws DomainError on malformed input.
std::vector<double> parse_t_grid(std::string const& spec);

// CSV with header process,side,t,N,estimate,ci_low,ci_high,bound,verdict.
void write_verdict_csv(std::ostream& os, std::span<Verdict const> verdicts);
nlohmann::json verdict_to_json(Verdict const& v);

// CSV with header t,bound_left,bound_right,family; missing sides are blank.
void write_bound_curve_csv(std::ostream& os, BoundCurve const& curve);
nlohmann::json bound_curve_to_json(BoundCurve const& curve);

nlohmann::json tail_to_json(EmpiricalTail const& tail);

}  // namespace sblab
