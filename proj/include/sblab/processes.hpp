#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sblab/bounds.hpp"
#include "sblab/coupling.hpp"
#include "sblab/distcore.hpp"
#include "sblab/rng.hpp"

namespace sblab {

/// Invalid process configuration (CLI exit code 2).
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The process has no sampler for the requested operation.
class SamplerUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configurations

/// Occurrences of the relative order tau in cyclic length-m windows of a
/// uniform permutation of 1..n. tau holds the values 1..m.
struct PermPattern {
  int n = 0;
  std::vector<int> tau;
};

/// Cyclic count of m consecutive successes in n Bernoulli(p) trials.
struct Runs {
  int n = 0;
  int m = 0;
  double p = 0.5;
};

/// Local maxima of i.i.d. uniform values on the torus lattice {1..n}^dim.
struct Extrema {
  int n = 0;
  int dim = 1;
};

/// Non-isolated balls when n balls go into m urns. `probs` empty means
/// uniform; otherwise only bounds and plain sampling are available.
struct UrnUniform {
  int n = 0;
  int m = 0;
  std::vector<double> probs;
};

/// Bulbs on after day n when day r toggles a uniform r-subset.
struct Lightbulb {
  int n = 0;
};

/// Isolated vertices of G(n, p).
struct GraphIso {
  int n = 0;
  double p = 0.0;
};

enum class CoverageTarget { kVolume, kNonisolated };

std::string to_string(CoverageTarget target);
CoverageTarget coverage_target_from_string(std::string const& text);

/// n balls of radius rho with uniform centers on the volume-n torus in R^d.
/// Y is the covered volume or the number of non-isolated balls.
struct Coverage {
  int n = 0;
  double rho = 0.0;
  int d = 1;
  int kappa_d = 0;  // 0 = not supplied (d = 1 uses 2)
  CoverageTarget target = CoverageTarget::kVolume;
  long volume_points = 0;  // hit-or-miss points for d >= 2; 0 = 4096 n
};

/// Gamma claim sizes with shape alpha and scale beta. M > 1 picks the
/// exponential moment gamma = 1 / (M beta) used by the bounds.
struct GammaClaims {
  double alpha = 1.0;
  double beta = 1.0;
  double M = 2.0;
};

struct CompoundPoisson {
  double lambda = 0.0;
  std::variant<GammaClaims, FinitePmf> claims;
  std::optional<double> gamma;  // finite claims only; default 1 / max atom
};

struct Poisson {
  double lambda = 0.0;
};

using ProcessConfig = std::variant<PermPattern, Runs, Extrema, UrnUniform, Lightbulb,
                                   GraphIso, Coverage, CompoundPoisson, Poisson>;

/// perm, runs, extrema, urn, lightbulb, graph, coverage, cpoisson, poisson.
std::string process_name(ProcessConfig const& cfg);
std::vector<std::string> process_names();

/// Throws ConfigError when a parameter guard fails.
void validate(ProcessConfig const& cfg);

/// {"process": name, ...parameters}. Validates.
ProcessConfig process_config_from_json(nlohmann::json const& j);
nlohmann::json process_config_to_json(ProcessConfig const& cfg);

// ---------------------------------------------------------------------------
// Closed-form parameters

struct ProcessInfo {
  std::string name;
  Moments moments;
  std::optional<double> coupling_bound;  // C; empty when |Y^s - Y| is unbounded
  bool monotone = false;
  BoundFamily family = BoundFamily::kThmMain;
  bool supports_left_tail = false;
  bool left_tail_assumed = false;  // left bounds enabled by the caller's flag
  bool coupling_exact = false;
  bool has_coupled_sampler = false;
  std::optional<BoundParams> bound_params;
  std::optional<GraphBoundCtx> graph;
  std::optional<InfDivCtx> infdiv;
  std::optional<UrnNonuniformConstants> urn_nonuniform;
  double t_shift = 0.0;  // odd-n lightbulb: bounds evaluated at t - t_shift

  double sigma() const;
};

ProcessInfo perm_params(PermPattern const& cfg);
ProcessInfo runs_params(Runs const& cfg);
ProcessInfo extrema_params(Extrema const& cfg, bool assume_monotone = false);
ProcessInfo urn_params(UrnUniform const& cfg);
ProcessInfo lightbulb_params(Lightbulb const& cfg);
ProcessInfo graph_params(GraphIso const& cfg);
ProcessInfo coverage_params(Coverage const& cfg, bool assume_monotone = false);
ProcessInfo compound_poisson_params(CompoundPoisson const& cfg);
ProcessInfo poisson_params(Poisson const& cfg);

/// `assume_monotone` licenses left-tail bounds for extrema and coverage.
ProcessInfo process_info(ProcessConfig const& cfg, bool assume_monotone = false);

/// Bound values at standardized deviation t >= 0; empty when the process
/// has no bound on that side. Degenerate processes (sigma = 0) get the
/// vacuous bound 1.
struct BoundValues {
  std::optional<double> left;
  std::optional<double> right;
};

BoundValues evaluate_bounds(ProcessInfo const& info, double t);

/// I_k for k = 0..m-1: whether tau(1..m-k) and tau(k+1..m) share a relative
/// order.
std::vector<int> perm_overlap_indicators(std::span<int const> tau);

/// Kolchin's uniform-urn variance with 0^0 = 1.
Moments urn_uniform_moments(int n, int m);
/// Mean and variance of the non-isolated count for general urn
/// probabilities, from pairwise inclusion probabilities.
Moments urn_general_moments(int n, std::span<double const> probs);

Moments lightbulb_moments(int n);

/// pi_k for k = 0..n-1 (pi_{n-1} = 0): probability of moving a ball J into
/// the urn of I given M_I = k other balls share it.
std::vector<double> urn_move_probabilities(int n, int m);

// ---------------------------------------------------------------------------
// Statistics shared by samplers and the enumeration oracle

class PermPatternCounter {
 public:
  PermPatternCounter(int n, std::vector<int> tau);

  int n() const noexcept { return n_; }
  int m() const noexcept { return static_cast<int>(tau_.size()); }
  LocalDependence const& dependence() const noexcept { return dep_; }

  /// Whether tau appears at window alpha (0-based start) of `pi`.
  bool at(std::span<int const> pi, int alpha) const;
  int count(std::span<int const> pi) const;
  /// Reorders the values of window alpha into tau's relative order.
  void rebias(std::span<int> pi, int alpha) const;

 private:
  int n_;
  std::vector<int> tau_;
  std::vector<int> tau_inv_;  // position (0-based) of value j+1
  LocalDependence dep_;
};

/// Counts the occurrences of tau; pi must be a permutation of 1..n.
int perm_statistic(std::span<int const> pi, std::span<int const> tau);

class RunsCounter {
 public:
  RunsCounter(int n, int m);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  LocalDependence const& dependence() const noexcept { return dep_; }

  bool at(std::span<std::uint8_t const> xi, int alpha) const;
  int count(std::span<std::uint8_t const> xi) const;

 private:
  int n_;
  int m_;
  LocalDependence dep_;
};

/// Torus lattice {0..n-1}^dim with nearest-neighbor windows.
class ExtremaLattice {
 public:
  ExtremaLattice(int n, int dim);

  int side() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dep_.num_summands(); }
  /// Vertex v first, then its 2 dim neighbors.
  std::span<std::size_t const> window(std::size_t v) const { return dep_.window(v); }
  LocalDependence const& dependence() const noexcept { return dep_; }

  template <class T>
  bool is_max(std::span<T const> values, std::size_t v) const {
    auto const w = dep_.window(v);
    for (std::size_t k = 1; k < w.size(); ++k) {
      if (!(values[w[0]] > values[w[k]])) return false;
    }
    return true;
  }
  template <class T>
  int count(std::span<T const> values) const {
    int y = 0;
    for (std::size_t v = 0; v < size(); ++v) y += is_max(values, v) ? 1 : 0;
    return y;
  }

 private:
  int n_;
  int dim_;
  LocalDependence dep_;
};

/// Balls whose urn holds at least two balls.
int urn_statistic(std::span<int const> urn_of_ball, int m);

// ---------------------------------------------------------------------------
// Samplers

/// Per-worker sampler with scratch buffers. Not thread-safe; build one per
/// worker from the same config.
class ProcessSampler {
 public:
  virtual ~ProcessSampler() = default;
  virtual double sample(RngStream& rng) = 0;
  /// Throws SamplerUnavailable when the process has no coupled sampler.
  virtual CoupledPair sample_coupled(RngStream& rng) = 0;
};

std::unique_ptr<ProcessSampler> make_sampler(ProcessConfig const& cfg);

/// Covered volume V and isolated-ball count S of one coverage draw.
struct CoverageSample {
  double V = 0.0;
  int S = 0;
};

CoverageSample coverage_sample(Coverage const& cfg, RngStream& rng);

}  // namespace sblab
