#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sblab {

/// Raised when an input violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Side { kLeft, kRight };

std::string to_string(Side side);
Side side_from_string(std::string const& text);

/// Mean and variance of a law.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Rounds to 12 significant digits; the key used when merging atoms.
double canonical_atom(double x);

/**
 * Exact, finitely supported probability law.
 *
 * Atoms are canonicalized to 12 significant digits, merged, sorted strictly
 * increasing, and zero-probability atoms are pruned. Probabilities must be
 * nonnegative and sum to one within 1e-12.
 */
class FinitePmf {
 public:
  FinitePmf(std::vector<double> atoms, std::vector<double> probs);

  static FinitePmf point_mass(double c);
  static FinitePmf from_pairs(std::vector<std::pair<double, double>> pairs);
  /// Divides by the total mass before validating. Used by truncated series.
  static FinitePmf normalized(std::vector<std::pair<double, double>> pairs);

  std::span<double const> atoms() const noexcept { return atoms_; }
  std::span<double const> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Probability of the atom equal to canonical_atom(x), 0 if absent.
  double prob_of(double x) const;
  double min_atom() const { return atoms_.front(); }
  double max_atom() const { return atoms_.back(); }

 private:
  FinitePmf() = default;
  void canonicalize(std::vector<std::pair<double, double>> pairs);

  std::vector<double> atoms_;
  std::vector<double> probs_;
};

Moments pmf_moments(FinitePmf const& p);

/// Law with density x / mean relative to `p`. Atoms at zero drop out.
FinitePmf size_bias_pmf(FinitePmf const& p);

double tv_distance(FinitePmf const& p, FinitePmf const& q);

/// Whether y lies in the standardized tail {(y - mu)/sigma >= t} (right) or
/// {(y - mu)/sigma <= -t} (left). sigma == 0 means raw deviations y - mu.
/// A relative slack of 1e-12 keeps atoms sitting exactly on the boundary
/// inside the tail.
bool in_tail(double y, double mu, double sigma, double t, Side side) noexcept;

double exact_tail(FinitePmf const& p, double mu, double sigma, double t, Side side);

void to_json(nlohmann::json& j, FinitePmf const& p);
FinitePmf pmf_from_json(nlohmann::json const& j);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace sblab
