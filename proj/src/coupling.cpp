#include "sblab/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace sblab {

std::size_t choose_index(std::span<double const> weights, RngStream& rng) {
  double total = 0.0;
  for (double const w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("choose_index: weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0.0) throw DomainError("choose_index: all weights are zero");
  double const u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

IndexChooser::IndexChooser(std::span<double const> weights) {
  if (weights.empty()) throw DomainError("IndexChooser: empty weights");
  cumulative_.reserve(weights.size());
  double acc = 0.0;
  for (double const w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("IndexChooser: weights must be finite and >= 0");
    acc += w;
    cumulative_.push_back(acc);
  }
  if (acc <= 0.0) throw DomainError("IndexChooser: all weights are zero");
  uniform_ = std::all_of(weights.begin(), weights.end(),
                         [&](double w) { return w == weights.front(); });
}

std::size_t IndexChooser::operator()(RngStream& rng) const {
  if (uniform_) return static_cast<std::size_t>(rng.uniform_int(cumulative_.size()));
  double const u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  // upper_bound never lands on a zero-weight entry: it shares its
  // predecessor's cumulative value, which is already > u.
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

LocalDependence::LocalDependence(std::size_t num_sites,
                                 std::vector<std::vector<std::size_t>> windows)
    : num_sites_(num_sites), windows_(std::move(windows)) {
  std::vector<std::vector<std::size_t>> covering(num_sites_);
  for (std::size_t beta = 0; beta < windows_.size(); ++beta) {
    for (std::size_t const g : windows_[beta]) {
      if (g >= num_sites_) throw DomainError("LocalDependence: window site out of range");
      covering[g].push_back(beta);
    }
  }
  footprints_.resize(windows_.size());
  std::vector<std::size_t> mark(windows_.size(), windows_.size());
  for (std::size_t alpha = 0; alpha < windows_.size(); ++alpha) {
    auto& fp = footprints_[alpha];
    for (std::size_t const g : windows_[alpha]) {
      for (std::size_t const beta : covering[g]) {
        if (mark[beta] == alpha) continue;
        mark[beta] = alpha;
        fp.push_back(beta);
      }
    }
    std::sort(fp.begin(), fp.end());
    max_footprint_ = std::max(max_footprint_, fp.size());
  }
}

std::vector<TestFunction> default_test_functions(double mu) {
  return {
      {"one", [](double) { return 1.0; }},
      {"identity", [](double y) { return y; }},
      {"square", [](double y) { return y * y; }},
      {"below_mean", [mu](double y) { return y <= mu ? 1.0 : 0.0; }},
  };
}

bool CouplingAudit::characterization_ok() const {
  return std::all_of(char_residuals.begin(), char_residuals.end(),
                     [](CharResidual const& r) { return r.within; });
}

bool CouplingAudit::passed() const {
  if (!characterization_ok()) return false;
  if (bound_violations > 0) return false;
  if (expect_monotone && monotone_violations > 0) return false;
  return true;
}

void to_json(nlohmann::json& j, CouplingAudit const& a) {
  nlohmann::json residuals = nlohmann::json::array();
  for (auto const& r : a.char_residuals) {
    residuals.push_back({{"f", r.name},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"residual", r.residual},
                         {"std_error", r.std_error},
                         {"within", r.within}});
  }
  j = {{"n_samples", a.n_samples},
       {"mu", a.mu},
       {"max_diff", a.max_diff},
       {"min_diff", a.min_diff},
       {"monotone_violations", a.monotone_violations},
       {"expect_monotone", a.expect_monotone},
       {"bound_violations", a.bound_violations},
       {"se_multiplier", a.se_multiplier},
       {"char_residuals", residuals},
       {"passed", a.passed()}};
  j["coupling_bound"] = a.coupling_bound ? nlohmann::json(*a.coupling_bound) : nlohmann::json();
  if (a.first_monotone_violation) {
    j["first_monotone_violation"] = {{"y", a.first_monotone_violation->y},
                                     {"y_s", a.first_monotone_violation->y_s}};
  }
  if (a.first_bound_violation) {
    j["first_bound_violation"] = {{"y", a.first_bound_violation->y},
                                  {"y_s", a.first_bound_violation->y_s}};
  }
}

namespace detail {

CouplingAudit finish_audit(std::vector<AuditBlock> const& blocks,
                           std::vector<TestFunction> const& fs, AuditOptions const& opt) {
  CouplingAudit out;
  out.n_samples = opt.samples;
  out.mu = opt.mu;
  out.coupling_bound = opt.coupling_bound;
  out.expect_monotone = opt.expect_monotone;
  out.se_multiplier = opt.se_multiplier;
  std::vector<RunningMoments> diff(fs.size()), lhs(fs.size()), rhs(fs.size());
  for (auto const& b : blocks) {
    out.max_diff = std::max(out.max_diff, b.max_diff);
    out.min_diff = std::min(out.min_diff, b.min_diff);
    if (!out.first_monotone_violation && b.first_monotone_violation) {
      out.first_monotone_violation = b.first_monotone_violation;
    }
    if (!out.first_bound_violation && b.first_bound_violation) {
      out.first_bound_violation = b.first_bound_violation;
    }
    out.monotone_violations += b.monotone_violations;
    out.bound_violations += b.bound_violations;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      diff[k].merge(b.diff[k]);
      lhs[k].merge(b.lhs[k]);
      rhs[k].merge(b.rhs[k]);
    }
  }
  double const n = static_cast<double>(opt.samples);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    CharResidual r;
    r.name = fs[k].name;
    r.lhs = lhs[k].mean;
    r.rhs = rhs[k].mean;
    r.residual = std::fabs(diff[k].mean);
    r.std_error = std::sqrt(std::max(diff[k].m2, 0.0) / (n - 1.0) / n);
    // Degenerate couplings have zero sample variance; allow rounding noise.
    double const slack = 1e-12 * (1.0 + std::fabs(r.lhs) + std::fabs(r.rhs));
    r.within = r.residual <= opt.se_multiplier * r.std_error + slack;
    out.char_residuals.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

}  // namespace sblab
