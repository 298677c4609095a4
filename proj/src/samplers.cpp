#include <algorithm>
#include <cmath>
#include <numeric>

#include "sblab/numerics.hpp"
#include "sblab/processes.hpp"

namespace sblab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::vector<std::size_t>> cyclic_windows(int n, int m) {
  std::vector<std::vector<std::size_t>> windows(n);
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k < m; ++k) windows[a].push_back(static_cast<std::size_t>((a + k) % n));
  }
  return windows;
}

std::vector<std::vector<std::size_t>> lattice_windows(int n, int dim) {
  std::size_t N = 1;
  for (int i = 0; i < dim; ++i) N *= static_cast<std::size_t>(n);
  std::vector<std::vector<std::size_t>> windows(N);
  for (std::size_t v = 0; v < N; ++v) {
    auto& w = windows[v];
    w.reserve(2 * dim + 1);
    w.push_back(v);
    std::size_t stride = 1;
    for (int i = 0; i < dim; ++i) {
      std::size_t const coord = (v / stride) % n;
      std::size_t const base = v - coord * stride;
      w.push_back(base + ((coord + 1) % n) * stride);
      w.push_back(base + ((coord + n - 1) % n) * stride);
      stride *= static_cast<std::size_t>(n);
    }
  }
  return windows;
}

}  // namespace

// ---------------------------------------------------------------------------
// Statistics

PermPatternCounter::PermPatternCounter(int n, std::vector<int> tau)
    : n_(n), tau_(std::move(tau)), tau_inv_(tau_.size()),
      dep_(static_cast<std::size_t>(n), cyclic_windows(n, static_cast<int>(tau_.size()))) {
  for (std::size_t v = 0; v < tau_.size(); ++v) tau_inv_[tau_[v] - 1] = static_cast<int>(v);
}

bool PermPatternCounter::at(std::span<int const> pi, int alpha) const {
  int const m = this->m();
  int prev = pi[(alpha + tau_inv_[0]) % n_];
  for (int j = 1; j < m; ++j) {
    int const cur = pi[(alpha + tau_inv_[j]) % n_];
    if (!(prev < cur)) return false;
    prev = cur;
  }
  return true;
}

int PermPatternCounter::count(std::span<int const> pi) const {
  int y = 0;
  for (int a = 0; a < n_; ++a) y += at(pi, a) ? 1 : 0;
  return y;
}

void PermPatternCounter::rebias(std::span<int> pi, int alpha) const {
  int const m = this->m();
  int sorted[64];
  std::vector<int> heap_buffer;
  int* s = sorted;
  if (m > 64) {
    heap_buffer.resize(m);
    s = heap_buffer.data();
  }
  for (int k = 0; k < m; ++k) s[k] = pi[(alpha + k) % n_];
  std::sort(s, s + m);
  for (int j = 0; j < m; ++j) pi[(alpha + tau_inv_[j]) % n_] = s[j];
}

int perm_statistic(std::span<int const> pi, std::span<int const> tau) {
  int const n = static_cast<int>(pi.size());
  int const m = static_cast<int>(tau.size());
  if (m < 1 || n < m) throw DomainError("perm_statistic: need n >= m >= 1");
  auto check = [](std::span<int const> values, int size, char const* what) {
    std::vector<bool> seen(size + 1, false);
    for (int const v : values) {
      if (v < 1 || v > size || seen[v]) {
        throw DomainError(std::string("perm_statistic: ") + what + " is not a permutation");
      }
      seen[v] = true;
    }
  };
  check(pi, n, "pi");
  check(tau, m, "tau");
  return PermPatternCounter(n, std::vector<int>(tau.begin(), tau.end())).count(pi);
}

RunsCounter::RunsCounter(int n, int m)
    : n_(n), m_(m), dep_(static_cast<std::size_t>(n), cyclic_windows(n, m)) {}

bool RunsCounter::at(std::span<std::uint8_t const> xi, int alpha) const {
  int i = alpha;
  for (int k = 0; k < m_; ++k, ++i) {
    if (i == n_) i = 0;
    if (!xi[i]) return false;
  }
  return true;
}

int RunsCounter::count(std::span<std::uint8_t const> xi) const {
  // The window ending at position i is all ones exactly when the run of
  // ones ending at i has length >= m. Scanning the circle from just after a
  // zero makes every run start inside the scan.
  int first_zero = -1;
  for (int i = 0; i < n_; ++i) {
    if (!xi[i]) {
      first_zero = i;
      break;
    }
  }
  if (first_zero < 0) return n_;
  int y = 0;
  int run = 0;
  auto step = [&](std::uint8_t bit) {
    run = (run + 1) & -static_cast<int>(bit);
    y += run >= m_;
  };
  for (int i = first_zero + 1; i < n_; ++i) step(xi[i]);
  for (int i = 0; i < first_zero; ++i) step(xi[i]);
  return y;
}

ExtremaLattice::ExtremaLattice(int n, int dim)
    : n_(n), dim_(dim), dep_([&] {
        std::size_t N = 1;
        for (int i = 0; i < dim; ++i) N *= static_cast<std::size_t>(n);
        return N;
      }(), lattice_windows(n, dim)) {}

int urn_statistic(std::span<int const> urn_of_ball, int m) {
  std::vector<int> counts(m, 0);
  for (int const u : urn_of_ball) ++counts.at(u);
  int y = 0;
  for (int const c : counts) y += c >= 2 ? c : 0;
  return y;
}

// ---------------------------------------------------------------------------
// Samplers. Every draw resets its scratch state first, so a draw depends
// only on the RNG stream and never on which earlier blocks the worker ran.

namespace {

class PermSampler final : public ProcessSampler {
 public:
  explicit PermSampler(PermPattern const& cfg) : counter_(cfg.n, cfg.tau), pi_(cfg.n) {}

  double sample(RngStream& rng) override {
    draw(rng);
    return counter_.count(pi_);
  }

  CoupledPair sample_coupled(RngStream& rng) override {
    draw(rng);
    int const y = counter_.count(pi_);
    int const alpha = static_cast<int>(rng.uniform_int(counter_.n()));
    auto const fp = counter_.dependence().footprint(alpha);
    int before = 0, after = 0;
    for (std::size_t const b : fp) before += counter_.at(pi_, static_cast<int>(b));
    counter_.rebias(pi_, alpha);
    for (std::size_t const b : fp) after += counter_.at(pi_, static_cast<int>(b));
    return {static_cast<double>(y), static_cast<double>(y - before + after)};
  }

 private:
  void draw(RngStream& rng) {
    std::iota(pi_.begin(), pi_.end(), 1);
    for (std::size_t i = pi_.size() - 1; i > 0; --i) {
      std::swap(pi_[i], pi_[rng.uniform_int(i + 1)]);
    }
  }

  PermPatternCounter counter_;
  std::vector<int> pi_;
};

class RunsSampler final : public ProcessSampler {
 public:
  explicit RunsSampler(Runs const& cfg) : counter_(cfg.n, cfg.m), p_(cfg.p), xi_(cfg.n) {}

  double sample(RngStream& rng) override {
    rng.fill_bernoulli(xi_, p_);
    return counter_.count(xi_);
  }

  CoupledPair sample_coupled(RngStream& rng) override {
    rng.fill_bernoulli(xi_, p_);
    int const y = counter_.count(xi_);
    auto const alpha = static_cast<std::size_t>(rng.uniform_int(counter_.n()));
    // Each window summand is the product of its bits, so the direction-alpha
    // bias of the base law is the point mass on all ones over V_alpha.
    local_dependence_bias_into<std::uint8_t>(
        xi_, alpha, counter_.dependence(),
        [](RngStream&, std::span<std::uint8_t> values) {
          std::fill(values.begin(), values.end(), std::uint8_t{1});
        },
        [](std::uint8_t v) { return v <= 1; }, rng, biased_, scratch_);
    auto const summand = [&](std::size_t b, std::span<std::uint8_t const> cfg) {
      return counter_.at(cfg, static_cast<int>(b)) ? 1.0 : 0.0;
    };
    double const delta = footprint_delta<std::uint8_t>(
        xi_, biased_, counter_.dependence().footprint(alpha), summand);
    return {static_cast<double>(y), y + delta};
  }

 private:
  RunsCounter counter_;
  double p_;
  std::vector<std::uint8_t> xi_, biased_, scratch_;
};

class ExtremaSampler final : public ProcessSampler {
 public:
  explicit ExtremaSampler(Extrema const& cfg) : lattice_(cfg.n, cfg.dim), values_(lattice_.size()) {}

  double sample(RngStream& rng) override {
    draw(rng);
    return lattice_.count<double>(values_);
  }

  CoupledPair sample_coupled(RngStream& rng) override {
    draw(rng);
    int const y = lattice_.count<double>(values_);
    auto const v = static_cast<std::size_t>(rng.uniform_int(lattice_.size()));
    // Fresh i.i.d. uniforms on the closed neighborhood with the maximum
    // swapped into the center slot: by exchangeability this is the law of
    // the neighborhood given that the center is its maximum.
    auto kernel = [](RngStream& r, std::span<double> w) {
      for (;;) {
        for (double& x : w) x = r.uniform();
        auto const top = std::max_element(w.begin(), w.end());
        if (std::count(w.begin(), w.end(), *top) == 1) {
          std::iter_swap(w.begin(), top);
          return;
        }
      }
    };
    local_dependence_bias_into<double>(values_, v, lattice_.dependence(), kernel,
                                       [](double x) { return x >= 0.0 && x < 1.0; }, rng,
                                       biased_, scratch_);
    auto const summand = [&](std::size_t b, std::span<double const> cfg) {
      return lattice_.is_max(cfg, b) ? 1.0 : 0.0;
    };
    double const delta =
        footprint_delta<double>(values_, biased_, lattice_.dependence().footprint(v), summand);
    return {static_cast<double>(y), y + delta};
  }

 private:
  void draw(RngStream& rng) {
    for (double& x : values_) x = rng.uniform();
  }

  ExtremaLattice lattice_;
  std::vector<double> values_, biased_, scratch_;
};

class UrnSampler final : public ProcessSampler {
 public:
  explicit UrnSampler(UrnUniform const& cfg)
      : n_(cfg.n), m_(cfg.m), urn_of_(cfg.n), counts_(cfg.m) {
    if (cfg.probs.empty()) {
      move_prob_ = urn_move_probabilities(cfg.n, cfg.m);
    } else {
      chooser_.emplace(cfg.probs);
    }
  }

  double sample(RngStream& rng) override { return draw(rng); }

  CoupledPair sample_coupled(RngStream& rng) override {
    if (chooser_) throw SamplerUnavailable("urn: no coupled sampler for nonuniform urn probabilities");
    int const y = draw(rng);
    int const I = static_cast<int>(rng.uniform_int(n_));
    int const u = urn_of_[I];
    int const k = counts_[u] - 1;
    if (!rng.bernoulli(move_prob_[k])) return {static_cast<double>(y), static_cast<double>(y)};
    int J = static_cast<int>(rng.uniform_int(n_ - 1));
    if (J >= I) ++J;
    int const v = urn_of_[J];
    if (v == u) return {static_cast<double>(y), static_cast<double>(y)};
    auto const f = [](int c) { return c >= 2 ? c : 0; };
    int const ys = y - f(counts_[u]) - f(counts_[v]) + f(counts_[u] + 1) + f(counts_[v] - 1);
    return {static_cast<double>(y), static_cast<double>(ys)};
  }

 private:
  int draw(RngStream& rng) {
    std::fill(counts_.begin(), counts_.end(), 0);
    for (int i = 0; i < n_; ++i) {
      int const u = chooser_ ? static_cast<int>((*chooser_)(rng))
                             : static_cast<int>(rng.uniform_int(m_));
      urn_of_[i] = u;
      ++counts_[u];
    }
    int y = 0;
    for (int const c : counts_) y += c >= 2 ? c : 0;
    return y;
  }

  int n_, m_;
  std::vector<int> urn_of_, counts_;
  std::vector<double> move_prob_;
  std::optional<IndexChooser> chooser_;
};

class LightbulbSampler final : public ProcessSampler {
 public:
  explicit LightbulbSampler(Lightbulb const& cfg)
      : n_(cfg.n), order_(cfg.n), on_(cfg.n), half_(cfg.n) {}

  double sample(RngStream& rng) override { return draw(rng); }

  CoupledPair sample_coupled(RngStream& rng) override {
    if (n_ % 2 != 0) {
      throw SamplerUnavailable("lightbulb: odd n is approximation-only (no coupled sampler)");
    }
    int const y = draw(rng);
    int const I = static_cast<int>(rng.uniform_int(n_));
    if (on_[I]) return {static_cast<double>(y), static_cast<double>(y)};
    // Exactly n/2 bulbs have a stage-n/2 switch value different from I's.
    auto target = static_cast<int>(rng.uniform_int(n_ / 2));
    int J = -1;
    for (int j = 0; j < n_; ++j) {
      if (half_[j] != half_[I] && target-- == 0) {
        J = j;
        break;
      }
    }
    return {static_cast<double>(y), static_cast<double>(on_[J] ? y : y + 2)};
  }

 private:
  int draw(RngStream& rng) {
    std::iota(order_.begin(), order_.end(), 0);
    std::fill(on_.begin(), on_.end(), std::uint8_t{0});
    std::fill(half_.begin(), half_.end(), std::uint8_t{0});
    for (int r = 1; r <= n_; ++r) {
      // Toggle a uniform r-subset; for r > n/2 toggle everything and then
      // the complementary (n - r)-subset.
      bool const complement = r > n_ - r;
      int const k = complement ? n_ - r : r;
      if (complement) {
        for (auto& b : on_) b ^= 1;
      }
      for (int i = 0; i < k; ++i) {
        int const j = i + static_cast<int>(rng.uniform_int(n_ - i));
        std::swap(order_[i], order_[j]);
        on_[order_[i]] ^= 1;
      }
      if (2 * r == n_) {
        for (int i = 0; i < k; ++i) half_[order_[i]] = 1;
      }
    }
    int y = 0;
    for (auto const b : on_) y += b;
    return y;
  }

  int n_;
  std::vector<int> order_;
  std::vector<std::uint8_t> on_, half_;
};

class GraphSampler final : public ProcessSampler {
 public:
  explicit GraphSampler(GraphIso const& cfg) : n_(cfg.n), p_(cfg.p), degree_(cfg.n) {}

  double sample(RngStream& rng) override { return draw(rng); }

  CoupledPair sample_coupled(RngStream& rng) override {
    int const y = draw(rng);
    int const V = static_cast<int>(rng.uniform_int(n_));
    if (degree_[V] == 0) return {static_cast<double>(y), static_cast<double>(y)};
    int d1 = 0;
    for (auto const& [a, b] : edges_) {
      if (a == V && degree_[b] == 1) ++d1;
      if (b == V && degree_[a] == 1) ++d1;
    }
    return {static_cast<double>(y), static_cast<double>(y + d1 + 1)};
  }

 private:
  int draw(RngStream& rng) {
    std::fill(degree_.begin(), degree_.end(), 0);
    edges_.clear();
    auto const total = static_cast<std::uint64_t>(n_) * (n_ - 1) / 2;
    // Geometric skipping over the upper-triangle pairs in row-major order.
    std::uint64_t idx = 0;
    std::uint64_t row_start = 0;
    int row = 0;
    for (;;) {
      std::uint64_t const skip = rng.geometric(p_);
      if (skip >= total - idx) break;
      idx += skip;
      while (idx >= row_start + static_cast<std::uint64_t>(n_ - 1 - row)) {
        row_start += static_cast<std::uint64_t>(n_ - 1 - row);
        ++row;
      }
      int const col = row + 1 + static_cast<int>(idx - row_start);
      edges_.emplace_back(row, col);
      ++degree_[row];
      ++degree_[col];
      ++idx;
      if (idx >= total) break;
    }
    int y = 0;
    for (int const d : degree_) y += d == 0 ? 1 : 0;
    return y;
  }

  int n_;
  double p_;
  std::vector<int> degree_;
  std::vector<std::pair<int, int>> edges_;
};

class CoverageSampler final : public ProcessSampler {
 public:
  explicit CoverageSampler(Coverage const& cfg) : cfg_(cfg) {}

  double sample(RngStream& rng) override {
    auto const s = coverage_sample(cfg_, rng);
    return cfg_.target == CoverageTarget::kVolume ? s.V : cfg_.n - s.S;
  }

  CoupledPair sample_coupled(RngStream&) override {
    throw SamplerUnavailable("coverage: no coupled sampler (bounds and plain simulation only)");
  }

 private:
  Coverage cfg_;
};

class CompoundPoissonSampler final : public ProcessSampler {
 public:
  explicit CompoundPoissonSampler(CompoundPoisson const& cfg) : lambda_(cfg.lambda) {
    if (auto const* g = std::get_if<GammaClaims>(&cfg.claims)) {
      gamma_ = *g;
    } else {
      auto const& z = std::get<FinitePmf>(cfg.claims);
      atoms_.assign(z.atoms().begin(), z.atoms().end());
      claim_.emplace(z.probs());
      auto const zs = size_bias_pmf(z);
      biased_atoms_.assign(zs.atoms().begin(), zs.atoms().end());
      biased_claim_.emplace(zs.probs());
    }
  }

  double sample(RngStream& rng) override {
    std::uint64_t const count = rng.poisson(lambda_);
    if (gamma_) return count == 0 ? 0.0 : rng.gamma(count * gamma_->alpha, gamma_->beta);
    double y = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) y += atoms_[(*claim_)(rng)];
    return y;
  }

  CoupledPair sample_coupled(RngStream& rng) override {
    double const y = sample(rng);
    double const zs = gamma_ ? rng.gamma(gamma_->alpha + 1.0, gamma_->beta)
                             : biased_atoms_[(*biased_claim_)(rng)];
    return {y, y + zs};
  }

 private:
  double lambda_;
  std::optional<GammaClaims> gamma_;
  std::vector<double> atoms_, biased_atoms_;
  std::optional<IndexChooser> claim_, biased_claim_;
};

class PoissonSampler final : public ProcessSampler {
 public:
  explicit PoissonSampler(Poisson const& cfg) : lambda_(cfg.lambda) {}

  double sample(RngStream& rng) override { return static_cast<double>(rng.poisson(lambda_)); }

  CoupledPair sample_coupled(RngStream& rng) override {
    double const y = sample(rng);
    return {y, y + 1.0};
  }

 private:
  double lambda_;
};

// Uniform grid over the torus [0, L)^d with cells of side >= reach, so all
// points within `reach` of x lie in the 3^d cells around x's cell.
class TorusGrid {
 public:
  TorusGrid(int d, double side, double reach, std::span<double const> centers)
      : d_(d), side_(side), centers_(centers) {
    cells_ = std::max(1, static_cast<int>(std::floor(side / reach)));
    if (cells_ < 3) cells_ = 1;
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(cells_);
    std::size_t const n = centers.size() / d;
    start_.assign(total + 1, 0);
    std::vector<std::size_t> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
      cell_of[i] = cell_index(&centers[i * d]);
      ++start_[cell_of[i] + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    members_.resize(n);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) members_[fill[cell_of[i]]++] = i;
  }

  /// Calls fn(j) for candidate points near x (a superset of those within
  /// reach); stops early when fn returns true.
  template <class Fn>
  bool any_near(double const* x, Fn&& fn) const {
    if (cells_ == 1) {
      for (std::size_t j = 0; j < members_.size(); ++j) {
        if (fn(j)) return true;
      }
      return false;
    }
    int c[3];
    for (int i = 0; i < d_; ++i) c[i] = coord(x[i]);
    int offsets = 1;
    for (int i = 0; i < d_; ++i) offsets *= 3;
    for (int o = 0; o < offsets; ++o) {
      std::size_t cell = 0;
      int rem = o;
      std::size_t stride = 1;
      for (int i = 0; i < d_; ++i) {
        int const shifted = (c[i] + rem % 3 - 1 + cells_) % cells_;
        rem /= 3;
        cell += static_cast<std::size_t>(shifted) * stride;
        stride *= static_cast<std::size_t>(cells_);
      }
      for (std::size_t k = start_[cell]; k < start_[cell + 1]; ++k) {
        if (fn(members_[k])) return true;
      }
    }
    return false;
  }

 private:
  int coord(double x) const {
    return std::min(cells_ - 1, static_cast<int>(x / side_ * cells_));
  }
  std::size_t cell_index(double const* x) const {
    std::size_t cell = 0, stride = 1;
    for (int i = 0; i < d_; ++i) {
      cell += static_cast<std::size_t>(coord(x[i])) * stride;
      stride *= static_cast<std::size_t>(cells_);
    }
    return cell;
  }

  int d_;
  double side_;
  int cells_ = 1;
  std::span<double const> centers_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> members_;
};

double torus_dist2(double const* a, double const* b, int d, double side) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double delta = std::fabs(a[i] - b[i]);
    delta = std::min(delta, side - delta);
    s += delta * delta;
  }
  return s;
}

}  // namespace

CoverageSample coverage_sample(Coverage const& cfg, RngStream& rng) {
  validate(cfg);
  int const n = cfg.n;
  int const d = cfg.d;
  double const side = std::pow(static_cast<double>(n), 1.0 / d);
  CoverageSample out;
  if (d == 1) {
    std::vector<double> c(n);
    for (double& x : c) x = rng.uniform() * side;
    std::sort(c.begin(), c.end());
    std::vector<double> gap(n);
    for (int i = 0; i + 1 < n; ++i) gap[i] = c[i + 1] - c[i];
    gap[n - 1] = c[0] + side - c[n - 1];
    double covered = 0.0;
    for (double const g : gap) covered += std::min(g, 2.0 * cfg.rho);
    out.V = std::min(covered, side);
    for (int i = 0; i < n; ++i) {
      double const left = gap[(i + n - 1) % n];
      if (std::min(left, gap[i]) > cfg.rho) ++out.S;
    }
    return out;
  }
  std::vector<double> c(static_cast<std::size_t>(n) * d);
  for (double& x : c) x = rng.uniform() * side;
  double const r2 = cfg.rho * cfg.rho;
  TorusGrid const grid(d, side, cfg.rho, c);
  for (int i = 0; i < n; ++i) {
    bool const crowded = grid.any_near(&c[i * d], [&](std::size_t j) {
      return j != static_cast<std::size_t>(i) &&
             torus_dist2(&c[i * d], &c[j * d], d, side) <= r2;
    });
    if (!crowded) ++out.S;
  }
  long const points = cfg.volume_points > 0 ? cfg.volume_points : 4096L * n;
  long hits = 0;
  double x[3];
  for (long k = 0; k < points; ++k) {
    for (int i = 0; i < d; ++i) x[i] = rng.uniform() * side;
    bool const covered = grid.any_near(x, [&](std::size_t j) {
      return torus_dist2(x, &c[j * d], d, side) <= r2;
    });
    hits += covered ? 1 : 0;
  }
  out.V = static_cast<double>(n) * static_cast<double>(hits) / static_cast<double>(points);
  return out;
}

std::unique_ptr<ProcessSampler> make_sampler(ProcessConfig const& cfg) {
  validate(cfg);
  return std::visit(
      Overloaded{
          [](PermPattern const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<PermSampler>(c);
          },
          [](Runs const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<RunsSampler>(c);
          },
          [](Extrema const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<ExtremaSampler>(c);
          },
          [](UrnUniform const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<UrnSampler>(c);
          },
          [](Lightbulb const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<LightbulbSampler>(c);
          },
          [](GraphIso const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<GraphSampler>(c);
          },
          [](Coverage const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<CoverageSampler>(c);
          },
          [](CompoundPoisson const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<CompoundPoissonSampler>(c);
          },
          [](Poisson const& c) -> std::unique_ptr<ProcessSampler> {
            return std::make_unique<PoissonSampler>(c);
          },
      },
      cfg);
}

}  // namespace sblab
