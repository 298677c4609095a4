#include "sblab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace sblab {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kSeriesEps = 1e-13;

// Dense accumulator over integer outcomes y in [0, max_y], y_s in [0, max_ys].
class DenseJoint {
 public:
  DenseJoint(int max_y, int max_ys)
      : max_y_(max_y), max_ys_(max_ys),
        cells_(static_cast<std::size_t>(max_y + 1) * (max_ys + 1)) {}

  void add(int y, int ys, double weight) {
    cells_.at(static_cast<std::size_t>(y) * (max_ys_ + 1) + ys).add(weight);
  }

  /// Joint law after dividing every cell by `total`.
  JointLaw finish(double total) const {
    JointLaw law;
    for (int y = 0; y <= max_y_; ++y) {
      for (int ys = 0; ys <= max_ys_; ++ys) {
        double const w = cells_[static_cast<std::size_t>(y) * (max_ys_ + 1) + ys].value();
        if (w > 0.0) law.pairs.push_back({double(y), double(ys), w / total});
      }
    }
    return law;
  }

  FinitePmf marginal(double total) const {
    std::vector<std::pair<double, double>> pairs;
    for (int y = 0; y <= max_y_; ++y) {
      CompensatedSum s;
      for (int ys = 0; ys <= max_ys_; ++ys) {
        s.add(cells_[static_cast<std::size_t>(y) * (max_ys_ + 1) + ys].value());
      }
      if (s.value() > 0.0) pairs.emplace_back(y, s.value() / total);
    }
    return FinitePmf::from_pairs(std::move(pairs));
  }

 private:
  int max_y_, max_ys_;
  std::vector<CompensatedSum> cells_;
};

void guard(bool ok, std::string const& what) {
  if (!ok) throw EnumerationInfeasible("enumeration infeasible: " + what);
}

void guard_outcomes(double outcomes) {
  guard(outcomes <= kCouplingOutcomeGuard,
        "coupling enumeration would visit more than 1e8 outcomes");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

// ---------------------------------------------------------------------------
// Pattern counts: all n! relative orders, each coupling index alpha.

DenseJoint perm_joint(PermPattern const& cfg, bool coupled) {
  guard(cfg.n <= 8, "perm requires n <= 8");
  int const n = cfg.n;
  if (coupled) guard_outcomes(factorial(n) * n);
  PermPatternCounter const counter(n, cfg.tau);
  std::vector<int> pi(n), work(n);
  std::iota(pi.begin(), pi.end(), 1);
  DenseJoint acc(n, n);
  do {
    int const y = counter.count(pi);
    if (!coupled) {
      acc.add(y, y, 1.0);
      continue;
    }
    for (int a = 0; a < n; ++a) {
      work = pi;
      counter.rebias(work, a);
      acc.add(y, counter.count(work), 1.0);
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return acc;
}

// ---------------------------------------------------------------------------
// m-runs: all 2^n bit strings, weighted by p^ones (1-p)^zeros.

int runs_count_bits(std::uint32_t bits, int n, int m) {
  std::uint32_t const full = (m >= 32) ? ~0u : ((1u << m) - 1);
  std::uint32_t const mask = (n >= 32) ? ~0u : ((1u << n) - 1);
  int y = 0;
  for (int a = 0; a < n; ++a) {
    std::uint32_t const rot = a == 0 ? bits : (((bits >> a) | (bits << (n - a))) & mask);
    if ((rot & full) == full) ++y;
  }
  return y;
}

DenseJoint runs_joint(Runs const& cfg, bool coupled) {
  guard(cfg.n <= 24, "runs requires n <= 24");
  int const n = cfg.n, m = cfg.m;
  if (coupled) guard_outcomes(std::ldexp(1.0, n) * n);
  std::vector<double> weight(n + 1);
  for (int k = 0; k <= n; ++k) weight[k] = std::pow(cfg.p, k) * std::pow(1.0 - cfg.p, n - k);
  DenseJoint acc(n, n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    int const y = runs_count_bits(bits, n, m);
    double const w = weight[std::popcount(bits)];
    if (!coupled) {
      acc.add(y, y, w);
      continue;
    }
    for (int a = 0; a < n; ++a) {
      std::uint32_t forced = bits;
      for (int k = 0; k < m; ++k) forced |= 1u << ((a + k) % n);
      acc.add(y, runs_count_bits(forced, n, m), w / n);
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Local maxima, dimension 1: relative orders. The coupling enumerates the
// joint order of the n base values and the 3 fresh neighborhood values.

DenseJoint extrema_joint(Extrema const& cfg, bool coupled) {
  guard(cfg.dim == 1 && cfg.n <= 9, "extrema requires dim 1 and n <= 9");
  int const n = cfg.n;
  ExtremaLattice const lattice(n, 1);
  DenseJoint acc(n, n);
  if (!coupled) {
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 0);
    do {
      int const y = lattice.count<int>(ranks);
      acc.add(y, y, 1.0);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return acc;
  }
  int const w = 3;
  guard_outcomes(factorial(n + w) * n);
  std::vector<int> ranks(n + w);
  std::iota(ranks.begin(), ranks.end(), 0);
  std::vector<int> biased(n);
  do {
    std::span<int const> base(ranks.data(), n);
    int const y = lattice.count<int>(base);
    int fresh[3] = {ranks[n], ranks[n + 1], ranks[n + 2]};
    int const top = static_cast<int>(std::max_element(fresh, fresh + w) - fresh);
    std::swap(fresh[0], fresh[top]);
    for (int v = 0; v < n; ++v) {
      std::copy(base.begin(), base.end(), biased.begin());
      auto const win = lattice.window(v);
      for (int k = 0; k < w; ++k) biased[win[k]] = fresh[k];
      acc.add(y, lattice.count<int>(biased), 1.0);
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return acc;
}

// ---------------------------------------------------------------------------
// Uniform urn: all m^n throws, each coupling index, move decision and J.

DenseJoint urn_joint(UrnUniform const& cfg, bool coupled) {
  guard(cfg.probs.empty(), "urn enumeration supports uniform probabilities only");
  int const n = cfg.n, m = cfg.m;
  double const throws = std::pow(static_cast<double>(m), n);
  guard(throws <= 1e7, "urn requires m^n <= 1e7");
  if (coupled) guard_outcomes(throws * n * n);
  auto const pi = urn_move_probabilities(n, m);
  std::vector<int> urn(n, 0), counts(m, 0);
  counts[0] = n;
  DenseJoint acc(n, n);
  auto const f = [](int c) { return c >= 2 ? c : 0; };
  for (;;) {
    int y = 0;
    for (int const c : counts) y += f(c);
    if (!coupled) {
      acc.add(y, y, 1.0);
    } else {
      for (int I = 0; I < n; ++I) {
        int const u = urn[I];
        double const move = pi[counts[u] - 1];
        if (move < 1.0) acc.add(y, y, (1.0 - move) / n);
        if (move <= 0.0) continue;
        for (int J = 0; J < n; ++J) {
          if (J == I) continue;
          int const v = urn[J];
          int const ys = v == u ? y : y - f(counts[u]) - f(counts[v]) + f(counts[u] + 1) +
                                          f(counts[v] - 1);
          acc.add(y, ys, move / (n * (n - 1.0)));
        }
      }
    }
    // Odometer over throws.
    int i = 0;
    while (i < n) {
      --counts[urn[i]];
      if (++urn[i] < m) {
        ++counts[urn[i]];
        break;
      }
      urn[i] = 0;
      ++counts[0];
      ++i;
    }
    if (i == n) break;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Lightbulb: product over stages of all r-subsets of switches.

DenseJoint lightbulb_joint(Lightbulb const& cfg, bool coupled) {
  guard(cfg.n <= 6, "lightbulb requires n <= 6");
  int const n = cfg.n;
  if (coupled && n % 2 != 0) {
    throw SamplerUnavailable("lightbulb: odd n is approximation-only (no coupling)");
  }
  std::vector<std::vector<std::uint32_t>> subsets(n + 1);
  for (std::uint32_t s = 0; s < (1u << n); ++s) subsets[std::popcount(s)].push_back(s);
  DenseJoint acc(n, n);
  int const half = n / 2;
  // Each leaf has weight 1; coupling branches split it into n * (n/2) units.
  auto leaf = [&](std::uint32_t on, std::uint32_t half_mask) {
    int const y = std::popcount(on);
    if (!coupled) {
      acc.add(y, y, 1.0);
      return;
    }
    double const unit = 1.0 / (n * static_cast<double>(half));
    for (int I = 0; I < n; ++I) {
      if (on >> I & 1u) {
        acc.add(y, y, half * unit);
        continue;
      }
      bool const hi = half_mask >> I & 1u;
      for (int J = 0; J < n; ++J) {
        if (static_cast<bool>(half_mask >> J & 1u) == hi) continue;
        acc.add(y, (on >> J & 1u) ? y : y + 2, unit);
      }
    }
  };
  auto recurse = [&](auto&& self, int r, std::uint32_t on, std::uint32_t half_mask) -> void {
    if (r > n) {
      leaf(on, half_mask);
      return;
    }
    for (std::uint32_t const s : subsets[r]) {
      self(self, r + 1, on ^ s, 2 * r == n ? s : half_mask);
    }
  };
  recurse(recurse, 1, 0u, 0u);
  return acc;
}

// ---------------------------------------------------------------------------
// Isolated vertices: all edge subsets, weighted by p^edges (1-p)^non-edges.

DenseJoint graph_joint(GraphIso const& cfg, bool coupled) {
  guard(cfg.n <= 6, "graph requires n <= 6");
  int const n = cfg.n;
  int const E = n * (n - 1) / 2;
  if (coupled) guard_outcomes(std::ldexp(1.0, E) * n);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  std::vector<double> weight(E + 1);
  for (int k = 0; k <= E; ++k) weight[k] = std::pow(cfg.p, k) * std::pow(1.0 - cfg.p, E - k);
  DenseJoint acc(n, n);
  std::vector<int> degree(n);
  for (std::uint32_t mask = 0; mask < (1u << E); ++mask) {
    std::fill(degree.begin(), degree.end(), 0);
    for (int e = 0; e < E; ++e) {
      if (mask >> e & 1u) {
        ++degree[pairs[e].first];
        ++degree[pairs[e].second];
      }
    }
    int y = 0;
    for (int const d : degree) y += d == 0;
    double const w = weight[std::popcount(mask)];
    if (!coupled) {
      acc.add(y, y, w);
      continue;
    }
    for (int V = 0; V < n; ++V) {
      int ys = y;
      if (degree[V] > 0) {
        int d1 = 0;
        for (int e = 0; e < E; ++e) {
          if (!(mask >> e & 1u)) continue;
          auto const [a, b] = pairs[e];
          if (a == V && degree[b] == 1) ++d1;
          if (b == V && degree[a] == 1) ++d1;
        }
        ys = y + d1 + 1;
      }
      acc.add(y, ys, w / n);
    }
  }
  return acc;
}

std::optional<FinitePmf> series_law(ProcessConfig const& cfg) {
  if (auto const* p = std::get_if<Poisson>(&cfg)) return poisson_truncated_pmf(p->lambda, kSeriesEps);
  if (auto const* c = std::get_if<CompoundPoisson>(&cfg)) {
    if (auto const* z = std::get_if<FinitePmf>(&c->claims)) {
      return compound_truncated_pmf(c->lambda, *z, kSeriesEps);
    }
  }
  return std::nullopt;
}

DenseJoint discrete_joint(ProcessConfig const& cfg, bool coupled) {
  return std::visit(
      Overloaded{
          [&](PermPattern const& c) { return perm_joint(c, coupled); },
          [&](Runs const& c) { return runs_joint(c, coupled); },
          [&](Extrema const& c) { return extrema_joint(c, coupled); },
          [&](UrnUniform const& c) { return urn_joint(c, coupled); },
          [&](Lightbulb const& c) { return lightbulb_joint(c, coupled); },
          [&](GraphIso const& c) { return graph_joint(c, coupled); },
          [&](auto const&) -> DenseJoint {
            throw EnumerationInfeasible("enumeration infeasible: " + process_name(cfg) +
                                        " has no finite enumeration");
          },
      },
      cfg);
}

double joint_total(ProcessConfig const& cfg, bool coupled) {
  if (auto const* c = std::get_if<PermPattern>(&cfg)) {
    return factorial(c->n) * (coupled ? c->n : 1);
  }
  if (auto const* c = std::get_if<Extrema>(&cfg)) {
    return coupled ? factorial(c->n + 3) * c->n : factorial(c->n);
  }
  if (auto const* c = std::get_if<UrnUniform>(&cfg)) return std::pow(double(c->m), c->n);
  if (auto const* c = std::get_if<Lightbulb>(&cfg)) {
    double total = 1.0;
    for (int r = 1; r <= c->n; ++r) total *= std::round(std::tgamma(c->n + 1.0) /
                                                       (std::tgamma(r + 1.0) * std::tgamma(c->n - r + 1.0)));
    return total;
  }
  return 1.0;  // runs and graph carry probability weights
}

}  // namespace

FinitePmf JointLaw::marginal_y() const {
  std::vector<std::pair<double, double>> out;
  for (auto const& e : pairs) out.emplace_back(e.y, e.prob);
  return FinitePmf::from_pairs(std::move(out));
}

FinitePmf JointLaw::marginal_ys() const {
  std::vector<std::pair<double, double>> out;
  for (auto const& e : pairs) out.emplace_back(e.y_s, e.prob);
  return FinitePmf::from_pairs(std::move(out));
}

void to_json(json& j, JointLaw const& law) {
  json rows = json::array();
  for (auto const& e : law.pairs) rows.push_back({e.y, e.y_s, e.prob});
  j = json{{"pairs", rows}};
}

JointLaw joint_law_from_json(json const& j) {
  if (!j.is_object() || !j.contains("pairs")) throw DomainError("JointLaw JSON needs \"pairs\"");
  JointLaw law;
  for (auto const& row : j.at("pairs")) {
    if (!row.is_array() || row.size() != 3) throw DomainError("JointLaw pair must be [y, ys, prob]");
    law.pairs.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
  }
  return law;
}

FinitePmf enumerate_law(ProcessConfig const& cfg) {
  validate(cfg);
  if (auto law = series_law(cfg)) return *law;
  return discrete_joint(cfg, false).marginal(joint_total(cfg, false));
}

JointLaw enumerate_coupling(ProcessConfig const& cfg) {
  validate(cfg);
  if (auto law = series_law(cfg)) {
    // Y^s = Y + Z^s with Z^s independent of Y.
    FinitePmf const zs = std::holds_alternative<Poisson>(cfg)
                             ? FinitePmf::point_mass(1.0)
                             : size_bias_pmf(std::get<FinitePmf>(std::get<CompoundPoisson>(cfg).claims));
    std::map<std::pair<double, double>, CompensatedSum> cells;
    for (std::size_t i = 0; i < law->size(); ++i) {
      for (std::size_t k = 0; k < zs.size(); ++k) {
        double const y = law->atoms()[i];
        cells[{y, canonical_atom(y + zs.atoms()[k])}].add(law->probs()[i] * zs.probs()[k]);
      }
    }
    JointLaw out;
    for (auto const& [key, sum] : cells) out.pairs.push_back({key.first, key.second, sum.value()});
    return out;
  }
  return discrete_joint(cfg, true).finish(joint_total(cfg, true));
}

FinitePmf poisson_truncated_pmf(double lambda, double eps) {
  if (!(lambda > 0.0 && lambda <= 500.0)) {
    throw DomainError("poisson_truncated_pmf: lambda must lie in (0, 500]");
  }
  if (!(eps > 0.0 && eps <= 1e-10)) throw DomainError("poisson_truncated_pmf: need 0 < eps <= 1e-10");
  std::vector<std::pair<double, double>> pairs;
  double p = std::exp(-lambda);
  for (int k = 0;; ++k) {
    pairs.emplace_back(k, p);
    // For k + 2 > lambda the tail past k is dominated by a geometric series
    // with ratio lambda / (k + 2).
    double const next = p * lambda / (k + 1.0);
    if (k + 2.0 > lambda) {
      double const tail_bound = next / (1.0 - lambda / (k + 2.0));
      if (tail_bound < eps) break;
    }
    p = next;
  }
  return FinitePmf::normalized(std::move(pairs));
}

FinitePmf compound_truncated_pmf(double lambda, FinitePmf const& z, double eps) {
  if (z.min_atom() < 0.0) throw DomainError("compound_truncated_pmf: claims must be >= 0");
  auto const weights = poisson_truncated_pmf(lambda, eps);
  std::map<double, CompensatedSum> total;
  std::map<double, double> power = {{0.0, 1.0}};  // law of Z_1 + ... + Z_k
  for (std::size_t k = 0; k < weights.size(); ++k) {
    double const wk = weights.probs()[k];
    for (auto const& [x, p] : power) total[x].add(wk * p);
    if (k + 1 == weights.size()) break;
    std::map<double, CompensatedSum> next;
    for (auto const& [x, p] : power) {
      for (std::size_t i = 0; i < z.size(); ++i) {
        next[canonical_atom(x + z.atoms()[i])].add(p * z.probs()[i]);
      }
    }
    if (next.size() > 1000000) throw DomainError("compound_truncated_pmf: support too large");
    power.clear();
    for (auto const& [x, s] : next) power[x] = s.value();
  }
  std::vector<std::pair<double, double>> pairs;
  for (auto const& [x, s] : total) pairs.emplace_back(x, s.value());
  return FinitePmf::normalized(std::move(pairs));
}

}  // namespace sblab
