#include "sblab/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sblab/numerics.hpp"

namespace sblab {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double factorial(int k) { return std::tgamma(k + 1.0); }

void require(bool ok, std::string const& message) {
  if (!ok) throw ConfigError(message);
}

bool is_permutation_of_1_to(std::span<int const> values, int m) {
  if (static_cast<int>(values.size()) != m) return false;
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int const v : values) {
    if (v < 1 || v > m || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// JSON field access with ConfigError on missing or mistyped values.
template <class T>
T field(json const& j, char const* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing parameter '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (json::exception const&) {
    throw ConfigError(std::string("parameter '") + key + "' has the wrong type");
  }
}

template <class T>
T field_or(json const& j, char const* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return field<T>(j, key);
}

int int_field(json const& j, char const* key) {
  auto const& v = j.contains(key) ? j.at(key) : json();
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    double const x = v.get<double>();
    if (x == std::floor(x) && std::fabs(x) < 2e9) return static_cast<int>(x);
  }
  if (v.is_null()) throw ConfigError(std::string("missing parameter '") + key + "'");
  throw ConfigError(std::string("parameter '") + key + "' must be an integer");
}

int int_field_or(json const& j, char const* key, int fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return int_field(j, key);
}

void reject_unknown_keys(json const& j, std::set<std::string> const& allowed) {
  for (auto const& [key, value] : j.items()) {
    if (key != "process" && !allowed.contains(key)) {
      throw ConfigError("unknown parameter '" + key + "'");
    }
  }
}

ProcessInfo thm_main_info(std::string name, double mu, double sigma2, double C, bool monotone,
                          bool left, BoundFamily family = BoundFamily::kThmMain) {
  ProcessInfo info;
  info.name = std::move(name);
  info.moments = {mu, sigma2};
  info.coupling_bound = C;
  info.monotone = monotone;
  info.family = family;
  info.supports_left_tail = left;
  if (sigma2 > 0.0) info.bound_params = make_bound_params(mu, sigma2, C, left, family);
  return info;
}

}  // namespace

std::string to_string(CoverageTarget target) {
  return target == CoverageTarget::kVolume ? "volume" : "nonisolated";
}

CoverageTarget coverage_target_from_string(std::string const& text) {
  if (text == "volume") return CoverageTarget::kVolume;
  if (text == "nonisolated") return CoverageTarget::kNonisolated;
  throw ConfigError("coverage target must be 'volume' or 'nonisolated', got '" + text + "'");
}

std::string process_name(ProcessConfig const& cfg) {
  return std::visit(Overloaded{
                        [](PermPattern const&) { return "perm"; },
                        [](Runs const&) { return "runs"; },
                        [](Extrema const&) { return "extrema"; },
                        [](UrnUniform const&) { return "urn"; },
                        [](Lightbulb const&) { return "lightbulb"; },
                        [](GraphIso const&) { return "graph"; },
                        [](Coverage const&) { return "coverage"; },
                        [](CompoundPoisson const&) { return "cpoisson"; },
                        [](Poisson const&) { return "poisson"; },
                    },
                    cfg);
}

std::vector<std::string> process_names() {
  return {"perm", "runs", "extrema", "urn", "lightbulb", "graph", "coverage", "cpoisson", "poisson"};
}

void validate(ProcessConfig const& cfg) {
  std::visit(
      Overloaded{
          [](PermPattern const& c) {
            int const m = static_cast<int>(c.tau.size());
            require(m >= 3, "perm: tau must have length m >= 3");
            require(c.n >= m, "perm: need n >= m");
            require(is_permutation_of_1_to(c.tau, m), "perm: tau must be a permutation of 1..m");
          },
          [](Runs const& c) {
            require(c.m >= 1, "runs: m must be >= 1");
            require(c.n >= c.m, "runs: need n >= m");
            require(c.p > 0.0 && c.p < 1.0, "runs: p must lie in (0,1)");
          },
          [](Extrema const& c) {
            require(c.n >= 5, "extrema: lattice side n must be >= 5");
            require(c.dim >= 1, "extrema: dim must be >= 1");
            require(std::pow(static_cast<double>(c.n), c.dim) <= 1 << 24,
                    "extrema: lattice larger than 2^24 vertices");
          },
          [](UrnUniform const& c) {
            require(c.n >= 2, "urn: n must be >= 2");
            require(c.m >= 2, "urn: m must be >= 2");
            if (!c.probs.empty()) {
              require(static_cast<int>(c.probs.size()) == c.m, "urn: probs must have m entries");
              double total = 0.0;
              for (double const p : c.probs) {
                require(p > 0.0 && p < 1.0, "urn: probs must lie in (0,1)");
                total += p;
              }
              require(std::fabs(total - 1.0) <= 1e-9, "urn: probs must sum to 1");
            }
          },
          [](Lightbulb const& c) { require(c.n >= 2, "lightbulb: n must be >= 2"); },
          [](GraphIso const& c) {
            require(c.n >= 2, "graph: n must be >= 2");
            require(c.p > 0.0 && c.p < 1.0, "graph: p must lie in (0,1)");
          },
          [](Coverage const& c) {
            require(c.n >= 4, "coverage: n must be >= 4");
            require(c.rho > 0.0 && std::isfinite(c.rho), "coverage: rho must be > 0");
            require(c.d >= 1 && c.d <= 3, "coverage: d must be 1, 2 or 3");
            require(c.kappa_d >= 0, "coverage: kappa_d must be >= 0");
            require(c.volume_points >= 0, "coverage: volume_points must be >= 0");
            require(unit_ball_volume(c.d) * std::pow(c.rho, c.d) < c.n,
                    "coverage: ball volume must be below torus volume n");
          },
          [](CompoundPoisson const& c) {
            require(c.lambda > 0.0 && std::isfinite(c.lambda), "cpoisson: lambda must be > 0");
            std::visit(Overloaded{
                           [](GammaClaims const& g) {
                             require(g.alpha > 0.0 && g.beta > 0.0,
                                     "cpoisson: gamma claims need alpha, beta > 0");
                             require(g.M > 1.0, "cpoisson: M must be > 1");
                           },
                           [](FinitePmf const& z) {
                             require(z.min_atom() >= 0.0, "cpoisson: claims must be >= 0");
                             require(pmf_moments(z).mean > 0.0,
                                     "cpoisson: claim mean must be positive");
                           },
                       },
                       c.claims);
            if (c.gamma) require(*c.gamma > 0.0, "cpoisson: gamma must be > 0");
          },
          [](Poisson const& c) {
            require(c.lambda > 0.0 && std::isfinite(c.lambda), "poisson: lambda must be > 0");
          },
      },
      cfg);
}

ProcessConfig process_config_from_json(json const& j) {
  if (!j.is_object()) throw ConfigError("process config must be a JSON object");
  auto const name = field<std::string>(j, "process");
  ProcessConfig cfg;
  if (name == "perm") {
    reject_unknown_keys(j, {"n", "tau"});
    cfg = PermPattern{int_field(j, "n"), field<std::vector<int>>(j, "tau")};
  } else if (name == "runs") {
    reject_unknown_keys(j, {"n", "m", "p"});
    cfg = Runs{int_field(j, "n"), int_field(j, "m"), field<double>(j, "p")};
  } else if (name == "extrema") {
    reject_unknown_keys(j, {"n", "dim"});
    cfg = Extrema{int_field(j, "n"), int_field_or(j, "dim", 1)};
  } else if (name == "urn") {
    reject_unknown_keys(j, {"n", "m", "probs"});
    cfg = UrnUniform{int_field(j, "n"), int_field(j, "m"),
                     field_or<std::vector<double>>(j, "probs", {})};
  } else if (name == "lightbulb") {
    reject_unknown_keys(j, {"n"});
    cfg = Lightbulb{int_field(j, "n")};
  } else if (name == "graph") {
    reject_unknown_keys(j, {"n", "p"});
    cfg = GraphIso{int_field(j, "n"), field<double>(j, "p")};
  } else if (name == "coverage") {
    reject_unknown_keys(j, {"n", "rho", "d", "kappa_d", "target", "volume_points"});
    Coverage c;
    c.n = int_field(j, "n");
    c.rho = field<double>(j, "rho");
    c.d = int_field_or(j, "d", 1);
    c.kappa_d = int_field_or(j, "kappa_d", 0);
    c.target = coverage_target_from_string(field_or<std::string>(j, "target", "volume"));
    c.volume_points = field_or<long>(j, "volume_points", 0);
    cfg = c;
  } else if (name == "cpoisson") {
    reject_unknown_keys(j, {"lambda", "claims", "gamma"});
    CompoundPoisson c;
    c.lambda = field<double>(j, "lambda");
    auto const claims = field<json>(j, "claims");
    auto const type = field<std::string>(claims, "type");
    if (type == "gamma") {
      reject_unknown_keys(claims, {"type", "alpha", "beta", "M"});
      c.claims = GammaClaims{field<double>(claims, "alpha"), field<double>(claims, "beta"),
                             field_or<double>(claims, "M", 2.0)};
    } else if (type == "pmf") {
      reject_unknown_keys(claims, {"type", "atoms", "probs"});
      try {
        c.claims = pmf_from_json(claims);
      } catch (DomainError const& e) {
        throw ConfigError(std::string("cpoisson claims: ") + e.what());
      }
    } else {
      throw ConfigError("cpoisson: claims type must be 'gamma' or 'pmf'");
    }
    if (j.contains("gamma") && !j.at("gamma").is_null()) c.gamma = field<double>(j, "gamma");
    cfg = c;
  } else if (name == "poisson") {
    reject_unknown_keys(j, {"lambda"});
    cfg = Poisson{field<double>(j, "lambda")};
  } else {
    throw ConfigError("unknown process '" + name + "'");
  }
  validate(cfg);
  return cfg;
}

json process_config_to_json(ProcessConfig const& cfg) {
  json j = std::visit(
      Overloaded{
          [](PermPattern const& c) { return json{{"n", c.n}, {"tau", c.tau}}; },
          [](Runs const& c) { return json{{"n", c.n}, {"m", c.m}, {"p", c.p}}; },
          [](Extrema const& c) { return json{{"n", c.n}, {"dim", c.dim}}; },
          [](UrnUniform const& c) {
            json out{{"n", c.n}, {"m", c.m}};
            if (!c.probs.empty()) out["probs"] = c.probs;
            return out;
          },
          [](Lightbulb const& c) { return json{{"n", c.n}}; },
          [](GraphIso const& c) { return json{{"n", c.n}, {"p", c.p}}; },
          [](Coverage const& c) {
            return json{{"n", c.n},
                        {"rho", c.rho},
                        {"d", c.d},
                        {"kappa_d", c.kappa_d},
                        {"target", to_string(c.target)},
                        {"volume_points", c.volume_points}};
          },
          [](CompoundPoisson const& c) {
            json out{{"lambda", c.lambda}};
            std::visit(Overloaded{
                           [&](GammaClaims const& g) {
                             out["claims"] = {{"type", "gamma"},
                                              {"alpha", g.alpha},
                                              {"beta", g.beta},
                                              {"M", g.M}};
                           },
                           [&](FinitePmf const& z) {
                             json claims = z;
                             claims["type"] = "pmf";
                             out["claims"] = claims;
                           },
                       },
                       c.claims);
            if (c.gamma) out["gamma"] = *c.gamma;
            return out;
          },
          [](Poisson const& c) { return json{{"lambda", c.lambda}}; },
      },
      cfg);
  j["process"] = process_name(cfg);
  return j;
}

// ---------------------------------------------------------------------------
// Parameters

double ProcessInfo::sigma() const { return std::sqrt(std::max(moments.variance, 0.0)); }

std::vector<int> perm_overlap_indicators(std::span<int const> tau) {
  int const m = static_cast<int>(tau.size());
  std::vector<int> I(m, 0);
  for (int k = 0; k < m; ++k) {
    bool same = true;
    int const len = m - k;
    for (int a = 0; a < len && same; ++a) {
      for (int b = a + 1; b < len && same; ++b) {
        same = (tau[a] < tau[b]) == (tau[a + k] < tau[b + k]);
      }
    }
    I[k] = same ? 1 : 0;
  }
  return I;
}

ProcessInfo perm_params(PermPattern const& cfg) {
  validate(cfg);
  int const m = static_cast<int>(cfg.tau.size());
  if (cfg.n < 2 * m) throw ConfigError("perm: variance formula needs n >= 2m");
  double const mf = factorial(m);
  auto const I = perm_overlap_indicators(cfg.tau);
  double overlap = 0.0;
  for (int k = 1; k < m; ++k) overlap += I[k] / factorial(m + k);
  double const n = cfg.n;
  double const sigma2 = n * ((1.0 / mf) * (1.0 - (2.0 * m - 1.0) / mf) + 2.0 * overlap);
  auto info = thm_main_info("perm", n / mf, sigma2, 2.0 * m - 1.0, false, false);
  info.coupling_exact = true;
  info.has_coupled_sampler = true;
  return info;
}

ProcessInfo runs_params(Runs const& cfg) {
  validate(cfg);
  if (cfg.n < 2 * cfg.m) throw ConfigError("runs: variance formula needs n >= 2m");
  double const pm = std::pow(cfg.p, cfg.m);
  double const mu = cfg.n * pm;
  double const sigma2 =
      mu * (1.0 + 2.0 * (cfg.p - pm) / (1.0 - cfg.p) - (2.0 * cfg.m - 1.0) * pm);
  auto info = thm_main_info("runs", mu, sigma2, 2.0 * cfg.m - 1.0, true, true);
  info.coupling_exact = true;
  info.has_coupled_sampler = true;
  return info;
}

ProcessInfo extrema_params(Extrema const& cfg, bool assume_monotone) {
  validate(cfg);
  double const N = std::pow(static_cast<double>(cfg.n), cfg.dim);
  double const p = cfg.dim;
  double const mu = N / (2.0 * p + 1.0);
  double const sigma2 =
      N * (4.0 * p * p - p - 1.0) / ((2.0 * p + 1.0) * (2.0 * p + 1.0) * (4.0 * p + 1.0));
  auto info = thm_main_info("extrema", mu, sigma2, 2.0 * p * p + 2.0 * p + 1.0,
                            assume_monotone, assume_monotone);
  info.left_tail_assumed = assume_monotone;
  info.coupling_exact = true;
  info.has_coupled_sampler = true;
  return info;
}

Moments urn_uniform_moments(int n, int m) {
  double const q1 = 1.0 - 1.0 / m;
  double const q2 = 1.0 - 2.0 / m;
  double const mu = n * (1.0 - pow0(q1, n - 1));
  double const sigma2 = n * pow0(q1, n - 1) +
                        (m - 1.0) * n * (n - 1.0) / m * pow0(q2, n - 2) -
                        static_cast<double>(n) * n * pow0(q1, 2L * n - 2);
  return {mu, std::max(sigma2, 0.0)};
}

Moments urn_general_moments(int n, std::span<double const> probs) {
  CompensatedSum mean_one;
  for (double const p : probs) mean_one.add(p * (1.0 - pow0(1.0 - p, n - 1)));
  // P(balls 1 and 2 both non-isolated): same urn always; different urns u, v
  // need another ball in each of u and v.
  CompensatedSum both;
  for (std::size_t u = 0; u < probs.size(); ++u) {
    both.add(probs[u] * probs[u]);
    for (std::size_t v = 0; v < probs.size(); ++v) {
      if (u == v) continue;
      double const pu = probs[u], pv = probs[v];
      double const joint = 1.0 - pow0(1.0 - pu, n - 2) - pow0(1.0 - pv, n - 2) +
                           pow0(std::max(1.0 - pu - pv, 0.0), n - 2);
      both.add(pu * pv * joint);
    }
  }
  double const mu = n * mean_one.value();
  double const sigma2 = mu + n * (n - 1.0) * both.value() - mu * mu;
  return {mu, std::max(sigma2, 0.0)};
}

std::vector<double> urn_move_probabilities(int n, int m) {
  if (n < 2 || m < 2) throw DomainError("urn_move_probabilities: need n, m >= 2");
  int const trials = n - 1;
  double const q = 1.0 / m;
  // ratio[k] = P(N > k) / P(N = k) for N ~ Bin(n-1, q), by the backward
  // recursion ratio[k] = (P(N=k+1)/P(N=k)) (1 + ratio[k+1]).
  std::vector<double> ratio(n, 0.0);
  for (int k = trials - 1; k >= 0; --k) {
    double const step = (trials - k) / (k + 1.0) * q / (1.0 - q);
    ratio[k] = step * (1.0 + ratio[k + 1]);
  }
  double const log_p0 = trials * std::log1p(-q);
  double const odds0 = std::exp(log_p0) / -std::expm1(log_p0);  // P0 / (1 - P0)
  std::vector<double> pi(n, 0.0);
  for (int k = 0; k < trials; ++k) {
    double const value = ratio[k] * odds0 / (1.0 - static_cast<double>(k) / trials);
    if (!(value >= -1e-9 && value <= 1.0 + 1e-9)) {
      throw std::logic_error("urn_move_probabilities: pi_" + std::to_string(k) +
                             " outside [0,1]");
    }
    pi[k] = std::clamp(value, 0.0, 1.0);
  }
  pi[trials] = 0.0;
  return pi;
}

ProcessInfo urn_params(UrnUniform const& cfg) {
  validate(cfg);
  if (cfg.probs.empty()) {
    auto const mom = urn_uniform_moments(cfg.n, cfg.m);
    auto info = thm_main_info("urn", mom.mean, mom.variance, 2.0, false, false);
    info.coupling_exact = true;
    info.has_coupled_sampler = true;
    return info;
  }
  auto const mom = urn_general_moments(cfg.n, cfg.probs);
  ProcessInfo info;
  info.name = "urn";
  info.moments = mom;
  info.coupling_bound = 2.0;
  info.family = BoundFamily::kUrnNonuniform;
  info.urn_nonuniform = urn_nonuniform_constants(cfg.n, cfg.probs);
  return info;
}

Moments lightbulb_moments(int n) {
  double const nd = n;
  double prod1 = 1.0, prod2 = 1.0;
  for (int i = 1; i <= n; ++i) {
    prod1 *= 1.0 - 2.0 * i / nd;
    prod2 *= 1.0 - 4.0 * i / nd + 4.0 * i * (i - 1.0) / (nd * (nd - 1.0));
  }
  double const mu = nd / 2.0 * (1.0 - prod1);
  double const sigma2 = nd / 4.0 * (1.0 - prod2) + nd * nd / 4.0 * (prod2 - prod1 * prod1);
  return {mu, std::max(sigma2, 0.0)};
}

ProcessInfo lightbulb_params(Lightbulb const& cfg) {
  validate(cfg);
  auto const mom = lightbulb_moments(cfg.n);
  auto info = thm_main_info("lightbulb", mom.mean, mom.variance, 2.0, true, true);
  bool const even = cfg.n % 2 == 0;
  info.coupling_exact = even;
  info.has_coupled_sampler = even;
  if (!even && mom.variance > 0.0) info.t_shift = 2.0 / std::sqrt(mom.variance);
  return info;
}

ProcessInfo graph_params(GraphIso const& cfg) {
  validate(cfg);
  auto const ctx = GraphBoundCtx::make(cfg.n, cfg.p);
  ProcessInfo info;
  info.name = "graph";
  info.moments = {ctx.mu, ctx.sigma2};
  info.monotone = true;
  info.family = BoundFamily::kGraph;
  info.supports_left_tail = true;
  info.coupling_exact = true;
  info.has_coupled_sampler = true;
  info.graph = ctx;
  return info;
}

ProcessInfo coverage_params(Coverage const& cfg, bool assume_monotone) {
  validate(cfg);
  auto const ctx = CoverageCtx::make(cfg.n, cfg.rho, cfg.d, cfg.kappa_d);
  auto const mom = coverage_moments(ctx);
  double mu, sigma2, C;
  if (cfg.target == CoverageTarget::kVolume) {
    mu = mom.mu_V;
    sigma2 = mom.sigma2_V;
    C = ctx.phi;
  } else {
    if (ctx.kappa_d <= 0) throw ConfigError("coverage: kappa_d is required for d >= 2");
    mu = cfg.n - mom.mu_S;
    sigma2 = mom.sigma2_S;
    C = ctx.kappa_d + 1.0;
  }
  auto info = thm_main_info("coverage", mu, sigma2, C, assume_monotone, assume_monotone,
                            BoundFamily::kCoverage);
  info.left_tail_assumed = assume_monotone;
  return info;
}

ProcessInfo compound_poisson_params(CompoundPoisson const& cfg) {
  validate(cfg);
  double ez = 0.0, ez2 = 0.0, nu = 0.0, C_x = 0.0, gamma = 0.0;
  std::visit(Overloaded{
                 [&](GammaClaims const& g) {
                   ez = g.alpha * g.beta;
                   ez2 = g.alpha * (g.alpha + 1.0) * g.beta * g.beta;
                   nu = (g.alpha + 1.0) * g.beta;
                   gamma = 1.0 / (g.M * g.beta);
                   C_x = nu * std::pow(g.M / (g.M - 1.0), g.alpha + 2.0);
                 },
                 [&](FinitePmf const& z) {
                   auto const mom = pmf_moments(z);
                   ez = mom.mean;
                   ez2 = mom.variance + mom.mean * mom.mean;
                   nu = ez2 / ez;
                   gamma = cfg.gamma ? *cfg.gamma : 1.0 / z.max_atom();
                   auto const zs = size_bias_pmf(z);
                   CompensatedSum cx;
                   for (std::size_t i = 0; i < zs.size(); ++i) {
                     cx.add(zs.atoms()[i] * std::exp(gamma * zs.atoms()[i]) * zs.probs()[i]);
                   }
                   C_x = cx.value();
                 },
             },
             cfg.claims);
  ProcessInfo info;
  info.name = "cpoisson";
  info.moments = {cfg.lambda * ez, cfg.lambda * ez2};
  info.monotone = true;
  info.family = BoundFamily::kInfDiv;
  info.supports_left_tail = true;
  info.coupling_exact = true;
  info.has_coupled_sampler = true;
  info.infdiv = InfDivCtx::make(info.moments.mean, info.moments.variance, nu, C_x, gamma);
  return info;
}

ProcessInfo poisson_params(Poisson const& cfg) {
  validate(cfg);
  auto info = thm_main_info("poisson", cfg.lambda, cfg.lambda, 1.0, true, true,
                            BoundFamily::kPoisson);
  info.coupling_exact = true;
  info.has_coupled_sampler = true;
  return info;
}

ProcessInfo process_info(ProcessConfig const& cfg, bool assume_monotone) {
  return std::visit(Overloaded{
                        [](PermPattern const& c) { return perm_params(c); },
                        [](Runs const& c) { return runs_params(c); },
                        [&](Extrema const& c) { return extrema_params(c, assume_monotone); },
                        [](UrnUniform const& c) { return urn_params(c); },
                        [](Lightbulb const& c) { return lightbulb_params(c); },
                        [](GraphIso const& c) { return graph_params(c); },
                        [&](Coverage const& c) { return coverage_params(c, assume_monotone); },
                        [](CompoundPoisson const& c) { return compound_poisson_params(c); },
                        [](Poisson const& c) { return poisson_params(c); },
                    },
                    cfg);
}

BoundValues evaluate_bounds(ProcessInfo const& info, double t) {
  if (!(t >= 0.0)) throw DomainError("evaluate_bounds: t must be >= 0");
  BoundValues out;
  if (!(info.moments.variance > 0.0)) {
    out.right = 1.0;
    if (info.supports_left_tail) out.left = 1.0;
    return out;
  }
  double const ts = std::max(t - info.t_shift, 0.0);
  switch (info.family) {
    case BoundFamily::kThmMain:
    case BoundFamily::kCoverage:
      out.right = bound_right(*info.bound_params, ts);
      if (info.supports_left_tail) out.left = bound_left_monotone(*info.bound_params, ts);
      break;
    case BoundFamily::kPoisson: {
      auto const pair = poisson_bounds(info.moments.mean, ts);
      out.right = pair.right;
      out.left = pair.left;
      break;
    }
    case BoundFamily::kUrnNonuniform:
      if (info.urn_nonuniform && info.urn_nonuniform->valid) {
        out.right = bound_right_from_AB(info.urn_nonuniform->A, info.urn_nonuniform->B, ts);
      }
      break;
    case BoundFamily::kGraph:
      out.right = graph_right_tail(*info.graph, ts);
      out.left = graph_left_tail(*info.graph, ts);
      break;
    case BoundFamily::kInfDiv: {
      auto const pair = infdiv_bounds(*info.infdiv, ts);
      out.right = pair.right;
      out.left = pair.left;
      break;
    }
  }
  return out;
}

}  // namespace sblab
