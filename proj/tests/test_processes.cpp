#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "sblab/oracle.hpp"
#include "sblab/processes.hpp"

using namespace sblab;

namespace {

RngStream test_rng(std::uint64_t i) { return RngStream(42, stream_id_for(StreamPurpose::kTest, i)); }

}  // namespace

// --- coupling helpers --------------------------------------------------------

TEST(ChooseIndex, Degenerate) {
  auto rng = test_rng(1);
  std::vector<double> const w{1.0, 0.0, 0.0};
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(choose_index(w, rng), 0u);
  EXPECT_THROW(choose_index(std::vector<double>{0.0, 0.0}, rng), DomainError);
}

TEST(ChooseIndex, UniformFrequencies) {
  auto rng = test_rng(2);
  int const n = 7;
  long const N = 1000000;
  std::vector<double> const w(n, 2.5);
  IndexChooser const chooser(w);
  std::vector<long> hits(n, 0);
  for (long i = 0; i < N; ++i) ++hits[chooser(rng)];
  double const p = 1.0 / n;
  double const se = std::sqrt(p * (1 - p) / N);
  for (long h : hits) EXPECT_NEAR(static_cast<double>(h) / N, p, 4 * se);
}

TEST(ChooseIndex, WeightedFrequencies) {
  auto rng = test_rng(3);
  long const N = 200000;
  std::vector<double> const w{1.0, 3.0};
  long ones = 0;
  for (long i = 0; i < N; ++i) ones += choose_index(w, rng) == 1;
  double const se = std::sqrt(0.75 * 0.25 / N);
  EXPECT_NEAR(static_cast<double>(ones) / N, 0.75, 4 * se);
}

TEST(LocalDependence, RunsFootprintIsExhaustive) {
  // Every single-window rebias of runs n=6, m=2 changes only summands in
  // the footprint, and the footprint size is at most b = 2m - 1.
  RunsCounter const rc(6, 2);
  auto const& dep = rc.dependence();
  EXPECT_EQ(dep.max_footprint(), 3u);
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<std::uint8_t> xi(6);
    for (int i = 0; i < 6; ++i) xi[i] = (mask >> i) & 1;
    for (std::size_t alpha = 0; alpha < 6; ++alpha) {
      auto rng = test_rng(4);
      auto const out = local_dependence_bias<std::uint8_t>(
          xi, alpha, dep, [](RngStream&, std::span<std::uint8_t> v) { std::fill(v.begin(), v.end(), 1); },
          [](std::uint8_t v) { return v <= 1; }, rng);
      auto const fp = dep.footprint(alpha);
      for (std::size_t beta = 0; beta < 6; ++beta) {
        bool const changed = rc.at(out, static_cast<int>(beta)) != rc.at(xi, static_cast<int>(beta));
        if (changed) EXPECT_TRUE(std::find(fp.begin(), fp.end(), beta) != fp.end());
      }
      for (std::size_t site = 0; site < 6; ++site) {
        auto const w = dep.window(alpha);
        if (std::find(w.begin(), w.end(), site) == w.end()) EXPECT_EQ(out[site], xi[site]);
      }
      double const delta = footprint_delta<std::uint8_t>(
          xi, out, fp, [&](std::size_t b, std::span<std::uint8_t const> c) {
            return rc.at(c, static_cast<int>(b)) ? 1.0 : 0.0;
          });
      EXPECT_EQ(delta, rc.count(out) - rc.count(xi));
    }
  }
}

TEST(LocalDependence, SupportViolationRejected) {
  RunsCounter const rc(6, 2);
  auto rng = test_rng(5);
  std::vector<std::uint8_t> const xi(6, 0);
  EXPECT_THROW(local_dependence_bias<std::uint8_t>(
                   xi, 0, rc.dependence(),
                   [](RngStream&, std::span<std::uint8_t> v) { std::fill(v.begin(), v.end(), 2); },
                   [](std::uint8_t v) { return v <= 1; }, rng),
               SupportError);
}

TEST(Audit, PoissonCharacterization) {
  struct Worker {
    std::unique_ptr<ProcessSampler> s;
    CoupledPair operator()(RngStream& rng) { return s->sample_coupled(rng); }
  };
  AuditOptions opt;
  opt.samples = 100000;
  opt.seed = 9;
  opt.mu = 3.0;
  opt.coupling_bound = 1.0;
  opt.expect_monotone = true;
  auto const audit = audit_characterization([] { return Worker{make_sampler(Poisson{3.0})}; }, opt,
                                            default_test_functions(3.0));
  EXPECT_TRUE(audit.passed());
  EXPECT_EQ(audit.monotone_violations, 0u);
  EXPECT_EQ(audit.min_diff, 1.0);
  EXPECT_EQ(audit.max_diff, 1.0);
  ASSERT_EQ(audit.char_residuals.size(), 4u);
  EXPECT_EQ(audit.char_residuals[0].name, "one");
}

TEST(Audit, DetectsWrongCoupling) {
  // Y^s = Y + 2 is not a size-bias coupling of Poisson(3).
  struct Worker {
    std::unique_ptr<ProcessSampler> s;
    CoupledPair operator()(RngStream& rng) {
      auto p = s->sample_coupled(rng);
      return {p.y, p.y_s + 1.0};
    }
  };
  AuditOptions opt;
  opt.samples = 100000;
  opt.seed = 9;
  opt.mu = 3.0;
  auto const audit = audit_characterization([] { return Worker{make_sampler(Poisson{3.0})}; }, opt,
                                            default_test_functions(3.0));
  EXPECT_FALSE(audit.characterization_ok());
}

// --- statistics ----------------------------------------------------------------

TEST(PermPattern, Counts) {
  std::vector<int> const id6{1, 2, 3, 4, 5, 6};
  std::vector<int> const id3{1, 2, 3};
  EXPECT_EQ(perm_statistic(id6, id3), 4);
  EXPECT_EQ(perm_statistic(std::vector<int>{6, 5, 4, 3, 2, 1}, id3), 0);
  EXPECT_EQ(perm_statistic(std::vector<int>{2, 1, 3, 4, 5, 6}, id3), 3);
  EXPECT_THROW(perm_statistic(std::vector<int>{1, 1, 3, 4, 5, 6}, id3), DomainError);
}

TEST(PermPattern, RebiasExample) {
  PermPatternCounter const pc(6, {1, 2, 3});
  std::vector<int> pi{2, 1, 3, 4, 5, 6};
  EXPECT_EQ(pc.count(pi), 3);
  pc.rebias(pi, 0);
  EXPECT_EQ(pi, (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(pc.count(pi), 4);
  std::vector<int> already{1, 2, 3, 6, 5, 4};
  auto const copy = already;
  pc.rebias(already, 0);
  EXPECT_EQ(already, copy);
}

TEST(PermPattern, Params) {
  auto const info = perm_params(PermPattern{6, {1, 2, 3}});
  EXPECT_NEAR(info.moments.mean, 1.0, 1e-15);
  EXPECT_NEAR(info.moments.variance, 23.0 / 30.0, 1e-14);
  EXPECT_EQ(*info.coupling_bound, 5.0);
  EXPECT_FALSE(info.supports_left_tail);
  for (int n : {6, 10, 20}) {
    auto const i2 = perm_params(PermPattern{n, {1, 2, 3}});
    EXPECT_GE(i2.moments.variance, n / 6.0 * (1 - 5.0 / 6.0) - 1e-12);
  }
  EXPECT_THROW(perm_params(PermPattern{5, {1, 2, 3}}), ConfigError);
  EXPECT_THROW(validate(PermPattern{6, {1, 2}}), ConfigError);
}

TEST(PermPattern, OverlapIndicators) {
  auto const id = perm_overlap_indicators(std::vector<int>{1, 2, 3});
  EXPECT_EQ(id, (std::vector<int>{1, 1, 1}));
  auto const other = perm_overlap_indicators(std::vector<int>{1, 3, 2});
  EXPECT_EQ(other[2], 1);  // singletons always share a relative order
}

TEST(Runs, PairExample) {
  RunsCounter const rc(4, 2);
  std::vector<std::uint8_t> xi{1, 0, 1, 0};
  EXPECT_EQ(rc.count(xi), 0);
  xi[1] = xi[2] = 1;
  EXPECT_EQ(rc.count(xi), 2);
}

TEST(Runs, Params) {
  auto const info = runs_params(Runs{4, 2, 0.5});
  EXPECT_NEAR(info.moments.mean, 1.0, 1e-15);
  EXPECT_NEAR(info.moments.variance, 1.25, 1e-14);
  EXPECT_EQ(*info.coupling_bound, 3.0);
  EXPECT_TRUE(info.monotone);
  EXPECT_THROW(validate(Runs{4, 2, 1.0}), ConfigError);
  EXPECT_THROW(validate(Runs{4, 2, 0.0}), ConfigError);
}

TEST(Extrema, Params) {
  for (int n : {5, 6, 7}) {
    auto const info = extrema_params(Extrema{n, 1});
    EXPECT_NEAR(info.moments.mean, n / 3.0, 1e-14);
    EXPECT_NEAR(info.moments.variance, 2.0 * n / 45.0, 1e-14);
    EXPECT_EQ(*info.coupling_bound, 5.0);
    EXPECT_FALSE(info.supports_left_tail);
  }
  EXPECT_TRUE(extrema_params(Extrema{6, 1}, true).supports_left_tail);
  EXPECT_EQ(*extrema_params(Extrema{6, 2}).coupling_bound, 13.0);
  EXPECT_THROW(validate(Extrema{4, 1}), ConfigError);
}

TEST(Urn, MoveProbabilities) {
  auto const pi = urn_move_probabilities(2, 2);
  ASSERT_EQ(pi.size(), 2u);
  EXPECT_NEAR(pi[0], 1.0, 1e-15);
  EXPECT_EQ(pi[1], 0.0);
  for (int n : {3, 10, 100}) {
    for (int m : {2, 5, 30}) {
      auto const p = urn_move_probabilities(n, m);
      EXPECT_NEAR(p[0], 1.0, 1e-12);
      for (double v : p) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST(Urn, Params) {
  auto const m = urn_uniform_moments(2, 2);
  EXPECT_NEAR(m.mean, 1.0, 1e-15);
  EXPECT_NEAR(m.variance, 1.0, 1e-15);
  auto const info = urn_params(UrnUniform{10, 4, {}});
  EXPECT_EQ(*info.coupling_bound, 2.0);
  EXPECT_FALSE(info.supports_left_tail);
  EXPECT_TRUE(info.has_coupled_sampler);
  // General moments reduce to the uniform ones.
  std::vector<double> const uni(4, 0.25);
  auto const g = urn_general_moments(10, uni);
  auto const u = urn_uniform_moments(10, 4);
  EXPECT_NEAR(g.mean, u.mean, 1e-12);
  EXPECT_NEAR(g.variance, u.variance, 1e-10);
  auto const nonuni = urn_params(UrnUniform{10, 3, {0.5, 0.3, 0.2}});
  EXPECT_FALSE(nonuni.has_coupled_sampler);
  EXPECT_THROW(validate(UrnUniform{10, 3, {0.5, 0.3}}), ConfigError);
}

TEST(Urn, GeneralMomentsMatchSimulation) {
  UrnUniform const cfg{12, 3, {0.5, 0.3, 0.2}};
  auto const mom = urn_general_moments(12, cfg.probs);
  auto sampler = make_sampler(cfg);
  auto rng = test_rng(6);
  long const N = 200000;
  double s = 0, s2 = 0;
  for (long i = 0; i < N; ++i) {
    double const y = sampler->sample(rng);
    s += y;
    s2 += y * y;
  }
  double const mean = s / N;
  double const var = s2 / N - mean * mean;
  EXPECT_NEAR(mean, mom.mean, 4 * std::sqrt(var / N));
  EXPECT_NEAR(var, mom.variance, 0.02 * mom.variance);
}

TEST(Lightbulb, Params) {
  auto const two = lightbulb_moments(2);
  EXPECT_NEAR(two.mean, 1.0, 1e-15);
  EXPECT_NEAR(two.variance, 0.0, 1e-15);
  auto const four = lightbulb_moments(4);
  EXPECT_NEAR(four.mean, 2.0, 1e-15);
  EXPECT_NEAR(four.variance, 1.0, 1e-14);
  auto const odd = lightbulb_params(Lightbulb{5});
  EXPECT_FALSE(odd.coupling_exact);
  EXPECT_GT(odd.t_shift, 0.0);
  EXPECT_NEAR(odd.t_shift, 2.0 / odd.sigma(), 1e-15);
}

TEST(Lightbulb, EvenCouplingStepsByZeroOrTwo) {
  auto sampler = make_sampler(Lightbulb{10});
  auto rng = test_rng(7);
  for (int i = 0; i < 10000; ++i) {
    auto const pair = sampler->sample_coupled(rng);
    double const d = pair.y_s - pair.y;
    EXPECT_TRUE(d == 0.0 || d == 2.0) << d;
  }
  auto odd = make_sampler(Lightbulb{5});
  try {
    odd->sample_coupled(rng);
    FAIL() << "odd n coupling should be unavailable";
  } catch (SamplerUnavailable const& e) {
    EXPECT_NE(std::string(e.what()).find("approximation-only"), std::string::npos);
  }
}

TEST(Graph, TwoVertexCoupling) {
  auto const joint = enumerate_coupling(GraphIso{2, 0.3});
  ASSERT_EQ(joint.pairs.size(), 2u);
  EXPECT_EQ(joint.pairs[0].y, 0.0);  // edge present
  EXPECT_EQ(joint.pairs[0].y_s, 2.0);
  EXPECT_NEAR(joint.pairs[0].prob, 0.3, 1e-15);
  EXPECT_EQ(joint.pairs[1].y, 2.0);
  EXPECT_EQ(joint.pairs[1].y_s, 2.0);
}

TEST(Graph, Params) {
  double const p = 0.3;
  auto const info = graph_params(GraphIso{2, p});
  EXPECT_NEAR(info.moments.mean, 2 * (1 - p), 1e-15);
  EXPECT_NEAR(info.moments.variance, 4 * p * (1 - p), 1e-15);
  EXPECT_EQ(info.family, BoundFamily::kGraph);
  EXPECT_TRUE(info.monotone);
  EXPECT_FALSE(info.coupling_bound.has_value());
}

TEST(Coverage, RejectsUnsupported) {
  EXPECT_THROW(validate(Coverage{8, 0.5, 4, 0, CoverageTarget::kVolume, 0}), ConfigError);
  EXPECT_THROW(validate(Coverage{8, 4.0, 1, 0, CoverageTarget::kVolume, 0}), ConfigError);
  EXPECT_THROW(coverage_params(Coverage{16, 0.5, 2, 0, CoverageTarget::kNonisolated, 0}),
               ConfigError);
}

TEST(Coverage, TwoDimensionalVolumeEstimate) {
  Coverage const cfg{16, 0.6, 2, 6, CoverageTarget::kVolume, 2000};
  auto const mom = coverage_moments(CoverageCtx::make(16, 0.6, 2, 6));
  auto rng = test_rng(8);
  long const N = 4000;
  double s = 0, s2 = 0, sS = 0, sS2 = 0;
  for (long i = 0; i < N; ++i) {
    auto const d = coverage_sample(cfg, rng);
    s += d.V;
    s2 += d.V * d.V;
    sS += d.S;
    sS2 += static_cast<double>(d.S) * d.S;
  }
  double const mean = s / N, var = s2 / N - mean * mean;
  double const meanS = sS / N, varS = sS2 / N - meanS * meanS;
  EXPECT_NEAR(mean, mom.mu_V, 4 * std::sqrt(var / N));
  EXPECT_NEAR(meanS, mom.mu_S, 4 * std::sqrt(varS / N));
}

TEST(CompoundPoisson, UnitClaimsMatchPoisson) {
  CompoundPoisson cp;
  cp.lambda = 3.0;
  cp.claims = FinitePmf::point_mass(1.0);
  auto const a = enumerate_law(cp);
  auto const b = enumerate_law(Poisson{3.0});
  EXPECT_LE(tv_distance(a, b), 1e-12);
  auto sampler = make_sampler(cp);
  auto rng = test_rng(9);
  for (int i = 0; i < 1000; ++i) {
    auto const pair = sampler->sample_coupled(rng);
    EXPECT_EQ(pair.y_s, pair.y + 1.0);
  }
}

TEST(CompoundPoisson, GammaSizeBiasMean) {
  // E Z^s for Gamma(alpha, beta) is (alpha + 1) beta.
  CompoundPoisson cp;
  cp.lambda = 2.0;
  cp.claims = GammaClaims{1.5, 2.0, 2.0};
  auto sampler = make_sampler(cp);
  auto rng = test_rng(10);
  long const N = 200000;
  double s = 0, s2 = 0;
  double max_gap = 0;
  for (long i = 0; i < N; ++i) {
    auto const pair = sampler->sample_coupled(rng);
    double const d = pair.y_s - pair.y;
    ASSERT_GE(d, 0.0);
    s += d;
    s2 += d * d;
    max_gap = std::max(max_gap, d);
  }
  double const mean = s / N;
  double const se = std::sqrt((s2 / N - mean * mean) / N);
  EXPECT_NEAR(mean, 2.5 * 2.0, 4 * se);
  EXPECT_GT(max_gap, 20.0);
  auto const info = compound_poisson_params(cp);
  EXPECT_NEAR(info.moments.mean, 2.0 * 1.5 * 2.0, 1e-12);
  EXPECT_NEAR(info.moments.variance, 2.0 * 1.5 * 2.5 * 4.0, 1e-12);
}

TEST(CompoundPoisson, RejectsZeroMeanClaims) {
  CompoundPoisson cp;
  cp.lambda = 2.0;
  cp.claims = FinitePmf::point_mass(0.0);
  EXPECT_THROW(validate(cp), ConfigError);
}

// --- sampler bounds -----------------------------------------------------------

TEST(Samplers, PermCouplingBounded) {
  auto sampler = make_sampler(PermPattern{10, {1, 2, 3}});
  auto rng = test_rng(11);
  for (int i = 0; i < 1000000; ++i) {
    auto const pair = sampler->sample_coupled(rng);
    ASSERT_LE(std::abs(pair.y_s - pair.y), 5.0);
  }
}

TEST(Samplers, ExtremaCouplingBounded) {
  auto sampler = make_sampler(Extrema{6, 2});
  auto rng = test_rng(12);
  for (int i = 0; i < 1000000; ++i) {
    auto const pair = sampler->sample_coupled(rng);
    ASSERT_LE(std::abs(pair.y_s - pair.y), 13.0);
  }
}

TEST(Samplers, RunsCouplingMonotone) {
  auto sampler = make_sampler(Runs{50, 3, 0.4});
  auto rng = test_rng(13);
  for (int i = 0; i < 200000; ++i) {
    auto const pair = sampler->sample_coupled(rng);
    ASSERT_GE(pair.y_s, pair.y);
    ASSERT_LE(pair.y_s - pair.y, 5.0);
  }
}

TEST(Samplers, ReproducibleFromStream) {
  for (ProcessConfig const& cfg : {ProcessConfig{Runs{30, 2, 0.5}}, ProcessConfig{GraphIso{20, 0.1}},
                                   ProcessConfig{UrnUniform{20, 5, {}}}}) {
    auto a = make_sampler(cfg);
    auto b = make_sampler(cfg);
    auto r1 = test_rng(14);
    auto r2 = test_rng(14);
    for (int i = 0; i < 500; ++i) a->sample_coupled(r1);  // warm scratch state
    auto r3 = test_rng(15);
    auto r4 = test_rng(15);
    for (int i = 0; i < 100; ++i) {
      auto const x = a->sample_coupled(r3);
      auto const y = b->sample_coupled(r4);
      ASSERT_EQ(x.y, y.y);
      ASSERT_EQ(x.y_s, y.y_s);
    }
    (void)r2;
  }
}

// --- config -------------------------------------------------------------------

TEST(ProcessConfigJson, RoundTripAllProcesses) {
  CompoundPoisson cpg;
  cpg.lambda = 4;
  cpg.claims = GammaClaims{1, 1, 2};
  CompoundPoisson cpf;
  cpf.lambda = 2;
  cpf.claims = FinitePmf({1.0, 2.0}, {0.5, 0.5});
  cpf.gamma = 0.3;
  std::vector<ProcessConfig> const cfgs{
      PermPattern{6, {1, 3, 2}}, Runs{10, 2, 0.3}, Extrema{6, 2}, UrnUniform{5, 3, {0.5, 0.25, 0.25}},
      Lightbulb{6}, GraphIso{5, 0.2}, Coverage{16, 0.5, 2, 6, CoverageTarget::kNonisolated, 100},
      cpg, cpf, Poisson{3}};
  for (auto const& cfg : cfgs) {
    auto const j = process_config_to_json(cfg);
    auto const back = process_config_from_json(j);
    EXPECT_EQ(process_config_to_json(back), j);
    EXPECT_EQ(process_name(back), j.at("process").get<std::string>());
  }
  EXPECT_EQ(process_names().size(), 9u);
}

TEST(ProcessConfigJson, RejectsUnknownKeysAndNames) {
  EXPECT_THROW(process_config_from_json({{"process", "runs"}, {"n", 4}, {"m", 2}, {"p", 0.5}, {"q", 1}}),
               ConfigError);
  EXPECT_THROW(process_config_from_json({{"process", "nope"}}), ConfigError);
  EXPECT_THROW(process_config_from_json({{"process", "graph"}, {"n", 6}, {"p", 2.0}}), ConfigError);
}
