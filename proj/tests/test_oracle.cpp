#include <gtest/gtest.h>

#include <cmath>

#include "sblab/oracle.hpp"

using namespace sblab;

namespace {

void expect_moments(ProcessConfig const& cfg, double mu, double sigma2, double tol = 1e-10) {
  auto const law = enumerate_law(cfg);
  auto const mom = pmf_moments(law);
  EXPECT_NEAR(mom.mean, mu, tol) << process_config_to_json(cfg).dump();
  EXPECT_NEAR(mom.variance, sigma2, tol) << process_config_to_json(cfg).dump();
}

void expect_coupling_exact(ProcessConfig const& cfg) {
  auto const law = enumerate_law(cfg);
  auto const joint = enumerate_coupling(cfg);
  SCOPED_TRACE(process_config_to_json(cfg).dump());
  EXPECT_LE(tv_distance(joint.marginal_y(), law), 1e-12);
  EXPECT_LE(tv_distance(joint.marginal_ys(), size_bias_pmf(law)), 1e-12);
}

}  // namespace

TEST(EnumerateLaw, GraphTwoVertices) {
  auto const law = enumerate_law(GraphIso{2, 0.3});
  EXPECT_EQ(law.size(), 2u);
  EXPECT_NEAR(law.prob_of(0), 0.3, 1e-15);
  EXPECT_NEAR(law.prob_of(2), 0.7, 1e-15);
}

TEST(EnumerateLaw, RunsFourTwoHalf) {
  auto const law = enumerate_law(Runs{4, 2, 0.5});
  EXPECT_NEAR(law.prob_of(0), 7.0 / 16, 1e-15);
  EXPECT_NEAR(law.prob_of(1), 4.0 / 16, 1e-15);
  EXPECT_NEAR(law.prob_of(2), 4.0 / 16, 1e-15);
  EXPECT_NEAR(law.prob_of(4), 1.0 / 16, 1e-15);
}

TEST(EnumerateLaw, LightbulbTwoIsPointMass) {
  auto const law = enumerate_law(Lightbulb{2});
  ASSERT_EQ(law.size(), 1u);
  EXPECT_EQ(law.atoms()[0], 1.0);
}

TEST(EnumerateLaw, UrnTwoTwo) {
  auto const law = enumerate_law(UrnUniform{2, 2, {}});
  EXPECT_NEAR(law.prob_of(0), 0.5, 1e-15);
  EXPECT_NEAR(law.prob_of(2), 0.5, 1e-15);
}

TEST(EnumerateLaw, GuardsRejectLargeInstances) {
  EXPECT_THROW(enumerate_law(Runs{25, 2, 0.5}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_law(PermPattern{9, {1, 2, 3}}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_law(Extrema{10, 1}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_law(Extrema{5, 2}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_law(UrnUniform{8, 8, {}}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_law(Lightbulb{7}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_law(GraphIso{7, 0.5}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_coupling(Runs{24, 2, 0.5}), EnumerationInfeasible);
  EXPECT_THROW(enumerate_law(Coverage{8, 0.5, 1, 0, CoverageTarget::kVolume, 0}),
               EnumerationInfeasible);
}

TEST(ClosedFormMoments, MatchEnumeration) {
  for (int n = 4; n <= 6; ++n) {
    Runs const cfg{n, 2, 0.5};
    auto const info = runs_params(cfg);
    expect_moments(cfg, info.moments.mean, info.moments.variance);
  }
  for (double p : {0.2, 0.7}) {
    Runs const cfg{6, 3, p};
    auto const info = runs_params(cfg);
    expect_moments(cfg, info.moments.mean, info.moments.variance);
  }
  expect_moments(PermPattern{6, {1, 2, 3}}, 1.0, 23.0 / 30.0);
  expect_moments(PermPattern{7, {1, 2, 3}}, perm_params(PermPattern{7, {1, 2, 3}}).moments.mean,
                 perm_params(PermPattern{7, {1, 2, 3}}).moments.variance);
  for (int n = 5; n <= 7; ++n) expect_moments(Extrema{n, 1}, n / 3.0, 2.0 * n / 45.0);
  for (int n = 2; n <= 4; ++n) {
    for (int m = 2; m <= 3; ++m) {
      auto const mom = urn_uniform_moments(n, m);
      expect_moments(UrnUniform{n, m, {}}, mom.mean, mom.variance);
    }
  }
  expect_moments(UrnUniform{2, 2, {}}, 1.0, 1.0);
  expect_moments(Lightbulb{2}, 1.0, 0.0);
  expect_moments(Lightbulb{4}, 2.0, 1.0);
  for (int n : {3, 5, 6}) {
    auto const mom = lightbulb_moments(n);
    expect_moments(Lightbulb{n}, mom.mean, mom.variance);
  }
  for (int n = 2; n <= 5; ++n) {
    for (double p : {0.2, 0.5, 0.8}) {
      auto const info = graph_params(GraphIso{n, p});
      expect_moments(GraphIso{n, p}, info.moments.mean, info.moments.variance);
    }
  }
  for (double p : {0.2, 0.5, 0.8}) expect_moments(GraphIso{2, p}, 2 * (1 - p), 4 * p * (1 - p));
}

TEST(ClosedFormMoments, PermNonIdentityFormulaVersusOracle) {
  // The literal overlap formula need not match for tau other than the
  // identity; the oracle value is the reference.
  PermPattern const cfg{6, {1, 3, 2}};
  auto const info = perm_params(cfg);
  auto const oracle = pmf_moments(enumerate_law(cfg));
  EXPECT_NEAR(oracle.mean, info.moments.mean, 1e-12);
  EXPECT_GT(oracle.variance, 0.0);
  EXPECT_GE(info.moments.variance, 6.0 / 6.0 * (1.0 - 5.0 / 6.0) - 1e-12);
}

TEST(EnumerateCoupling, MarginalsAreExact) {
  for (int n = 4; n <= 6; ++n) expect_coupling_exact(Runs{n, 2, 0.5});
  expect_coupling_exact(Runs{6, 3, 0.3});
  expect_coupling_exact(PermPattern{6, {1, 2, 3}});
  expect_coupling_exact(PermPattern{6, {1, 3, 2}});
  for (int n = 5; n <= 6; ++n) expect_coupling_exact(Extrema{n, 1});
  for (int n = 2; n <= 4; ++n) {
    for (int m = 2; m <= 3; ++m) expect_coupling_exact(UrnUniform{n, m, {}});
  }
  expect_coupling_exact(Lightbulb{2});
  expect_coupling_exact(Lightbulb{4});
  expect_coupling_exact(Lightbulb{6});
  for (int n = 2; n <= 5; ++n) expect_coupling_exact(GraphIso{n, 0.3});
}

TEST(EnumerateCoupling, UrnTwoTwoSupport) {
  auto const joint = enumerate_coupling(UrnUniform{2, 2, {}});
  ASSERT_EQ(joint.pairs.size(), 2u);
  EXPECT_EQ(joint.pairs[0].y, 0.0);
  EXPECT_EQ(joint.pairs[0].y_s, 2.0);
  EXPECT_NEAR(joint.pairs[0].prob, 0.5, 1e-15);
  EXPECT_EQ(joint.pairs[1].y, 2.0);
  EXPECT_EQ(joint.pairs[1].y_s, 2.0);
  EXPECT_NEAR(joint.pairs[1].prob, 0.5, 1e-15);
}

TEST(EnumerateCoupling, LightbulbTwoPointMass) {
  auto const joint = enumerate_coupling(Lightbulb{2});
  ASSERT_EQ(joint.pairs.size(), 1u);
  EXPECT_EQ(joint.pairs[0].y, 1.0);
  EXPECT_EQ(joint.pairs[0].y_s, 1.0);
}

TEST(EnumerateCoupling, OddLightbulbUnavailable) {
  EXPECT_THROW(enumerate_coupling(Lightbulb{5}), SamplerUnavailable);
}

TEST(EnumerateCoupling, PoissonSeriesCoupling) {
  auto const joint = enumerate_coupling(Poisson{3.0});
  auto const law = enumerate_law(Poisson{3.0});
  EXPECT_LE(tv_distance(joint.marginal_ys(), size_bias_pmf(law)), 1e-12);
}

TEST(EnumerateCoupling, JsonRoundTrip) {
  auto const joint = enumerate_coupling(UrnUniform{3, 2, {}});
  nlohmann::json j = joint;
  auto const back = joint_law_from_json(j);
  ASSERT_EQ(back.pairs.size(), joint.pairs.size());
  for (std::size_t i = 0; i < back.pairs.size(); ++i) {
    EXPECT_EQ(back.pairs[i].prob, joint.pairs[i].prob);
  }
}

TEST(TruncatedSeries, PoissonMean) {
  auto const law = poisson_truncated_pmf(3.0, 1e-12);
  EXPECT_NEAR(pmf_moments(law).mean, 3.0, 1e-10);
  EXPECT_NEAR(pmf_moments(law).variance, 3.0, 1e-9);
}

TEST(TruncatedSeries, CompoundWithUnitClaimsIsPoisson) {
  auto const a = compound_truncated_pmf(2.5, FinitePmf::point_mass(1.0), 1e-12);
  auto const b = poisson_truncated_pmf(2.5, 1e-12);
  EXPECT_LE(tv_distance(a, b), 1e-12);
}

TEST(TruncatedSeries, CompoundWaldIdentities) {
  FinitePmf const z({1.0, 2.0}, {0.5, 0.5});
  auto const law = compound_truncated_pmf(2.0, z, 1e-12);
  auto const mom = pmf_moments(law);
  EXPECT_NEAR(mom.mean, 3.0, 1e-10);
  EXPECT_NEAR(mom.variance, 2.0 * 2.5, 1e-9);
}

TEST(TruncatedSeries, RejectsLooseEps) {
  EXPECT_THROW(poisson_truncated_pmf(3.0, 1e-6), DomainError);
}
