#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sblab/mc.hpp"
#include "sblab/oracle.hpp"

using namespace sblab;

TEST(ClopperPearson, EdgeCases) {
  auto const zero = clopper_pearson(0, 10000, 0.999);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_NEAR(zero.upper, 1.0 - std::pow(0.001, 1.0 / 10000), 1e-12);
  auto const all = clopper_pearson(50, 50, 0.999);
  EXPECT_EQ(all.upper, 1.0);
  EXPECT_NEAR(all.lower, std::pow(0.001, 1.0 / 50), 1e-12);
  auto const mid = clopper_pearson(500, 1000, 0.999);
  EXPECT_LT(mid.lower, 0.5);
  EXPECT_GT(mid.upper, 0.5);
  EXPECT_THROW(clopper_pearson(3, 2, 0.9), DomainError);
}

TEST(TGrid, Parses) {
  auto const g = parse_t_grid("0:1:0.1");
  ASSERT_EQ(g.size(), 11u);
  EXPECT_EQ(g[3], 0.3);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_EQ(parse_t_grid("0:6:0.1").size(), 61u);
  EXPECT_EQ(parse_t_grid("2:2:1").size(), 1u);
  EXPECT_THROW(parse_t_grid("0:1"), DomainError);
  EXPECT_THROW(parse_t_grid("0:1:0"), DomainError);
  EXPECT_THROW(parse_t_grid("1:0:0.1"), DomainError);
  EXPECT_THROW(parse_t_grid("a:1:0.1"), DomainError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(1e-20), "1e-20");
}

TEST(TailExperiment, DegenerateLightbulbUsesRawTail) {
  TailExperimentOptions opt;
  opt.t_grid = {0.0, 1.0};
  opt.samples = 10000;
  opt.seed = 3;
  auto const tail = run_tail_experiment(Lightbulb{2}, opt);
  EXPECT_TRUE(tail.raw_mode());
  EXPECT_EQ(tail.right.estimate[1], 0.0);
  EXPECT_LT(tail.right.ci_high[1], 1e-3);
  EXPECT_EQ(tail.right.estimate[0], 1.0);
}

TEST(TailExperiment, RunsMonotoneInT) {
  TailExperimentOptions opt;
  opt.t_grid = parse_t_grid("0:3:0.25");
  opt.samples = 200000;
  opt.seed = 11;
  auto const tail = run_tail_experiment(Runs{100, 2, 0.5}, opt);
  for (Side s : {Side::kLeft, Side::kRight}) {
    auto const& st = tail.side(s);
    for (std::size_t i = 1; i < st.estimate.size(); ++i) {
      EXPECT_LE(st.estimate[i], st.estimate[i - 1]);
      EXPECT_LE(st.counts[i], st.counts[i - 1]);
    }
    for (std::size_t i = 0; i < st.estimate.size(); ++i) {
      EXPECT_LE(st.ci_low[i], st.estimate[i]);
      EXPECT_GE(st.ci_high[i], st.estimate[i]);
    }
  }
}

TEST(TailExperiment, PoissonMatchesExactTails) {
  TailExperimentOptions opt;
  opt.t_grid = parse_t_grid("0:3:0.5");
  opt.samples = 200000;
  opt.seed = 5;
  auto const tail = run_tail_experiment(Poisson{4.0}, opt);
  auto const law = poisson_truncated_pmf(4.0, 1e-13);
  for (Side s : {Side::kLeft, Side::kRight}) {
    for (std::size_t i = 0; i < opt.t_grid.size(); ++i) {
      double const exact = exact_tail(law, 4.0, 2.0, opt.t_grid[i], s);
      EXPECT_LE(tail.side(s).ci_low[i], exact);
      EXPECT_GE(tail.side(s).ci_high[i], exact);
    }
  }
}

TEST(TailExperiment, IndependentOfWorkerCount) {
  TailExperimentOptions opt;
  opt.t_grid = parse_t_grid("0:3:0.5");
  opt.samples = 3 * kBlockSize + 17;
  opt.seed = 99;
  opt.workers = 1;
  auto const a = run_tail_experiment(GraphIso{50, 0.05}, opt);
  opt.workers = 3;
  auto const b = run_tail_experiment(GraphIso{50, 0.05}, opt);
  EXPECT_EQ(tail_to_json(a).dump(), tail_to_json(b).dump());
}

TEST(TailExperiment, RejectsBadInput) {
  TailExperimentOptions opt;
  opt.t_grid = {0.0, 1.0};
  opt.samples = 100;
  EXPECT_THROW(run_tail_experiment(Poisson{4.0}, opt), DomainError);
  opt.samples = 10000;
  opt.t_grid = {1.0, 0.0};
  EXPECT_THROW(run_tail_experiment(Poisson{4.0}, opt), DomainError);
}

TEST(TailExperiment, ClopperPearsonCoverage) {
  // Repeated experiments on Poisson(4): the one-sided bounds at cl = 0.999
  // should miss the exact tail at rate <= 0.001 (4 SE slack over 200 runs).
  auto const grid = parse_t_grid("0:2:0.5");
  auto const law = poisson_truncated_pmf(4.0, 1e-13);
  std::vector<int> misses(2 * grid.size(), 0);
  int const runs = 200;
  for (int r = 0; r < runs; ++r) {
    TailExperimentOptions opt;
    opt.t_grid = grid;
    opt.samples = 10000;
    opt.seed = 1000 + static_cast<std::uint64_t>(r);
    auto const tail = run_tail_experiment(Poisson{4.0}, opt);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double const exact_r = exact_tail(law, 4.0, 2.0, grid[i], Side::kRight);
      double const exact_l = exact_tail(law, 4.0, 2.0, grid[i], Side::kLeft);
      misses[2 * i] += tail.right.ci_low[i] > exact_r || tail.right.ci_high[i] < exact_r;
      misses[2 * i + 1] += tail.left.ci_low[i] > exact_l || tail.left.ci_high[i] < exact_l;
    }
  }
  // Each row counts two one-sided misses, each at rate <= 0.001.
  double const p = 0.002;
  double const limit = runs * p + 4.0 * std::sqrt(runs * p * (1 - p));
  for (int m : misses) EXPECT_LE(m, limit);
}

TEST(Domination, ExactRunsFourPasses) {
  Runs const cfg{4, 2, 0.5};
  auto const info = runs_params(cfg);
  auto const grid = parse_t_grid("0:6:0.1");
  auto const tail = exact_tail_table("runs", enumerate_law(cfg), info.moments.mean, info.sigma(), grid);
  auto const v = verify_domination(tail, make_bound_curve(info, grid));
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.rows.size(), 2 * grid.size());
}

TEST(Domination, ExactGraphFivePasses) {
  GraphIso const cfg{5, 0.3};
  auto const info = graph_params(cfg);
  auto const grid = parse_t_grid("0:6:0.1");
  auto const tail = exact_tail_table("graph", enumerate_law(cfg), info.moments.mean, info.sigma(), grid);
  auto const curve = make_bound_curve(info, grid);
  EXPECT_TRUE(verify_domination(tail, curve).passed());
  EXPECT_FALSE(verify_domination(tail, scale_bound_curve(curve, 0.5)).passed());
}

TEST(Domination, HalvedCurveFails) {
  Runs const cfg{4, 2, 0.5};
  auto const info = runs_params(cfg);
  auto const grid = parse_t_grid("0:6:0.1");
  auto const tail = exact_tail_table("runs", enumerate_law(cfg), info.moments.mean, info.sigma(), grid);
  auto const v = verify_domination(tail, scale_bound_curve(make_bound_curve(info, grid), 0.5));
  EXPECT_GT(v.failures(), 0u);
}

TEST(Domination, MismatchedGridsRejected) {
  auto const info = runs_params(Runs{4, 2, 0.5});
  auto const tail = exact_tail_table("runs", enumerate_law(Runs{4, 2, 0.5}), 1.0, info.sigma(),
                                     parse_t_grid("0:1:0.5"));
  EXPECT_THROW(verify_domination(tail, make_bound_curve(info, parse_t_grid("0:1:0.25"))),
               DomainError);
}

TEST(Output, VerdictCsvHeaderAndRows) {
  auto const info = runs_params(Runs{4, 2, 0.5});
  auto const grid = parse_t_grid("0:1:0.5");
  auto const tail = exact_tail_table("runs", enumerate_law(Runs{4, 2, 0.5}), 1.0, info.sigma(), grid);
  std::vector<Verdict> const vs{verify_domination(tail, make_bound_curve(info, grid))};
  std::ostringstream os;
  write_verdict_csv(os, vs);
  auto const text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "process,side,t,N,estimate,ci_low,ci_high,bound,verdict");
  EXPECT_NE(text.find("runs,right,0.5,0,"), std::string::npos);
}

TEST(CouplingAudit, UrnThreeTwo) {
  auto const audit = run_coupling_audit(UrnUniform{3, 2, {}}, 100000, 7, 1);
  EXPECT_TRUE(audit.passed());
  EXPECT_EQ(audit.bound_violations, 0u);
}

TEST(CouplingAudit, CoverageHasNoCoupledSampler) {
  EXPECT_THROW(run_coupling_audit(Coverage{8, 0.5, 1, 0, CoverageTarget::kVolume, 0}, 1000, 1, 1),
               SamplerUnavailable);
}

TEST(CoverageMeans, SmallInstanceMatchesClosedForm) {
  Coverage const cfg{4, 0.5, 1, 0, CoverageTarget::kVolume, 0};
  auto const m = run_coverage_means(cfg, 200000, 13, 1);
  EXPECT_NEAR(m.mean_V, 2.734375, 4 * m.se_V);
  EXPECT_NEAR(m.mean_S, 1.6875, 4 * m.se_S);
}
