#include "sblab/mc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "sblab/parallel.hpp"

namespace sblab {

BinomialBounds clopper_pearson(std::uint64_t k, std::uint64_t N, double cl) {
  if (N == 0 || k > N) throw DomainError("clopper_pearson: need 0 <= k <= N, N > 0");
  if (!(cl > 0.0 && cl < 1.0)) throw DomainError("clopper_pearson: cl must lie in (0, 1)");
  auto const kd = static_cast<double>(k);
  auto const nd = static_cast<double>(N);
  BinomialBounds b;
  b.lower = k == 0 ? 0.0 : boost::math::ibeta_inv(kd, nd - kd + 1.0, 1.0 - cl);
  b.upper = k == N ? 1.0 : boost::math::ibeta_inv(kd + 1.0, nd - kd, cl);
  return b;
}

namespace {

void check_grid(std::span<double const> t_grid) {
  if (t_grid.empty()) throw DomainError("t grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i])) throw DomainError("t grid has a non-finite value");
    if (i > 0 && t_grid[i] < t_grid[i - 1]) throw DomainError("t grid must be sorted");
  }
}

// Number of leading grid points whose tail contains y. in_tail is monotone
// in t along a sorted grid.
std::size_t tail_depth(std::span<double const> grid, double y, double mu, double sigma, Side side) {
  auto const it = std::partition_point(grid.begin(), grid.end(), [&](double t) {
    return in_tail(y, mu, sigma, t, side);
  });
  return static_cast<std::size_t>(it - grid.begin());
}

struct TailBlock {
  std::vector<std::uint64_t> left;   // histogram of tail depths, size G + 1
  std::vector<std::uint64_t> right;
};

SideTail finish_side(std::vector<std::uint64_t> const& hist, std::uint64_t N, double cl) {
  std::size_t const G = hist.size() - 1;
  SideTail out;
  out.counts.assign(G, 0);
  std::uint64_t acc = 0;
  for (std::size_t i = G; i-- > 0;) {
    acc += hist[i + 1];
    out.counts[i] = acc;
  }
  for (std::size_t i = 0; i < G; ++i) {
    auto const k = out.counts[i];
    auto const ci = clopper_pearson(k, N, cl);
    out.estimate.push_back(static_cast<double>(k) / static_cast<double>(N));
    out.ci_low.push_back(ci.lower);
    out.ci_high.push_back(ci.upper);
  }
  return out;
}

}  // namespace

EmpiricalTail run_tail_experiment(ProcessConfig const& cfg, TailExperimentOptions const& opt) {
  validate(cfg);
  if (opt.samples < 10000) throw DomainError("run_tail_experiment: need N >= 1e4");
  if (!(opt.cl > 0.5 && opt.cl < 1.0)) throw DomainError("run_tail_experiment: cl must lie in (0.5, 1)");
  check_grid(opt.t_grid);

  auto const info = process_info(cfg, opt.assume_monotone);
  Moments const mom = opt.standardize.value_or(info.moments);
  if (!(mom.variance >= 0.0) || !std::isfinite(mom.mean)) {
    throw DomainError("run_tail_experiment: invalid standardization");
  }
  EmpiricalTail out;
  out.process = info.name;
  out.t_grid = opt.t_grid;
  out.N = opt.samples;
  out.cl = opt.cl;
  out.seed = opt.seed;
  out.block_size = kBlockSize;
  out.mu = mom.mean;
  out.sigma = std::sqrt(mom.variance);
  out.assume_monotone = opt.assume_monotone;

  std::size_t const G = opt.t_grid.size();
  std::vector<TailBlock> blocks(block_count(opt.samples));
  std::span<double const> const grid(out.t_grid);
  double const mu = out.mu;
  double const sigma = out.sigma;
  for_each_block(
      opt.samples, opt.workers, [&] { return make_sampler(cfg); },
      [&](BlockRange range, std::unique_ptr<ProcessSampler>& sampler) {
        RngStream rng(opt.seed, stream_id_for(StreamPurpose::kTail, range.index));
        TailBlock acc{std::vector<std::uint64_t>(G + 1, 0), std::vector<std::uint64_t>(G + 1, 0)};
        for (std::uint64_t i = 0; i < range.count; ++i) {
          double const y = sampler->sample(rng);
          ++acc.left[tail_depth(grid, y, mu, sigma, Side::kLeft)];
          ++acc.right[tail_depth(grid, y, mu, sigma, Side::kRight)];
        }
        blocks[range.index] = std::move(acc);
      });

  std::vector<std::uint64_t> left(G + 1, 0), right(G + 1, 0);
  for (auto const& b : blocks) {
    for (std::size_t i = 0; i <= G; ++i) {
      left[i] += b.left[i];
      right[i] += b.right[i];
    }
  }
  out.left = finish_side(left, opt.samples, opt.cl);
  out.right = finish_side(right, opt.samples, opt.cl);
  return out;
}

EmpiricalTail exact_tail_table(std::string process, FinitePmf const& law, double mu, double sigma,
                               std::span<double const> t_grid) {
  check_grid(t_grid);
  if (!(sigma >= 0.0)) throw DomainError("exact_tail_table: sigma must be >= 0");
  EmpiricalTail out;
  out.process = std::move(process);
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.cl = 1.0;
  out.mu = mu;
  out.sigma = sigma;
  out.exact = true;
  for (Side side : {Side::kLeft, Side::kRight}) {
    SideTail& s = side == Side::kLeft ? out.left : out.right;
    for (double t : t_grid) {
      double const p = std::min(exact_tail(law, mu, sigma, t, side), 1.0);
      s.estimate.push_back(p);
      s.ci_low.push_back(p);
      s.ci_high.push_back(p);
    }
  }
  return out;
}

BoundCurve make_bound_curve(ProcessInfo const& info, std::span<double const> t_grid) {
  check_grid(t_grid);
  BoundCurve curve;
  curve.process = info.name;
  curve.family = to_string(info.family);
  curve.t_grid.assign(t_grid.begin(), t_grid.end());
  std::vector<double> left, right;
  bool has_left = true, has_right = true;
  for (double t : t_grid) {
    auto const v = evaluate_bounds(info, t);
    has_left = has_left && v.left.has_value();
    has_right = has_right && v.right.has_value();
    left.push_back(v.left.value_or(1.0));
    right.push_back(v.right.value_or(1.0));
  }
  if (has_left) curve.left = std::move(left);
  if (has_right) curve.right = std::move(right);
  return curve;
}

BoundCurve scale_bound_curve(BoundCurve curve, double factor) {
  for (auto* side : {&curve.left, &curve.right}) {
    if (!*side) continue;
    for (double& v : **side) v *= factor;
  }
  return curve;
}

std::size_t Verdict::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](VerdictRow const& r) { return !r.pass; }));
}

Verdict verify_domination(EmpiricalTail const& tail, BoundCurve const& curve) {
  if (tail.t_grid != curve.t_grid) throw DomainError("verify_domination: t grids differ");
  Verdict v;
  v.process = tail.process;
  for (Side side : {Side::kLeft, Side::kRight}) {
    auto const& bound = side == Side::kLeft ? curve.left : curve.right;
    if (!bound) continue;
    auto const& s = tail.side(side);
    for (std::size_t i = 0; i < tail.t_grid.size(); ++i) {
      VerdictRow row;
      row.side = side;
      row.t = tail.t_grid[i];
      row.N = tail.N;
      row.estimate = s.estimate[i];
      row.ci_low = s.ci_low[i];
      row.ci_high = s.ci_high[i];
      row.bound = (*bound)[i];
      row.pass = !(row.ci_low > row.bound + 1e-12);
      v.rows.push_back(row);
    }
  }
  return v;
}

namespace {

struct CoupledWorker {
  std::unique_ptr<ProcessSampler> sampler;
  CoupledPair operator()(RngStream& rng) { return sampler->sample_coupled(rng); }
};

}  // namespace

CouplingAudit run_coupling_audit(ProcessConfig const& cfg, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers) {
  validate(cfg);
  auto const info = process_info(cfg);
  if (!info.has_coupled_sampler) {
    throw SamplerUnavailable(info.name + ": no coupled sampler for this configuration");
  }
  AuditOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.workers = workers;
  opt.mu = info.moments.mean;
  opt.coupling_bound = info.coupling_bound;
  opt.expect_monotone = info.monotone;
  return audit_characterization([&] { return CoupledWorker{make_sampler(cfg)}; }, opt,
                                default_test_functions(info.moments.mean));
}

CoverageMeans run_coverage_means(Coverage const& cfg, std::uint64_t samples, std::uint64_t seed,
                                 unsigned workers) {
  validate(cfg);
  if (samples < 2) throw DomainError("run_coverage_means: need N >= 2");
  std::vector<std::pair<detail::RunningMoments, detail::RunningMoments>> blocks(
      block_count(samples));
  for_each_block(
      samples, workers, [] { return 0; },
      [&](BlockRange range, int&) {
        RngStream rng(seed, stream_id_for(StreamPurpose::kCoverage, range.index));
        detail::RunningMoments v, s;
        for (std::uint64_t i = 0; i < range.count; ++i) {
          auto const draw = coverage_sample(cfg, rng);
          v.add(draw.V);
          s.add(draw.S);
        }
        blocks[range.index] = {v, s};
      });
  detail::RunningMoments v, s;
  for (auto const& b : blocks) {
    v.merge(b.first);
    s.merge(b.second);
  }
  auto const se = [](detail::RunningMoments const& m) {
    return std::sqrt(m.m2 / static_cast<double>(m.n - 1) / static_cast<double>(m.n));
  };
  return CoverageMeans{samples, v.mean, se(v), s.mean, se(s)};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto const res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_t_grid(std::string const& spec) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (true) {
    auto const colon = spec.find(':', pos);
    auto const piece = spec.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
    double value = 0.0;
    auto const res = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || res.ec != std::errc{} || res.ptr != piece.data() + piece.size()) {
      throw DomainError("malformed t grid '" + spec + "': expected start:stop:step");
    }
    parts.push_back(value);
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 3) throw DomainError("malformed t grid '" + spec + "': expected start:stop:step");
  double const start = parts[0], stop = parts[1], step = parts[2];
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("malformed t grid '" + spec + "': need finite values and step > 0");
  }
  if (stop < start) throw DomainError("malformed t grid '" + spec + "': stop < start");
  double const span = (stop - start) / step;
  if (span > 1e7) throw DomainError("t grid '" + spec + "' has too many points");
  auto const count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(canonical_atom(start + static_cast<double>(i) * step));
  }
  return grid;
}

void write_verdict_csv(std::ostream& os, std::span<Verdict const> verdicts) {
  os << "process,side,t,N,estimate,ci_low,ci_high,bound,verdict\n";
  for (auto const& v : verdicts) {
    for (auto const& r : v.rows) {
      os << v.process << ',' << to_string(r.side) << ',' << format_double(r.t) << ',' << r.N << ','
         << format_double(r.estimate) << ',' << format_double(r.ci_low) << ','
         << format_double(r.ci_high) << ',' << format_double(r.bound) << ','
         << (r.pass ? "pass" : "fail") << '\n';
    }
  }
}

nlohmann::json verdict_to_json(Verdict const& v) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto const& r : v.rows) {
    rows.push_back({{"process", v.process},
                    {"side", to_string(r.side)},
                    {"t", r.t},
                    {"N", r.N},
                    {"estimate", r.estimate},
                    {"ci_low", r.ci_low},
                    {"ci_high", r.ci_high},
                    {"bound", r.bound},
                    {"verdict", r.pass ? "pass" : "fail"}});
  }
  return {{"process", v.process}, {"passed", v.passed()}, {"failures", v.failures()}, {"rows", rows}};
}

void write_bound_curve_csv(std::ostream& os, BoundCurve const& curve) {
  os << "t,bound_left,bound_right,family\n";
  for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
    os << format_double(curve.t_grid[i]) << ',';
    if (curve.left) os << format_double((*curve.left)[i]);
    os << ',';
    if (curve.right) os << format_double((*curve.right)[i]);
    os << ',' << curve.family << '\n';
  }
}

nlohmann::json bound_curve_to_json(BoundCurve const& curve) {
  nlohmann::json j{{"process", curve.process}, {"family", curve.family}, {"t", curve.t_grid}};
  j["bound_left"] = curve.left ? nlohmann::json(*curve.left) : nlohmann::json(nullptr);
  j["bound_right"] = curve.right ? nlohmann::json(*curve.right) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json tail_to_json(EmpiricalTail const& tail) {
  auto side_json = [](SideTail const& s) {
    nlohmann::json j{{"estimate", s.estimate}, {"ci_low", s.ci_low}, {"ci_high", s.ci_high}};
    if (!s.counts.empty()) j["counts"] = s.counts;
    return j;
  };
  return {{"process", tail.process},
          {"t", tail.t_grid},
          {"N", tail.N},
          {"cl", tail.cl},
          {"seed", tail.seed},
          {"block_size", tail.block_size},
          {"mu", tail.mu},
          {"sigma", tail.sigma},
          {"raw_mode", tail.raw_mode()},
          {"exact", tail.exact},
          {"assume_monotone", tail.assume_monotone},
          {"left", side_json(tail.left)},
          {"right", side_json(tail.right)}};
}

}  // namespace sblab
