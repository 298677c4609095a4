#include "sblab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "sblab/mc.hpp"
#include "sblab/oracle.hpp"

namespace sblab {

using nlohmann::json;

namespace {

constexpr char const* kCommands[] = {"bounds", "simulate", "verify-coupling", "oracle", "report"};

std::uint64_t default_samples(std::string const& command) {
  if (command == "simulate") return 1000000;
  if (command == "verify-coupling") return 100000;
  return 0;
}

std::uint64_t default_seed() {
  char const* env = std::getenv("SIZEBIAS_LAB_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::uint64_t value = 0;
  auto const* end = env + std::char_traits<char>::length(env);
  auto const res = std::from_chars(env, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError(std::string("SIZEBIAS_LAB_SEED is not an unsigned integer: '") + env + "'");
  }
  return value;
}

}  // namespace

json run_spec_to_json(RunSpec const& s) {
  return {{"command", s.command},
          {"process", s.process ? process_config_to_json(*s.process) : json(nullptr)},
          {"t", s.t_grid},
          {"samples", s.samples},
          {"seed", s.seed},
          {"workers", s.workers},
          {"cl", s.cl},
          {"assume_monotone", s.assume_monotone},
          {"out", s.out},
          {"output", s.output},
          {"timestamp", s.timestamp},
          {"inputs", s.inputs}};
}

RunSpec run_spec_from_json(json const& j) {
  if (!j.is_object()) throw ConfigError("run spec must be a JSON object");
  static std::vector<std::string> const known{"command", "process", "t",     "samples",
                                              "seed",    "workers", "cl",    "assume_monotone",
                                              "out",     "output",  "timestamp", "inputs"};
  for (auto const& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("run spec: unknown key '" + key + "'");
    }
  }
  try {
    RunSpec s;
    s.command = j.value("command", std::string());
    if (j.contains("process") && !j.at("process").is_null()) {
      s.process = process_config_from_json(j.at("process"));
    }
    s.t_grid = j.value("t", s.t_grid);
    s.samples = j.value("samples", default_samples(s.command));
    s.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : default_seed();
    s.workers = j.value("workers", s.workers);
    s.cl = j.value("cl", s.cl);
    s.assume_monotone = j.value("assume_monotone", s.assume_monotone);
    s.out = j.value("out", s.command == "verify-coupling" ? std::string("json") : s.out);
    s.output = j.value("output", s.output);
    s.timestamp = j.value("timestamp", s.timestamp);
    s.inputs = j.value("inputs", s.inputs);
    return s;
  } catch (json::exception const& e) {
    throw ConfigError(std::string("run spec: ") + e.what());
  }
}

namespace {

// ---------------------------------------------------------------------------
// Output helpers

std::string utc_timestamp() {
  auto const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Sink {
 public:
  Sink(RunSpec const& spec, std::ostream& fallback) : spec_(spec), fallback_(fallback) {}

  std::ostream& stream() {
    if (spec_.output.empty()) return fallback_;
    if (!file_.is_open()) {
      file_.open(spec_.output, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file '" + spec_.output + "'");
    }
    return file_;
  }

  void csv_preamble() {
    auto& os = stream();
    if (spec_.timestamp) os << "# generated " << utc_timestamp() << '\n';
    os << "# spec: " << spec_json().dump() << '\n';
  }

  void write_json(json body) {
    body["spec"] = spec_json();
    if (spec_.timestamp) body["generated"] = utc_timestamp();
    stream() << body.dump(2) << '\n';
  }

  void finish() {
    auto& os = stream();
    os.flush();
    if (!os) throw std::runtime_error("write to '" + spec_.output + "' failed");
  }

 private:
  // The run spec as recorded in outputs; output location and timestamp flag are
  // left out so that files written to different paths compare equal.
  json spec_json() const {
    json j = run_spec_to_json(spec_);
    j.erase("output");
    j.erase("timestamp");
    j.erase("workers");
    return j;
  }

  RunSpec const& spec_;
  std::ostream& fallback_;
  std::ofstream file_;
};

ProcessConfig const& require_process(RunSpec const& spec) {
  if (!spec.process) throw ConfigError(spec.command + ": --process is required");
  return *spec.process;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_bounds(RunSpec const& spec, Sink& sink) {
  auto const& cfg = require_process(spec);
  auto const info = process_info(cfg, spec.assume_monotone);
  auto const grid = parse_t_grid(spec.t_grid);
  auto const curve = make_bound_curve(info, grid);
  if (spec.out == "json") {
    json body = bound_curve_to_json(curve);
    body["mu"] = info.moments.mean;
    body["sigma2"] = info.moments.variance;
    body["coupling_bound"] = info.coupling_bound ? json(*info.coupling_bound) : json(nullptr);
    body["monotone"] = info.monotone;
    body["left_tail_assumed"] = info.left_tail_assumed;
    sink.write_json(std::move(body));
  } else {
    sink.csv_preamble();
    write_bound_curve_csv(sink.stream(), curve);
  }
  sink.finish();
  return kExitOk;
}

int cmd_simulate(RunSpec const& spec, Sink& sink) {
  auto const& cfg = require_process(spec);
  TailExperimentOptions opt;
  opt.t_grid = parse_t_grid(spec.t_grid);
  opt.samples = spec.samples;
  opt.seed = spec.seed;
  opt.workers = spec.workers;
  opt.cl = spec.cl;
  opt.assume_monotone = spec.assume_monotone;
  auto const tail = run_tail_experiment(cfg, opt);
  auto const info = process_info(cfg, spec.assume_monotone);
  std::vector<Verdict> const verdicts{verify_domination(tail, make_bound_curve(info, opt.t_grid))};
  if (spec.out == "json") {
    sink.write_json({{"verdict", verdict_to_json(verdicts[0])}, {"tail", tail_to_json(tail)}});
  } else {
    sink.csv_preamble();
    write_verdict_csv(sink.stream(), verdicts);
  }
  sink.finish();
  return verdicts[0].passed() ? kExitOk : kExitCheckFailed;
}

int cmd_verify_coupling(RunSpec const& spec, Sink& sink) {
  auto const& cfg = require_process(spec);
  CouplingAudit const audit = run_coupling_audit(cfg, spec.samples, spec.seed, spec.workers);
  std::string const name = process_name(cfg);
  if (spec.out == "json") {
    json body = audit;
    body["process"] = name;
    sink.write_json(std::move(body));
  } else {
    sink.csv_preamble();
    auto& os = sink.stream();
    os << "process,f,lhs,rhs,residual,std_error,within\n";
    for (auto const& r : audit.char_residuals) {
      os << name << ',' << r.name << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
         << ',' << format_double(r.residual) << ',' << format_double(r.std_error) << ','
         << (r.within ? "pass" : "fail") << '\n';
    }
    os << "# monotone_violations=" << audit.monotone_violations
       << " bound_violations=" << audit.bound_violations
       << " passed=" << (audit.passed() ? "true" : "false") << '\n';
  }
  sink.finish();
  return audit.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_oracle(RunSpec const& spec, Sink& sink) {
  auto const& cfg = require_process(spec);
  auto const info = process_info(cfg, spec.assume_monotone);
  auto const law = enumerate_law(cfg);
  auto const exact = pmf_moments(law);
  auto const grid = parse_t_grid(spec.t_grid);
  // Tails are standardized by the closed-form moments the bound uses; the
  // enumerated moments are reported next to them.
  auto const tail = exact_tail_table(info.name, law, info.moments.mean, info.sigma(), grid);
  std::vector<Verdict> const verdicts{verify_domination(tail, make_bound_curve(info, grid))};

  json coupling = nullptr;
  std::string coupling_note;
  bool coupling_ok = true;
  try {
    auto const joint = enumerate_coupling(cfg);
    double const tv = tv_distance(joint.marginal_ys(), size_bias_pmf(law));
    coupling = {{"joint", joint}, {"tv_size_bias", tv}, {"exact", info.coupling_exact}};
    if (info.coupling_exact && tv > 1e-12) coupling_ok = false;
  } catch (EnumerationInfeasible const& e) {
    coupling_note = e.what();
  } catch (SamplerUnavailable const& e) {
    coupling_note = e.what();
  }

  bool const passed = verdicts[0].passed() && coupling_ok;
  if (spec.out == "json") {
    json body{{"process", info.name},
              {"law", law},
              {"closed_form", {{"mean", info.moments.mean}, {"variance", info.moments.variance}}},
              {"oracle", {{"mean", exact.mean}, {"variance", exact.variance}}},
              {"coupling", coupling},
              {"verdict", verdict_to_json(verdicts[0])},
              {"passed", passed}};
    if (!coupling_note.empty()) body["coupling_note"] = coupling_note;
    sink.write_json(std::move(body));
  } else {
    sink.csv_preamble();
    auto& os = sink.stream();
    os << "# closed_form_mean=" << format_double(info.moments.mean)
       << " closed_form_variance=" << format_double(info.moments.variance)
       << " oracle_mean=" << format_double(exact.mean)
       << " oracle_variance=" << format_double(exact.variance) << '\n';
    if (coupling.is_object()) {
      os << "# coupling_tv=" << format_double(coupling["tv_size_bias"].get<double>()) << '\n';
    }
    write_verdict_csv(os, verdicts);
  }
  sink.finish();
  return passed ? kExitOk : kExitCheckFailed;
}

// report -------------------------------------------------------------------

struct SummaryRow {
  std::size_t sources = 0;
  std::size_t rows = 0;
  std::size_t failures = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double t_max = -std::numeric_limits<double>::infinity();
};

using Summary = std::map<std::pair<std::string, std::string>, SummaryRow>;

std::vector<std::string> split_csv(std::string const& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(std::string const& text, std::string const& where) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto const res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError(where + ": not a number: '" + text + "'");
  }
  return value;
}

void add_row(Summary& summary, std::set<std::pair<std::string, std::string>>& seen,
             std::string const& process, std::string const& side, double t, double ci_low,
             double bound, bool pass) {
  auto& row = summary[{process, side}];
  seen.insert({process, side});
  ++row.rows;
  if (!pass) ++row.failures;
  row.min_margin = std::min(row.min_margin, bound - ci_low);
  row.t_max = std::max(row.t_max, t);
}

void merge_csv(std::string const& path, std::istream& in, Summary& summary) {
  std::string line;
  bool header = false;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "process,side,t,N,estimate,ci_low,ci_high,bound,verdict") {
        throw ConfigError(path + ": not a verdict CSV (header '" + line + "')");
      }
      header = true;
      continue;
    }
    auto const f = split_csv(line);
    std::string const where = path + ":" + std::to_string(lineno);
    if (f.size() != 9) throw ConfigError(where + ": expected 9 columns");
    if (f[8] != "pass" && f[8] != "fail") throw ConfigError(where + ": bad verdict '" + f[8] + "'");
    add_row(summary, seen, f[0], f[1], parse_number(f[2], where), parse_number(f[5], where),
            parse_number(f[7], where), f[8] == "pass");
  }
  if (!header) throw ConfigError(path + ": empty or not a verdict CSV");
  for (auto const& key : seen) ++summary[key].sources;
}

void merge_json(std::string const& path, json const& j, Summary& summary) {
  std::set<std::pair<std::string, std::string>> seen;
  if (j.contains("verdict")) {
    for (auto const& r : j.at("verdict").at("rows")) {
      add_row(summary, seen, r.at("process").get<std::string>(), r.at("side").get<std::string>(),
              r.at("t").get<double>(), r.at("ci_low").get<double>(), r.at("bound").get<double>(),
              r.at("verdict").get<std::string>() == "pass");
    }
  } else if (j.contains("char_residuals") && j.contains("process")) {
    auto& row = summary[{j.at("process").get<std::string>(), "coupling"}];
    seen.insert({j.at("process").get<std::string>(), "coupling"});
    ++row.rows;
    if (!j.at("passed").get<bool>()) ++row.failures;
  } else {
    throw ConfigError(path + ": JSON holds neither a verdict nor a coupling audit");
  }
  for (auto const& key : seen) ++summary[key].sources;
}

int cmd_report(RunSpec const& spec, Sink& sink) {
  if (spec.inputs.empty()) throw ConfigError("report: no input files given");
  Summary summary;
  for (auto const& path : spec.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("report: cannot read '" + path + "'");
    int first = in.peek();
    while (first == ' ' || first == '\n' || first == '\r' || first == '\t') {
      in.get();
      first = in.peek();
    }
    if (first == '{') {
      json j;
      try {
        in >> j;
      } catch (json::exception const& e) {
        throw ConfigError(path + ": " + e.what());
      }
      merge_json(path, j, summary);
    } else {
      merge_csv(path, in, summary);
    }
  }
  std::size_t total_failures = 0;
  for (auto const& [_, row] : summary) total_failures += row.failures;
  auto margin_text = [](SummaryRow const& r) {
    return std::isfinite(r.min_margin) ? format_double(r.min_margin) : std::string();
  };
  if (spec.out == "json") {
    json rows = json::array();
    for (auto const& [key, r] : summary) {
      rows.push_back({{"process", key.first},
                      {"side", key.second},
                      {"sources", r.sources},
                      {"rows", r.rows},
                      {"failures", r.failures},
                      {"min_margin", std::isfinite(r.min_margin) ? json(r.min_margin) : json(nullptr)},
                      {"t_max", std::isfinite(r.t_max) ? json(r.t_max) : json(nullptr)},
                      {"verdict", r.failures == 0 ? "pass" : "fail"}});
    }
    sink.write_json({{"summary", rows}, {"passed", total_failures == 0}});
  } else {
    sink.csv_preamble();
    auto& os = sink.stream();
    os << "process,side,sources,rows,failures,min_margin,t_max,verdict\n";
    for (auto const& [key, r] : summary) {
      os << key.first << ',' << key.second << ',' << r.sources << ',' << r.rows << ','
         << r.failures << ',' << margin_text(r) << ','
         << (std::isfinite(r.t_max) ? format_double(r.t_max) : std::string()) << ','
         << (r.failures == 0 ? "pass" : "fail") << '\n';
    }
  }
  sink.finish();
  return total_failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// Argument parsing

struct Flags {
  std::string config;
  std::string process;
  int n = 0, m = 0, dim = 0, d = 0, kappa = 0;
  long volume_points = 0;
  double p = 0, rho = 0, lambda = 0, alpha = 0, beta = 0, M = 0, gamma = 0, cl = 0;
  std::string target, claims;
  std::vector<int> tau;
  std::vector<double> probs, atoms;
  std::string t;
  std::uint64_t samples = 0, seed = 0;
  unsigned workers = 1;
  std::string out, output;
  bool assume_monotone = false;
  bool no_timestamp = false;
  std::vector<std::string> inputs;
};

void add_options(CLI::App* sub, Flags& f, bool with_process) {
  sub->add_option("--config", f.config, "JSON run spec; command-line flags take precedence");
  sub->add_option("--out", f.out, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", f.output, "Output file (default: standard output)");
  sub->add_flag("--no-timestamp", f.no_timestamp, "Omit the generation timestamp");
  if (!with_process) return;
  sub->add_option("--process", f.process, "perm|runs|extrema|urn|lightbulb|graph|coverage|cpoisson|poisson");
  sub->add_option("--n", f.n, "Size parameter n");
  sub->add_option("--m", f.m, "Pattern/run length or number of urns");
  sub->add_option("--p", f.p, "Success or edge probability");
  sub->add_option("--tau", f.tau, "Pattern, e.g. --tau 1 3 2")->delimiter(',');
  sub->add_option("--dim", f.dim, "Lattice dimension (extrema)");
  sub->add_option("--rho", f.rho, "Ball radius (coverage)");
  sub->add_option("--d", f.d, "Space dimension (coverage)");
  sub->add_option("--kappa", f.kappa, "Kissing-number bound kappa_d (coverage)");
  sub->add_option("--target", f.target, "volume|nonisolated (coverage)");
  sub->add_option("--volume-points", f.volume_points, "Hit-or-miss points per draw (coverage, d >= 2)");
  sub->add_option("--lambda", f.lambda, "Poisson mean");
  sub->add_option("--claims", f.claims, "gamma|pmf (cpoisson)");
  sub->add_option("--alpha", f.alpha, "Gamma claim shape");
  sub->add_option("--beta", f.beta, "Gamma claim scale");
  sub->add_option("--M", f.M, "Exponential-moment constant M > 1 (gamma claims)");
  sub->add_option("--gamma", f.gamma, "Exponential-moment parameter (pmf claims)");
  sub->add_option("--atoms", f.atoms, "Claim atoms (pmf claims)")->delimiter(',');
  sub->add_option("--probs", f.probs, "Urn or claim probabilities")->delimiter(',');
  sub->add_option("--t", f.t, "t grid start:stop:step");
  sub->add_option("--samples", f.samples, "Replications");
  sub->add_option("--seed", f.seed, "Seed (default: SIZEBIAS_LAB_SEED or 1)");
  sub->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--cl", f.cl, "One-sided confidence level");
  sub->add_flag("--assume-monotone", f.assume_monotone,
                "Enable left-tail bounds for extrema and coverage");
}

json read_config(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (json::exception const& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

RunSpec resolve(CLI::App const& sub, Flags const& f) {
  auto given = [&](char const* name) { return sub.count(name) > 0; };
  json j = f.config.empty() ? json::object() : read_config(f.config);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  j["command"] = sub.get_name();

  bool const has_process_flags = sub.get_option_no_throw("--process") != nullptr;
  if (has_process_flags) {
    json proc = j.contains("process") && j["process"].is_object() ? j["process"] : json::object();
    if (given("--process")) {
      if (proc.value("process", f.process) != f.process) proc = json::object();
      proc["process"] = f.process;
    }
    std::string const name = proc.value("process", std::string());
    bool touched = given("--process");
    auto set = [&](char const* flag, char const* key, json value) {
      if (!given(flag)) return;
      proc[key] = std::move(value);
      touched = true;
    };
    set("--n", "n", f.n);
    set("--m", "m", f.m);
    set("--p", "p", f.p);
    set("--tau", "tau", f.tau);
    set("--dim", "dim", f.dim);
    set("--rho", "rho", f.rho);
    set("--d", "d", f.d);
    set("--kappa", "kappa_d", f.kappa);
    set("--target", "target", f.target);
    set("--volume-points", "volume_points", f.volume_points);
    set("--lambda", "lambda", f.lambda);
    set("--gamma", "gamma", f.gamma);
    if (name == "cpoisson") {
      json claims = proc.contains("claims") && proc["claims"].is_object() ? proc["claims"]
                                                                          : json::object();
      auto set_claim = [&](char const* flag, char const* key, json value) {
        if (!given(flag)) return;
        claims[key] = std::move(value);
        touched = true;
      };
      set_claim("--claims", "type", f.claims);
      set_claim("--alpha", "alpha", f.alpha);
      set_claim("--beta", "beta", f.beta);
      set_claim("--M", "M", f.M);
      set_claim("--atoms", "atoms", f.atoms);
      set_claim("--probs", "probs", f.probs);
      if (!claims.empty()) {
        if (!claims.contains("type")) claims["type"] = claims.contains("atoms") ? "pmf" : "gamma";
        proc["claims"] = claims;
      }
    } else {
      for (char const* flag : {"--claims", "--alpha", "--beta", "--M", "--atoms"}) {
        if (given(flag)) throw ConfigError(std::string(flag) + " applies to cpoisson only");
      }
      set("--probs", "probs", f.probs);
    }
    if (touched || j.contains("process")) j["process"] = proc;
    if (given("--t")) j["t"] = f.t;
    if (given("--samples")) j["samples"] = f.samples;
    if (given("--seed")) j["seed"] = f.seed;
    if (given("--workers")) j["workers"] = f.workers;
    if (given("--cl")) j["cl"] = f.cl;
    if (given("--assume-monotone")) j["assume_monotone"] = true;
  }
  if (given("--out")) j["out"] = f.out;
  if (given("--output")) j["output"] = f.output;
  if (given("--no-timestamp")) j["timestamp"] = false;
  if (!f.inputs.empty()) j["inputs"] = f.inputs;

  RunSpec spec = run_spec_from_json(j);
  if (spec.out != "csv" && spec.out != "json") throw ConfigError("--out must be csv or json");
  if (spec.workers == 0) throw ConfigError("--workers must be >= 1");
  if (spec.process) validate(*spec.process);
  return spec;
}

int dispatch(RunSpec const& spec, std::ostream& out) {
  Sink sink(spec, out);
  if (spec.command == "bounds") return cmd_bounds(spec, sink);
  if (spec.command == "simulate") return cmd_simulate(spec, sink);
  if (spec.command == "verify-coupling") return cmd_verify_coupling(spec, sink);
  if (spec.command == "oracle") return cmd_oracle(spec, sink);
  if (spec.command == "report") return cmd_report(spec, sink);
  throw ConfigError("unknown command '" + spec.command + "'");
}

}  // namespace

int parse_and_dispatch(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Size-bias coupling tail bounds: evaluation, simulation and exact checks",
               "sizebias_lab"};
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, CLI::App*> subs;
  subs["bounds"] = app.add_subcommand("bounds", "Bound curves over a t grid");
  subs["simulate"] = app.add_subcommand("simulate", "Monte Carlo tails checked against the bounds");
  subs["verify-coupling"] =
      app.add_subcommand("verify-coupling", "Audit the size-bias coupling of a process");
  subs["oracle"] = app.add_subcommand("oracle", "Exact law, coupling and tail checks by enumeration");
  subs["report"] = app.add_subcommand("report", "Summarize verdict outputs by process and side");
  for (auto const* name : kCommands) add_options(subs[name], flags, std::string(name) != "report");
  subs["report"]->add_option("inputs", flags.inputs, "CSV or JSON outputs to merge")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    CLI::App const* chosen = nullptr;
    for (auto const& [name, sub] : subs) {
      if (sub->parsed()) chosen = sub;
    }
    RunSpec const spec = resolve(*chosen, flags);
    return dispatch(spec, out);
  } catch (ConfigError const& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (SamplerUnavailable const& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (DomainError const& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (std::exception const& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace sblab
