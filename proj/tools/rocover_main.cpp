#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rocover/acceptance.hpp"
#include "rocover/baselines.hpp"
#include "rocover/diagnostics.hpp"
#include "rocover/format.hpp"
#include "rocover/generators.hpp"
#include "rocover/harness.hpp"
#include "rocover/io.hpp"

namespace {

using namespace rocover;

// Resolves a known-opt budget for a set system: the generator's certified
// optimum when present, otherwise the exact oracle on small instances.
double require_known_opt(const SetSystem& sys, std::optional<double> meta_value) {
  if (meta_value) return *meta_value;
  if (sys.m <= 64) {
    OptCertificate cert = exact_opt(sys);
    if (cert.exact) return cert.cost;
  }
  throw Error(
      "known-opt beta needs an optimum reference: the instance has no meta sidecar value and "
      "the exact oracle handles at most 64 sets — use a planted instance (certified optimum in "
      "the sidecar) or pass --beta fixed:<value>");
}

SetSystem load_set_system(const std::string& path) {
  LoadedInstance loaded = load_instance(path);
  if (auto* sys = std::get_if<SetSystem>(&loaded)) return std::move(*sys);
  if (auto* batched = std::get_if<BatchedInstance>(&loaded)) return std::move(batched->base);
  throw Error(path + ": expected a set-cover instance");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
    std::cout << "wrote " << out_path << "\n";
  }
}

struct GenArgs {
  std::string family;
  std::string out;
  std::uint64_t seed = 1;
  int n = 0, m = 0, k = 0, levels = 0, r = 0, batches = 0;
  double p_extra = 0.0, cost_jitter = 0.0;
  std::string inner_path;
  double inner_opt = 0.0;
  bool has_inner_opt = false;
};

int do_gen(const GenArgs& args) {
  GenSpec spec;
  spec.family = args.family;
  spec.seed = args.seed;
  spec.n = args.n;
  spec.m = args.m;
  spec.k = args.k;
  spec.p_extra = args.p_extra;
  spec.cost_jitter = args.cost_jitter;
  spec.levels = args.levels;
  spec.r = args.r;
  spec.batches = args.batches;
  if (!args.inner_path.empty()) spec.inner = load_set_system(args.inner_path);
  if (args.has_inner_opt) spec.inner_opt = args.inner_opt;

  GeneratedInstance generated = generate(spec);
  save_instance(args.out, generated.instance);
  save_meta(args.out, generated.meta);
  std::cout << "wrote " << args.out << " and " << meta_path_for(args.out).string() << "\n";
  return 0;
}

struct RunArgs {
  std::string instance;
  std::string algorithm = "loc";
  std::string beta = "known-opt";
  std::string out;
  std::uint64_t seed = 1;
  int trials = 20;
  int threads = 1;
  int simple_k = 0;
};

int do_run(const RunArgs& args) {
  LoadedInstance loaded = load_instance(args.instance);
  std::optional<MetaJson> meta = load_meta_for(args.instance);
  std::optional<double> reference = meta ? meta_opt(*meta) : std::nullopt;

  RunConfig rc;
  rc.beta = parse_beta_spec(args.beta);
  rc.trials = args.trials;
  rc.seed = args.seed;
  rc.threads = args.threads;
  rc.simple_k = args.simple_k;
  rc.opt = reference;
  rc.instance_label = args.instance;

  TrialsResult result;
  if (auto* sys = std::get_if<SetSystem>(&loaded)) {
    rc.algorithm = parse_algorithm(args.algorithm);
    const bool needs_beta =
        rc.algorithm == AlgorithmId::kLoc || rc.algorithm == AlgorithmId::kCip;
    if (needs_beta && rc.beta.mode == BetaMode::kKnownOpt) {
      rc.opt = require_known_opt(*sys, reference);
    }
    result = run_trials(*sys, rc);
  } else if (auto* cip = std::get_if<CipInstance>(&loaded)) {
    rc.algorithm = parse_algorithm(args.algorithm);
    if (rc.algorithm != AlgorithmId::kCip) {
      throw Error("covering-IP instances run with --algorithm cip");
    }
    if (rc.beta.mode == BetaMode::kKnownOpt && !rc.opt) {
      throw Error(
          "known-opt beta needs an optimum reference for covering IPs (meta sidecar); "
          "pass --beta fixed:<value> instead");
    }
    result = run_trials(*cip, rc);
  } else {
    auto* batched = std::get_if<BatchedInstance>(&loaded);
    BatchedAlgorithm alg = parse_batched_algorithm(args.algorithm);
    if (alg == BatchedAlgorithm::kLocPerElement && rc.beta.mode == BetaMode::kKnownOpt) {
      rc.opt = require_known_opt(batched->base, reference);
    }
    result = run_batched_trials(*batched, alg, rc);
  }

  std::string csv = stats_csv(std::span<const TrialStats>(&result.stats, 1));
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(args.out, csv);
    write_text_file(args.out + ".raw.csv", raw_costs_csv(result.costs));
    std::cout << "wrote " << args.out << " and " << args.out << ".raw.csv\n";
  }
  return 0;
}

struct SweepArgs {
  std::string grid;
  std::string beta = "known-opt";
  std::string out;
  std::uint64_t seed = 1;
  int trials = 20;
  int threads = 1;
  int simple_k = 0;
};

int do_sweep(const SweepArgs& args) {
  MetaJson grid;
  try {
    grid = MetaJson::parse(read_text_file(args.grid));
  } catch (const nlohmann::json::exception& err) {
    throw Error(args.grid + ": bad grid json: " + err.what());
  }
  SweepConfig cfg;
  cfg.beta = parse_beta_spec(args.beta);
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  cfg.simple_k = args.simple_k;
  if (!grid.contains("points") || !grid.contains("algorithms")) {
    throw Error(args.grid + ": grid json needs \"points\" and \"algorithms\" arrays");
  }
  for (const auto& point : grid["points"]) {
    GenSpec spec;
    spec.family = point.at("family").get<std::string>();
    spec.seed = point.value("seed", std::uint64_t{1});
    spec.n = point.value("n", 0);
    spec.m = point.value("m", 0);
    spec.k = point.value("k", 0);
    spec.p_extra = point.value("p_extra", 0.0);
    spec.cost_jitter = point.value("cost_jitter", 0.0);
    spec.levels = point.value("levels", 0);
    spec.r = point.value("r", 0);
    spec.batches = point.value("batches", 0);
    if (point.contains("inner")) {
      spec.inner = load_set_system(point["inner"].get<std::string>());
    }
    if (point.contains("inner_opt")) spec.inner_opt = point["inner_opt"].get<double>();
    cfg.points.push_back(std::move(spec));
  }
  for (const auto& name : grid["algorithms"]) {
    cfg.algorithms.push_back(parse_algorithm(name.get<std::string>()));
  }
  std::vector<SweepRow> rows = run_sweep(cfg);
  emit(args.out, sweep_csv(rows));
  return 0;
}

struct TraceArgs {
  std::string instance;
  std::string algorithm = "loc";
  std::string beta = "known-opt";
  std::string out;
  std::uint64_t seed = 1;
};

int do_trace(const TraceArgs& args) {
  LoadedInstance loaded = load_instance(args.instance);
  auto* sys = std::get_if<SetSystem>(&loaded);
  if (!sys) throw Error("trace runs on plain set-cover instances");
  std::optional<MetaJson> meta = load_meta_for(args.instance);
  std::optional<double> reference = meta ? meta_opt(*meta) : std::nullopt;

  // Reference weights: the planted cover when the sidecar names one,
  // otherwise an exact optimal cover.
  std::vector<double> xstar(static_cast<std::size_t>(sys->m), 0.0);
  if (meta && meta->contains("planted_sets")) {
    for (const auto& id : (*meta)["planted_sets"]) {
      xstar[static_cast<std::size_t>(id.get<int>() - 1)] = 1.0;
    }
  } else {
    if (sys->m > 64) {
      throw Error(
          "trace needs reference weights: no planted_sets in the meta sidecar and the exact "
          "oracle handles at most 64 sets");
    }
    OptCertificate cert = exact_opt(*sys);
    if (!cert.exact) throw Error("exact oracle gave up; cannot build reference weights");
    for (int j : cert.sets) xstar[static_cast<std::size_t>(j)] = 1.0;
  }

  BetaSpec bspec = parse_beta_spec(args.beta);
  double beta = 0.0;
  if (bspec.mode == BetaMode::kKnownOpt) {
    beta = require_known_opt(*sys, reference);
  } else if (bspec.mode == BetaMode::kFixed) {
    beta = bspec.value;
  } else {
    throw Error("trace needs a concrete budget: use --beta known-opt or fixed:<value>");
  }

  RngStream rng(args.seed);
  ArrivalOrder order = rng.shuffle(sys->n);
  Trace trace;
  if (args.algorithm == "loc") {
    IncidenceIndex index = build_incidence(*sys);
    trace = trace_loc_run(*sys, index, order, beta, rng, xstar);
  } else if (args.algorithm == "cip") {
    trace = trace_cip_run(set_system_to_cip(*sys), order, beta, rng, xstar);
  } else {
    throw Error("trace supports --algorithm loc or cip");
  }
  emit(args.out, trace_csv(trace));
  return 0;
}

int do_check(const std::vector<std::string>& names) {
  std::vector<CriterionResult> results;
  if (names.empty()) {
    results = run_all_acceptance();
  } else {
    for (const std::string& name : names) results.push_back(run_acceptance(name));
  }
  bool all_passed = true;
  for (const CriterionResult& result : results) {
    std::cout << format_criterion_line(result) << "\n";
    all_passed = all_passed && result.passed;
  }
  return all_passed ? 0 : 1;
}

struct OptArgs {
  std::string instance;
  std::string out;
  bool exhaustive = false;
  long long node_budget = 20'000'000;
};

int do_opt(const OptArgs& args) {
  LoadedInstance loaded = load_instance(args.instance);
  auto* sys = std::get_if<SetSystem>(&loaded);
  if (!sys) throw Error("the exact oracle covers set-cover instances only");
  OptLimits limits;
  limits.force_exhaustive = args.exhaustive;
  limits.node_budget = args.node_budget;
  OptCertificate cert = exact_opt(*sys, limits);

  std::string text;
  text += "cost " + format_double(cert.cost) + "\n";
  text += "sets";
  for (int j : cert.sets) text += " " + std::to_string(j + 1);
  text += "\n";
  text += std::string("exact ") + (cert.exact ? "true" : "false") + "\n";
  text += "lower_bound " + format_double(cert.lower_bound) + "\n";
  text += "upper_bound " + format_double(cert.upper_bound) + "\n";
  text += "nodes " + std::to_string(cert.nodes) + "\n";
  text += std::string("mode ") +
          (cert.mode == OptMode::kExhaustive ? "exhaustive" : "branch-and-bound") + "\n";
  emit(args.out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-order set cover / covering-IP workbench"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance file plus its meta sidecar");
  gen->add_option("--family", gen_args.family,
                  "planted | upper-triangular | recursive | binomial | product-batched")
      ->required();
  gen->add_option("--out", gen_args.out, "instance file to write")->required();
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--n", gen_args.n, "elements");
  gen->add_option("--m", gen_args.m, "sets");
  gen->add_option("--k", gen_args.k, "planted cover size");
  gen->add_option("--p-extra", gen_args.p_extra, "decoy membership probability");
  gen->add_option("--cost-jitter", gen_args.cost_jitter, "costs drawn from [1, 1+jitter]");
  gen->add_option("--levels", gen_args.levels, "recursive family rounds");
  gen->add_option("--r", gen_args.r, "binomial family subset size");
  gen->add_option("--batches", gen_args.batches, "product family outer size N");
  gen->add_option("--inner", gen_args.inner_path, "product family inner instance file");
  CLI::Option* inner_opt_option =
      gen->add_option("--inner-opt", gen_args.inner_opt, "known optimum of the inner instance");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "random-order trials -> stats CSV");
  run->add_option("instance", run_args.instance, "instance file")->required();
  run->add_option("--algorithm,-a", run_args.algorithm,
                  "loc | unit-loc | simple-loc | naive | bn-online | greedy | cip "
                  "(batched files: loc | greedy-batch | naive)");
  run->add_option("--trials", run_args.trials, "number of random-order trials");
  run->add_option("--seed", run_args.seed, "trial master seed");
  run->add_option("--beta", run_args.beta, "known-opt | guess-double | fixed:<value>");
  run->add_option("--threads", run_args.threads, "worker threads (never changes results)");
  run->add_option("--k", run_args.simple_k, "simple-loc tuple size");
  run->add_option("--out", run_args.out, "stats CSV path (per-trial costs go to <out>.raw.csv)");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "generate a grid of instances and emit one CSV");
  sweep->add_option("grid", sweep_args.grid, "grid json with points[] and algorithms[]")
      ->required();
  sweep->add_option("--trials", sweep_args.trials, "trials per grid point");
  sweep->add_option("--seed", sweep_args.seed, "sweep master seed");
  sweep->add_option("--beta", sweep_args.beta, "known-opt | guess-double | fixed:<value>");
  sweep->add_option("--threads", sweep_args.threads, "worker threads");
  sweep->add_option("--k", sweep_args.simple_k, "simple-loc tuple size override");
  sweep->add_option("--out", sweep_args.out, "CSV path (stdout when omitted)");

  TraceArgs trace_args;
  CLI::App* trace = app.add_subcommand("trace", "one traced run -> per-arrival CSV");
  trace->add_option("instance", trace_args.instance, "set-cover instance file")->required();
  trace->add_option("--algorithm,-a", trace_args.algorithm, "loc | cip");
  trace->add_option("--seed", trace_args.seed, "run seed");
  trace->add_option("--beta", trace_args.beta, "known-opt | fixed:<value>");
  trace->add_option("--out", trace_args.out, "trace CSV path (stdout when omitted)");

  std::vector<std::string> check_names;
  CLI::App* check = app.add_subcommand("check", "run acceptance checks (all when none named)");
  check->add_option("names", check_names, "criterion names");

  OptArgs opt_args;
  CLI::App* opt = app.add_subcommand("opt", "exact minimum-cost cover certificate");
  opt->add_option("instance", opt_args.instance, "set-cover instance file")->required();
  opt->add_flag("--exhaustive", opt_args.exhaustive, "force the exhaustive oracle (m <= 25)");
  opt->add_option("--node-budget", opt_args.node_budget, "branch-and-bound node budget");
  opt->add_option("--out", opt_args.out, "certificate path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    gen_args.has_inner_opt = inner_opt_option->count() > 0;
    if (gen->parsed()) return do_gen(gen_args);
    if (run->parsed()) return do_run(run_args);
    if (sweep->parsed()) return do_sweep(sweep_args);
    if (trace->parsed()) return do_trace(trace_args);
    if (check->parsed()) return do_check(check_names);
    if (opt->parsed()) return do_opt(opt_args);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
