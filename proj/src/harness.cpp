#include "rocover/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "rocover/format.hpp"

namespace rocover {
namespace {

// Runs fn(0..count-1) across up to `threads` workers. Which worker runs which
// index is scheduling-dependent, but fn writes only to its own index, so the
// aggregate is identical for every thread count.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void check_csv_label(std::string_view label) {
  if (label.find(',') != std::string_view::npos || label.find('\n') != std::string_view::npos) {
    throw Error("csv labels must not contain commas or newlines: " + std::string(label));
  }
}

std::string optional_field(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::optional<double> parse_optional_field(std::string_view field) {
  if (field.empty()) return std::nullopt;
  return parse_double(field);
}

double resolve_fixed_beta(const BetaSpec& spec, const std::optional<double>& opt) {
  switch (spec.mode) {
    case BetaMode::kKnownOpt:
      if (!opt) {
        throw Error(
            "known-opt beta mode requires an optimum reference "
            "(planted cost, meta sidecar, or the exact oracle)");
      }
      return *opt;
    case BetaMode::kFixed:
      return spec.value;
    case BetaMode::kGuessDouble:
      throw Error("guess-double beta mode is available for the set-cover rounds (loc) only");
  }
  throw Error("unreachable beta mode");
}

}  // namespace

std::string_view algorithm_name(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::kLoc: return "loc";
    case AlgorithmId::kUnitLoc: return "unit-loc";
    case AlgorithmId::kSimpleLoc: return "simple-loc";
    case AlgorithmId::kNaive: return "naive";
    case AlgorithmId::kBnOnline: return "bn-online";
    case AlgorithmId::kGreedy: return "greedy";
    case AlgorithmId::kCip: return "cip";
  }
  throw Error("unreachable algorithm id");
}

AlgorithmId parse_algorithm(std::string_view name) {
  for (AlgorithmId id : {AlgorithmId::kLoc, AlgorithmId::kUnitLoc, AlgorithmId::kSimpleLoc,
                         AlgorithmId::kNaive, AlgorithmId::kBnOnline, AlgorithmId::kGreedy,
                         AlgorithmId::kCip}) {
    if (name == algorithm_name(id)) return id;
  }
  throw Error("unknown algorithm '" + std::string(name) +
              "' (expected loc, unit-loc, simple-loc, naive, bn-online, greedy, or cip)");
}

BetaSpec parse_beta_spec(std::string_view text) {
  BetaSpec spec;
  if (text == "known-opt") {
    spec.mode = BetaMode::kKnownOpt;
    return spec;
  }
  if (text == "guess-double") {
    spec.mode = BetaMode::kGuessDouble;
    return spec;
  }
  constexpr std::string_view kFixedPrefix = "fixed:";
  if (text.substr(0, kFixedPrefix.size()) == kFixedPrefix) {
    spec.mode = BetaMode::kFixed;
    double value = 0.0;
    try {
      value = parse_double(text.substr(kFixedPrefix.size()));
    } catch (const std::exception&) {
      throw Error("bad fixed beta value in '" + std::string(text) + "'");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error("fixed beta must be positive and finite");
    }
    spec.value = value;
    return spec;
  }
  throw Error("unknown beta mode '" + std::string(text) +
              "' (expected known-opt, guess-double, or fixed:<value>)");
}

std::string beta_spec_name(const BetaSpec& spec) {
  switch (spec.mode) {
    case BetaMode::kKnownOpt: return "known-opt";
    case BetaMode::kGuessDouble: return "guess-double";
    case BetaMode::kFixed: return "fixed:" + format_double(spec.value);
  }
  throw Error("unreachable beta mode");
}

TrialStats compute_stats(std::span<const double> costs, std::optional<double> opt,
                         std::string algorithm, std::string instance) {
  if (costs.empty()) throw Error("compute_stats: no trials");
  TrialStats stats;
  stats.algorithm = std::move(algorithm);
  stats.instance = std::move(instance);
  stats.trials = static_cast<int>(costs.size());
  double sum = 0.0;
  stats.min = costs[0];
  stats.max = costs[0];
  for (double c : costs) {
    sum += c;
    stats.min = std::min(stats.min, c);
    stats.max = std::max(stats.max, c);
  }
  stats.mean = sum / static_cast<double>(costs.size());
  if (costs.size() > 1) {
    double ss = 0.0;
    for (double c : costs) {
      double d = c - stats.mean;
      ss += d * d;
    }
    stats.std_dev = std::sqrt(ss / static_cast<double>(costs.size() - 1));
    stats.ci = 1.96 * stats.std_dev / std::sqrt(static_cast<double>(costs.size()));
  }
  stats.opt = opt;
  if (opt) stats.ratio = stats.mean / *opt;
  return stats;
}

TrialsResult run_trials(const SetSystem& sys, const RunConfig& cfg) {
  if (cfg.trials < 1) throw Error("run_trials: trials must be >= 1");
  if (auto report = validate(sys); !report.empty()) {
    throw Error("run_trials: invalid instance: " + report.front());
  }

  if (cfg.algorithm == AlgorithmId::kCip) {
    return run_trials(set_system_to_cip(sys), cfg);
  }

  const IncidenceIndex index = build_incidence(sys);
  const int T = cfg.trials;
  std::vector<double> costs(static_cast<std::size_t>(T), 0.0);

  if (cfg.algorithm == AlgorithmId::kGreedy) {
    // Order-independent reference; one evaluation serves every trial.
    double cost = greedy_offline(sys).cost;
    std::fill(costs.begin(), costs.end(), cost);
    TrialsResult result{std::move(costs), {}};
    result.stats = compute_stats(result.costs, cfg.opt,
                                 std::string(algorithm_name(cfg.algorithm)), cfg.instance_label);
    return result;
  }

  const bool guess_double =
      cfg.algorithm == AlgorithmId::kLoc && cfg.beta.mode == BetaMode::kGuessDouble;
  double beta = 0.0;
  if (cfg.algorithm == AlgorithmId::kLoc && !guess_double) {
    beta = resolve_fixed_beta(cfg.beta, cfg.opt);
  }
  if (cfg.algorithm == AlgorithmId::kSimpleLoc && cfg.simple_k < 1) {
    throw Error("simple-loc needs the cover size k (set RunConfig::simple_k)");
  }

  parallel_for(T, cfg.threads, [&](int i) {
    RngStream trial_rng = RngStream(cfg.seed).derive(static_cast<std::uint64_t>(i));
    ArrivalOrder order = trial_rng.shuffle(sys.n);
    switch (cfg.algorithm) {
      case AlgorithmId::kLoc:
        if (guess_double) {
          costs[static_cast<std::size_t>(i)] =
              guess_and_double(sys, index, order, trial_rng, cfg.gd_opts).cover.total_cost;
        } else {
          costs[static_cast<std::size_t>(i)] =
              loc_run(sys, index, order, beta, trial_rng, cfg.loc_opts).cover.total_cost;
        }
        break;
      case AlgorithmId::kUnitLoc:
        costs[static_cast<std::size_t>(i)] =
            unit_loc_run(sys, index, order, trial_rng, cfg.unit_opts).cover.total_cost;
        break;
      case AlgorithmId::kSimpleLoc:
        costs[static_cast<std::size_t>(i)] =
            simple_loc_run(sys, index, order, cfg.simple_k, trial_rng).cover.total_cost;
        break;
      case AlgorithmId::kNaive:
        costs[static_cast<std::size_t>(i)] = naive_online(sys, index, order).total_cost;
        break;
      case AlgorithmId::kBnOnline:
        costs[static_cast<std::size_t>(i)] =
            bn_online(sys, index, order, trial_rng).cover.total_cost;
        break;
      case AlgorithmId::kGreedy:
      case AlgorithmId::kCip:
        throw Error("unreachable algorithm dispatch");
    }
  });

  TrialsResult result{std::move(costs), {}};
  result.stats = compute_stats(result.costs, cfg.opt, std::string(algorithm_name(cfg.algorithm)),
                               cfg.instance_label);
  return result;
}

TrialsResult run_trials(const CipInstance& inst, const RunConfig& cfg) {
  if (cfg.algorithm != AlgorithmId::kCip) {
    throw Error("covering-IP instances run with the cip algorithm only");
  }
  if (cfg.trials < 1) throw Error("run_trials: trials must be >= 1");
  if (auto report = validate(inst); !report.empty()) {
    throw Error("run_trials: invalid instance: " + report.front());
  }
  const double beta = resolve_fixed_beta(cfg.beta, cfg.opt);

  const int T = cfg.trials;
  std::vector<double> costs(static_cast<std::size_t>(T), 0.0);
  parallel_for(T, cfg.threads, [&](int i) {
    RngStream trial_rng = RngStream(cfg.seed).derive(static_cast<std::uint64_t>(i));
    ArrivalOrder order = trial_rng.shuffle(inst.n);
    costs[static_cast<std::size_t>(i)] =
        cip_run(inst, order, beta, trial_rng, cfg.cip_opts).sol.total_cost;
  });

  TrialsResult result{std::move(costs), {}};
  result.stats = compute_stats(result.costs, cfg.opt, std::string(algorithm_name(cfg.algorithm)),
                               cfg.instance_label);
  return result;
}

std::string_view batched_algorithm_name(BatchedAlgorithm alg) {
  switch (alg) {
    case BatchedAlgorithm::kLocPerElement: return "loc";
    case BatchedAlgorithm::kGreedyPerBatch: return "greedy-batch";
    case BatchedAlgorithm::kNaive: return "naive";
  }
  throw Error("unreachable batched algorithm");
}

BatchedAlgorithm parse_batched_algorithm(std::string_view name) {
  for (BatchedAlgorithm alg : {BatchedAlgorithm::kLocPerElement,
                               BatchedAlgorithm::kGreedyPerBatch, BatchedAlgorithm::kNaive}) {
    if (name == batched_algorithm_name(alg)) return alg;
  }
  throw Error("unknown batched algorithm '" + std::string(name) +
              "' (expected loc, greedy-batch, or naive)");
}

double harmonic(int n) {
  double sum = 0.0;
  for (int i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

double batched_bound(double inner_opt, int batch_count) {
  return 0.5 * inner_opt * harmonic(batch_count);
}

double batched_single(const BatchedInstance& inst, const IncidenceIndex& index,
                      BatchedAlgorithm alg, double beta, RngStream& rng) {
  const SetSystem& sys = inst.base;
  const int batch_count = static_cast<int>(inst.batches.size());
  std::vector<int> batch_order = rng.shuffle(batch_count);

  if (alg == BatchedAlgorithm::kGreedyPerBatch) {
    std::vector<char> covered(static_cast<std::size_t>(sys.n), 0);
    std::vector<int> hits(static_cast<std::size_t>(sys.m), 0);
    std::vector<int> touched;
    std::vector<int> need;
    double cost = 0.0;
    for (int b : batch_order) {
      const auto& batch = inst.batches[static_cast<std::size_t>(b)];
      for (;;) {
        need.clear();
        for (int v : batch) {
          if (!covered[static_cast<std::size_t>(v)]) need.push_back(v);
        }
        if (need.empty()) break;
        // Count, per set, how many still-uncovered batch elements it holds;
        // only sets hitting the batch can be candidates.
        touched.clear();
        for (int v : need) {
          for (int j : index.sets_of[static_cast<std::size_t>(v)]) {
            if (hits[static_cast<std::size_t>(j)] == 0) touched.push_back(j);
            ++hits[static_cast<std::size_t>(j)];
          }
        }
        std::sort(touched.begin(), touched.end());
        int best = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int j : touched) {
          double ratio =
              sys.costs[static_cast<std::size_t>(j)] / static_cast<double>(hits[static_cast<std::size_t>(j)]);
          if (ratio < best_ratio) {
            best_ratio = ratio;
            best = j;
          }
        }
        for (int j : touched) hits[static_cast<std::size_t>(j)] = 0;
        if (best < 0) throw Error("batched run: a batch element has no covering set");
        cost += sys.costs[static_cast<std::size_t>(best)];
        for (int e : sys.members[static_cast<std::size_t>(best)]) {
          covered[static_cast<std::size_t>(e)] = 1;
        }
      }
    }
    return cost;
  }

  ArrivalOrder flat;
  flat.reserve(static_cast<std::size_t>(sys.n));
  for (int b : batch_order) {
    const auto& batch = inst.batches[static_cast<std::size_t>(b)];
    flat.insert(flat.end(), batch.begin(), batch.end());
  }
  if (alg == BatchedAlgorithm::kLocPerElement) {
    return loc_run(sys, index, flat, beta, rng).cover.total_cost;
  }
  return naive_online(sys, index, flat).total_cost;
}

TrialsResult run_batched_trials(const BatchedInstance& inst, BatchedAlgorithm alg,
                                const RunConfig& cfg) {
  if (cfg.trials < 1) throw Error("run_batched_trials: trials must be >= 1");
  if (auto report = validate(inst); !report.empty()) {
    throw Error("run_batched_trials: invalid instance: " + report.front());
  }
  const IncidenceIndex index = build_incidence(inst.base);
  double beta = 0.0;
  if (alg == BatchedAlgorithm::kLocPerElement) {
    beta = resolve_fixed_beta(cfg.beta, cfg.opt);
  }

  const int T = cfg.trials;
  std::vector<double> costs(static_cast<std::size_t>(T), 0.0);
  parallel_for(T, cfg.threads, [&](int i) {
    RngStream trial_rng = RngStream(cfg.seed).derive(static_cast<std::uint64_t>(i));
    costs[static_cast<std::size_t>(i)] = batched_single(inst, index, alg, beta, trial_rng);
  });

  TrialsResult result{std::move(costs), {}};
  result.stats = compute_stats(result.costs, cfg.opt, std::string(batched_algorithm_name(alg)),
                               cfg.instance_label);
  return result;
}

std::string stats_csv(std::span<const TrialStats> stats) {
  std::string out = "algorithm,instance,trials,mean,std,min,max,opt,ratio,ci\n";
  for (const TrialStats& s : stats) {
    check_csv_label(s.algorithm);
    check_csv_label(s.instance);
    out += s.algorithm;
    out += ',';
    out += s.instance;
    out += ',';
    out += std::to_string(s.trials);
    for (const std::string& field :
         {format_double(s.mean), format_double(s.std_dev), format_double(s.min),
          format_double(s.max), optional_field(s.opt), optional_field(s.ratio),
          format_double(s.ci)}) {
      out += ',';
      out += field;
    }
    out += '\n';
  }
  return out;
}

std::vector<TrialStats> parse_stats_csv(std::string_view text) {
  auto lines = split_char(text, '\n');
  if (lines.empty() || lines[0] != "algorithm,instance,trials,mean,std,min,max,opt,ratio,ci") {
    throw Error("stats csv: bad header");
  }
  std::vector<TrialStats> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_char(lines[i], ',');
    if (fields.size() != 10) throw Error("stats csv: expected 10 fields per row");
    TrialStats s;
    s.algorithm = std::string(fields[0]);
    s.instance = std::string(fields[1]);
    s.trials = static_cast<int>(parse_int(fields[2]));
    s.mean = parse_double(fields[3]);
    s.std_dev = parse_double(fields[4]);
    s.min = parse_double(fields[5]);
    s.max = parse_double(fields[6]);
    s.opt = parse_optional_field(fields[7]);
    s.ratio = parse_optional_field(fields[8]);
    s.ci = parse_double(fields[9]);
    rows.push_back(std::move(s));
  }
  return rows;
}

std::string raw_costs_csv(std::span<const double> costs) {
  std::string out = "trial,cost\n";
  for (std::size_t i = 0; i < costs.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_double(costs[i]);
    out += '\n';
  }
  return out;
}

std::vector<double> parse_raw_costs_csv(std::string_view text) {
  auto lines = split_char(text, '\n');
  if (lines.empty() || lines[0] != "trial,cost") throw Error("raw costs csv: bad header");
  std::vector<double> costs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_char(lines[i], ',');
    if (fields.size() != 2) throw Error("raw costs csv: expected 2 fields per row");
    if (parse_int(fields[0]) != static_cast<long long>(costs.size() + 1)) {
      throw Error("raw costs csv: trial ids must be 1-based and consecutive");
    }
    costs.push_back(parse_double(fields[1]));
  }
  return costs;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.points.empty()) throw Error("sweep: no grid points");
  if (cfg.algorithms.empty()) throw Error("sweep: no algorithms");
  std::vector<SweepRow> rows;
  rows.reserve(cfg.points.size() * cfg.algorithms.size());
  for (std::size_t pi = 0; pi < cfg.points.size(); ++pi) {
    const GenSpec& point = cfg.points[pi];
    GeneratedInstance generated = generate(point);
    const SetSystem* sys = nullptr;
    if (auto* s = std::get_if<SetSystem>(&generated.instance)) {
      sys = s;
    } else if (auto* b = std::get_if<BatchedInstance>(&generated.instance)) {
      sys = &b->base;  // swept over the flat element stream
    } else {
      throw Error("sweep supports set-system families only");
    }
    std::optional<double> opt = meta_opt(generated.meta);
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
      RunConfig rc;
      rc.algorithm = cfg.algorithms[ai];
      rc.beta = cfg.beta;
      rc.trials = cfg.trials;
      rc.threads = cfg.threads;
      rc.simple_k = cfg.simple_k > 0 ? cfg.simple_k : point.k;
      rc.seed = RngStream(cfg.seed).derive(pi, ai).next_u64();
      rc.opt = opt;
      rc.instance_label = point.family;
      TrialsResult result = run_trials(*sys, rc);
      SweepRow row;
      row.family = point.family;
      row.n = sys->n;
      row.m = sys->m;
      row.k = point.k;
      row.algorithm = std::string(algorithm_name(cfg.algorithms[ai]));
      row.trials = cfg.trials;
      row.mean_cost = result.stats.mean;
      row.std_dev = result.stats.std_dev;
      row.opt = result.stats.opt;
      row.ratio = result.stats.ratio;
      row.ci = result.stats.ci;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "family,n,m,k,algorithm,trials,mean_cost,std,opt,ratio,ci\n";
  for (const SweepRow& row : rows) {
    check_csv_label(row.family);
    check_csv_label(row.algorithm);
    out += row.family;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    out += row.algorithm;
    out += ',';
    out += std::to_string(row.trials);
    for (const std::string& field :
         {format_double(row.mean_cost), format_double(row.std_dev), optional_field(row.opt),
          optional_field(row.ratio), format_double(row.ci)}) {
      out += ',';
      out += field;
    }
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  auto lines = split_char(text, '\n');
  if (lines.empty() || lines[0] != "family,n,m,k,algorithm,trials,mean_cost,std,opt,ratio,ci") {
    throw Error("sweep csv: bad header");
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_char(lines[i], ',');
    if (fields.size() != 11) throw Error("sweep csv: expected 11 fields per row");
    SweepRow row;
    row.family = std::string(fields[0]);
    row.n = static_cast<int>(parse_int(fields[1]));
    row.m = static_cast<int>(parse_int(fields[2]));
    row.k = static_cast<int>(parse_int(fields[3]));
    row.algorithm = std::string(fields[4]);
    row.trials = static_cast<int>(parse_int(fields[5]));
    row.mean_cost = parse_double(fields[6]);
    row.std_dev = parse_double(fields[7]);
    row.opt = parse_optional_field(fields[8]);
    row.ratio = parse_optional_field(fields[9]);
    row.ci = parse_double(fields[10]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> meta_opt(const MetaJson& meta) {
  if (meta.contains("opt") && meta["opt"].is_number()) {
    return meta["opt"].get<double>();
  }
  return std::nullopt;
}

}  // namespace rocover
