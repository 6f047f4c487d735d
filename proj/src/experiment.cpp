#include "indtree/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "indtree/rng.hpp"

namespace indtree {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

long long parse_ll(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for '" + key + "': " + value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad unsigned integer for '" + key + "': " + value);
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad real for '" + key + "': " + value);
  }
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw std::invalid_argument("config: bad flag for '" + key + "': " + value);
}

std::vector<int> parse_int_list(const std::string& key, std::string value) {
  std::replace(value.begin(), value.end(), ',', ' ');
  std::istringstream in(value);
  std::vector<int> out;
  long long v = 0;
  while (in >> v) out.push_back(static_cast<int>(v));
  if (!in.eof()) throw std::invalid_argument("config: bad integer list for '" + key + "'");
  return out;
}

// Runs body(trial_index, worker_index), each trial exactly once. Trials are
// claimed from an atomic counter, so scheduling varies but every output slot
// depends only on its trial index.
void parallel_trials(long long trials, int workers,
                     const std::function<void(long long, int)>& body) {
  workers = static_cast<int>(std::min<long long>(workers, trials));
  if (workers <= 1) {
    for (long long i = 0; i < trials; ++i) body(i, 0);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      while (true) {
        const long long i = next.fetch_add(1);
        if (i >= trials) return;
        try {
          body(i, w);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(trials);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

const char* window_name(Window w, bool censored) {
  if (censored) return "censored";
  switch (w) {
    case Window::below: return "below";
    case Window::k0: return "k0";
    case Window::k0_plus_1: return "k0_plus_1";
    case Window::above: return "above";
  }
  return "?";
}

double freq_se(double freq, long long n) {
  if (n <= 0) return 0.0;
  return std::sqrt(std::max(0.0, freq * (1.0 - freq)) / static_cast<double>(n));
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "concentration") return Mode::concentration;
  if (name == "moments") return Mode::moments;
  if (name == "drift-report" || name == "drift_report") return Mode::drift_report;
  throw std::invalid_argument("config: unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::concentration: return "concentration";
    case Mode::moments: return "moments";
    case Mode::drift_report: return "drift-report";
  }
  return "?";
}

void ExperimentConfig::apply_line(const std::string& raw) {
  std::string line = raw;
  const auto hash = line.find('#');
  if (hash != std::string::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("config: expected 'key = value': " + raw);
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key == "n") {
    n = parse_ll(key, value);
  } else if (key == "p") {
    p = parse_real(key, value);
  } else if (key == "trials") {
    trials = parse_ll(key, value);
  } else if (key == "master_seed" || key == "seed") {
    master_seed = parse_u64(key, value);
  } else if (key == "mode") {
    mode = parse_mode(value);
  } else if (key == "k_list") {
    k_list = parse_int_list(key, value);
  } else if (key == "workers" || key == "worker_count") {
    worker_count = static_cast<int>(parse_ll(key, value));
  } else if (key == "node_budget") {
    node_budget = parse_u64(key, value);
  } else if (key == "exact_n_cap") {
    exact_n_cap = parse_ll(key, value);
  } else if (key == "timing") {
    timing = parse_flag(key, value);
  } else if (key == "heuristic_trials") {
    heuristic_trials = parse_ll(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  ExperimentConfig config;
  std::string line;
  while (std::getline(in, line)) config.apply_line(line);
  return config;
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: requires n >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("config: requires 0 < p <= 1");
  if (trials < 1) throw std::invalid_argument("config: requires trials >= 1");
  if (worker_count < 1) throw std::invalid_argument("config: requires workers >= 1");
  if (node_budget < 1) throw std::invalid_argument("config: requires node_budget >= 1");
}

ConcentrationResult run_concentration(const ExperimentConfig& config) {
  config.validate();
  if (config.mode != Mode::concentration) {
    throw std::invalid_argument("run_concentration: config mode mismatch");
  }
  if (config.n > config.exact_n_cap) {
    throw BudgetExceeded("run_concentration: n exceeds the exact-solver cap (" +
                         std::to_string(config.exact_n_cap) +
                         "); raise exact_n_cap or use drift-report heuristics");
  }

  ConcentrationResult result;
  result.report = compute_threshold(config.n, config.p);
  const long long k0 = result.report.k0;
  result.records.resize(static_cast<std::size_t>(config.trials));

  parallel_trials(config.trials, config.worker_count, [&](long long i, int) {
    TrialRecord& rec = result.records[static_cast<std::size_t>(i)];
    rec.trial_index = i;
    rec.seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(i));
    const Graph g = sample_gnp(static_cast<int>(config.n), config.p, rec.seed);
    const auto start = std::chrono::steady_clock::now();
    const SolveResult solved = max_induced_tree(g, config.node_budget);
    const auto stop = std::chrono::steady_clock::now();
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rec.solver_nodes = solved.nodes_explored;
    rec.censored = solved.budget_exhausted;
    rec.t_value = rec.censored ? -1 : solved.size;
    if (!rec.censored) {
      if (solved.size < k0) {
        rec.in_window = Window::below;
      } else if (solved.size == k0) {
        rec.in_window = Window::k0;
      } else if (solved.size == k0 + 1) {
        rec.in_window = Window::k0_plus_1;
      } else {
        rec.in_window = Window::above;
      }
    }
  });

  SummaryStats& stats = result.stats;
  stats.trials_total = config.trials;
  long long counts[4] = {0, 0, 0, 0};
  for (const TrialRecord& rec : result.records) {
    if (rec.censored) {
      ++stats.censored;
    } else {
      ++counts[static_cast<int>(rec.in_window)];
    }
  }
  stats.trials_effective = stats.trials_total - stats.censored;
  if (stats.trials_effective > 0) {
    const double eff = static_cast<double>(stats.trials_effective);
    stats.freq_below = counts[0] / eff;
    stats.freq_k0 = counts[1] / eff;
    stats.freq_k0p1 = counts[2] / eff;
    stats.freq_above = counts[3] / eff;
  }
  stats.se_below = freq_se(stats.freq_below, stats.trials_effective);
  stats.se_k0 = freq_se(stats.freq_k0, stats.trials_effective);
  stats.se_k0p1 = freq_se(stats.freq_k0p1, stats.trials_effective);
  stats.se_above = freq_se(stats.freq_above, stats.trials_effective);
  stats.markov_bound_k0p2 =
      k0 + 2 <= config.n ? markov_tail(config.n, config.p, k0 + 2) : 0.0;
  stats.drift_bound = drift_tail(config.n, config.p).value;
  return result;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double value, int digits) {
  char buf[96];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

void write_concentration_csv(std::ostream& out, const ExperimentConfig& config,
                             const ConcentrationResult& result) {
  out << "trial_index,seed,n,p,t_value,k0,in_window,solver_nodes,elapsed_ms\n";
  const std::string n_str = std::to_string(config.n);
  const std::string p_str = format_double(config.p);
  const std::string k0_str = std::to_string(result.report.k0);
  for (const TrialRecord& rec : result.records) {
    out << rec.trial_index << ',' << rec.seed << ',' << n_str << ',' << p_str << ','
        << rec.t_value << ',' << k0_str << ',' << window_name(rec.in_window, rec.censored)
        << ',' << rec.solver_nodes << ','
        << (config.timing ? format_fixed(rec.elapsed_ms, 3) : std::string("0.000")) << '\n';
  }
}

std::string concentration_csv_string(const ExperimentConfig& config,
                                     const ConcentrationResult& result) {
  std::ostringstream out;
  write_concentration_csv(out, config, result);
  return out.str();
}

void write_summary(std::ostream& out, const ConcentrationResult& result) {
  const SummaryStats& s = result.stats;
  out << "trials            " << s.trials_total << '\n'
      << "censored          " << s.censored << '\n'
      << "k0                " << result.report.k0 << '\n'
      << "k_unit            " << result.report.k_unit << '\n'
      << "freq_below        " << format_double(s.freq_below) << " (se " << format_double(s.se_below) << ")\n"
      << "freq_k0           " << format_double(s.freq_k0) << " (se " << format_double(s.se_k0) << ")\n"
      << "freq_k0_plus_1    " << format_double(s.freq_k0p1) << " (se " << format_double(s.se_k0p1) << ")\n"
      << "freq_above        " << format_double(s.freq_above) << " (se " << format_double(s.se_above) << ")\n"
      << "markov_tail_k0p2  " << format_double(s.markov_bound_k0p2) << '\n'
      << "drift_bound       " << format_double(s.drift_bound) << '\n';
}

MomentsResult run_moments(const ExperimentConfig& config) {
  config.validate();
  if (config.mode != Mode::moments) throw std::invalid_argument("run_moments: config mode mismatch");
  if (config.n > 14) {
    throw BudgetExceeded("run_moments: exact subset counters are exponential; n <= 14 enforced");
  }
  if (!(config.p < 1.0)) throw std::invalid_argument("run_moments: requires p < 1");
  std::vector<int> ks = config.k_list;
  if (ks.empty()) {
    for (int k = 1; k <= config.n; ++k) ks.push_back(k);
  }
  for (int k : ks) {
    if (k < 1 || k > config.n) throw std::invalid_argument("run_moments: k_list entry out of range");
  }

  const int n = static_cast<int>(config.n);
  struct Accumulator {
    std::vector<long long> sum, sum_sq;
  };
  // Integer accumulation is exact, so totals are independent of how trials
  // are split across workers.
  const int workers = std::max(1, config.worker_count);
  std::vector<std::array<Accumulator, 3>> partial(workers);
  for (auto& acc : partial) {
    for (auto& a : acc) {
      a.sum.assign(n + 1, 0);
      a.sum_sq.assign(n + 1, 0);
    }
  }
  parallel_trials(config.trials, config.worker_count, [&](long long i, int worker) {
    auto& acc = partial[worker];
    const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(i));
    const Graph g = sample_gnp(n, config.p, seed);
    const TreeTallies tallies = tally_induced_trees(g, config.node_budget);
    for (int k = 1; k <= n; ++k) {
      const long long x = static_cast<long long>(tallies.induced[k]);
      const long long y = static_cast<long long>(tallies.fortified[k]);
      const long long w = static_cast<long long>(tallies.maximal[k]);
      acc[0].sum[k] += x;
      acc[0].sum_sq[k] += x * x;
      acc[1].sum[k] += y;
      acc[1].sum_sq[k] += y * y;
      acc[2].sum[k] += w;
      acc[2].sum_sq[k] += w * w;
    }
  });

  std::array<Accumulator, 3> total;
  for (auto& a : total) {
    a.sum.assign(n + 1, 0);
    a.sum_sq.assign(n + 1, 0);
  }
  for (const auto& acc : partial) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 1; k <= n; ++k) {
        total[c].sum[k] += acc[c].sum[k];
        total[c].sum_sq[k] += acc[c].sum_sq[k];
      }
    }
  }

  const double trials_d = static_cast<double>(config.trials);
  const auto mean_of = [&](int c, int k) { return static_cast<double>(total[c].sum[k]) / trials_d; };
  const auto se_of = [&](int c, int k) {
    if (config.trials < 2) return 0.0;
    const double mean = mean_of(c, k);
    const double var =
        (static_cast<double>(total[c].sum_sq[k]) - trials_d * mean * mean) / (trials_d - 1.0);
    return std::sqrt(std::max(0.0, var) / trials_d);
  };

  MomentsResult result;
  result.trials = config.trials;
  for (int k : ks) {
    MomentsRow row;
    row.k = k;
    const double expected = std::exp(log_expected_tree_count(config.n, k, config.p).log_abs());
    row.expected_induced = expected;
    row.expected_fortified = expected * fortified_ratio(config.n, k, config.p).value;
    row.expected_maximal = expected * maximal_ratio(config.n, k, config.p).value;
    row.mean_induced = mean_of(0, k);
    row.se_induced = se_of(0, k);
    row.mean_fortified = mean_of(1, k);
    row.se_fortified = se_of(1, k);
    row.mean_maximal = mean_of(2, k);
    row.se_maximal = se_of(2, k);
    result.rows.push_back(row);
  }
  return result;
}

void write_moments_csv(std::ostream& out, const ExperimentConfig& config,
                       const MomentsResult& result) {
  out << "n,p,k,trials,mean_induced,se_induced,expected_induced,"
         "mean_fortified,se_fortified,expected_fortified,"
         "mean_maximal,se_maximal,expected_maximal\n";
  for (const MomentsRow& row : result.rows) {
    out << config.n << ',' << format_double(config.p) << ',' << row.k << ',' << result.trials
        << ',' << format_double(row.mean_induced) << ',' << format_double(row.se_induced) << ','
        << format_double(row.expected_induced) << ',' << format_double(row.mean_fortified) << ','
        << format_double(row.se_fortified) << ',' << format_double(row.expected_fortified) << ','
        << format_double(row.mean_maximal) << ',' << format_double(row.se_maximal) << ','
        << format_double(row.expected_maximal) << '\n';
  }
}

DriftReport run_drift_report(const ExperimentConfig& config) {
  config.validate();
  if (config.mode != Mode::drift_report) {
    throw std::invalid_argument("run_drift_report: config mode mismatch");
  }
  if (!(config.p < 1.0)) throw std::invalid_argument("run_drift_report: requires p < 1");
  DriftReport report;
  report.report = compute_threshold(config.n, config.p);
  report.tail = drift_tail(config.n, config.p);

  LogReal expected_sum = LogReal::zero();
  for (const DriftWindowTerm& term : report.tail.terms) {
    expected_sum = expected_sum + LogReal::from_log(term.log_expected);
  }
  report.window_expected_sum = expected_sum.value();

  for (long long i = 0; i < config.heuristic_trials; ++i) {
    // Separate derived streams for the sampler and for the grower's choices.
    const std::uint64_t graph_seed = derive_seed(config.master_seed, 2 * static_cast<std::uint64_t>(i));
    const std::uint64_t grow_seed = derive_seed(config.master_seed, 2 * static_cast<std::uint64_t>(i) + 1);
    const SparseGraph g = sample_gnp_sparse(config.n, config.p, graph_seed);
    report.heuristic_sizes.push_back(greedy_induced_tree_size(g, grow_seed));
  }
  return report;
}

void write_drift_report(std::ostream& out, const DriftReport& report) {
  const ThresholdReport& t = report.report;
  out << "n                 " << t.n << '\n'
      << "p                 " << format_double(t.p) << '\n'
      << "k0                " << t.k0 << '\n'
      << "k_unit            " << t.k_unit << '\n'
      << "approx_k          " << format_double(t.approx_k) << '\n'
      << "drift_cut         " << format_double(t.drift_cut) << '\n'
      << "window            [" << report.tail.k_low << ", " << report.tail.k_high << "]\n"
      << "window_width      " << format_double(static_cast<double>(t.k0) - t.drift_cut) << '\n';
  if (report.tail.window_collapsed) {
    out << "note              window width below 1; collapses to {k0, k0+1}\n";
  }
  out << "drift_bound       " << format_double(report.tail.value) << '\n'
      << "window_E[X]_sum   " << format_double(report.window_expected_sum) << '\n';
  out << "k, log E[X_k], maximal_ratio, E[W_k]\n";
  for (const DriftWindowTerm& term : report.tail.terms) {
    out << "  " << term.k << ", " << format_double(term.log_expected) << ", "
        << format_double(term.maximal_ratio) << ", " << format_double(term.expected_maximal)
        << '\n';
  }
  if (!report.heuristic_sizes.empty()) {
    int lo = report.heuristic_sizes.front(), hi = lo;
    double mean = 0.0;
    for (int s : report.heuristic_sizes) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      mean += s;
    }
    mean /= static_cast<double>(report.heuristic_sizes.size());
    out << "HEURISTIC greedy tree sizes over " << report.heuristic_sizes.size()
        << " samples: min " << lo << ", mean " << format_double(mean) << ", max " << hi
        << " (no exactness claim)\n";
  }
}

}  // namespace indtree
