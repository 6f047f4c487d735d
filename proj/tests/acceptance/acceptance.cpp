// Acceptance runner: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its own runtime budget; a run that
// produces the right numbers too slowly fails.
//
//   acceptance             runs every criterion
//   acceptance 1 5 9       runs a subset

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "indtree/combinatorics.hpp"
#include "indtree/experiment.hpp"
#include "indtree/graph.hpp"
#include "indtree/rng.hpp"
#include "indtree/threshold.hpp"
#include "indtree/tree_search.hpp"
#include "indtree/verify.hpp"

using namespace indtree;

namespace {

struct Criterion {
  int id;
  std::string description;
  double budget_seconds;
  bool (*run)(std::string& detail);
};

bool criterion_covering_oracle(std::string& detail) {
  long long checks = 0, failures = 0;
  for (int k = 1; k <= 7; ++k) {
    for (int ell = 1; ell <= k; ++ell) {
      for_each_partition(ell, [&](const std::vector<int>& parts) {
        const ForestProfile profile{k, parts};
        const BigInt formula = count_covering_trees(profile);
        for_each_profile_realization(profile, [&](const std::vector<std::pair<int, int>>& edges) {
          ++checks;
          if (brute_force_covering_trees(profile, edges) != formula) ++failures;
        });
      });
    }
  }
  detail = std::to_string(checks) + " realizations, " + std::to_string(failures) + " mismatches";
  return failures == 0;
}

bool criterion_composition_inequality(std::string& detail) {
  long long failures = 0;
  for (int ell = 1; ell <= 30; ++ell) {
    for (int m = 1; m <= ell; ++m) {
      if (!(composition_weight_sum(ell, m) < composition_weight_bound(ell, m))) ++failures;
    }
  }
  if (composition_weight_sum(1, 1) != 1.0) ++failures;
  if (composition_weight_sum(2, 2) != 1.0) ++failures;
  if (composition_weight_sum(3, 1) != 4.5) ++failures;
  detail = "465 inequalities + 3 spot values, " + std::to_string(failures) + " violations";
  return failures == 0;
}

bool criterion_pair_count_oracle(std::string& detail) {
  long long checks = 0, failures = 0;
  for (int k = 1; k <= 5; ++k) {
    for (int ell = 1; ell <= k; ++ell) {
      auto by_m = brute_overlapping_pair_counts(k, ell);
      for (int m = 1; m <= ell; ++m) {
        ++checks;
        if (count_overlapping_tree_pairs(k, ell, m) != BigInt(by_m.count(m) ? by_m[m] : 0)) {
          ++failures;
        }
      }
    }
  }
  if (count_overlapping_tree_pairs(2, 1, 1) != 1) ++failures;
  if (count_overlapping_tree_pairs(3, 2, 1) != 4) ++failures;
  if (count_overlapping_tree_pairs(3, 2, 2) != 1) ++failures;
  checks += 3;
  detail = std::to_string(checks) + " classes, " + std::to_string(failures) + " mismatches";
  return failures == 0;
}

bool criterion_pair_expectation_exact(std::string& detail) {
  const long long n = 8;
  const int k = 3;
  const double p = 0.3;
  const auto sums = brute_pair_expectation_sums(n, k, p);
  long long checks = 0, failures = 0;
  double worst = 0.0;
  for (int ell = 1; ell <= k; ++ell) {
    for (int m = 1; m <= ell; ++m) {
      ++checks;
      const auto it = sums.find({ell, m});
      const double oracle = it == sums.end() ? 0.0 : it->second;
      const double formula = pair_expectation_ratio(n, k, ell, m, p);
      const double rel = std::abs(formula - oracle) / std::max(1e-300, std::abs(oracle));
      if (oracle == 0.0 ? formula != 0.0 : rel > 1e-9) ++failures;
      worst = std::max(worst, oracle == 0.0 ? 0.0 : rel);
    }
  }
  std::ostringstream out;
  out << checks << " classes, worst relative error " << worst;
  detail = out.str();
  return failures == 0;
}

bool criterion_first_moment_monte_carlo(std::string& detail) {
  const long long trials = 100000;
  long long tested_cells = 0, leaked = 0, hard_failures = 0;
  int config_index = 0;
  for (const long long n : {10, 12, 14}) {
    for (const double p : {0.2, 0.5}) {
      ExperimentConfig config;
      config.n = n;
      config.p = p;
      config.trials = trials;
      config.mode = Mode::moments;
      config.master_seed = derive_seed(0xC5C5C5, config_index++);
      const MomentsResult result = run_moments(config);
      for (const MomentsRow& row : result.rows) {
        const double means[3] = {row.mean_induced, row.mean_fortified, row.mean_maximal};
        const double ses[3] = {row.se_induced, row.se_fortified, row.se_maximal};
        const double expects[3] = {row.expected_induced, row.expected_fortified,
                                   row.expected_maximal};
        for (int c = 0; c < 3; ++c) {
          if (ses[c] > 0.0) {
            ++tested_cells;
            if (std::abs(means[c] - expects[c]) > 3.0 * ses[c]) ++leaked;
          } else if (std::abs(expects[c] - means[c]) <= 1e-9 * (1.0 + std::abs(means[c]))) {
            // deterministic cell (zero variance), exact agreement
          } else if (expects[c] * static_cast<double>(trials) <= 10.0) {
            // expectation too small to observe in this many trials
          } else {
            ++hard_failures;
          }
        }
      }
    }
  }
  std::ostringstream out;
  out << tested_cells << " three-sigma cells, " << leaked << " outside (allowance 2), "
      << hard_failures << " degenerate-cell failures";
  detail = out.str();
  return leaked <= 2 && hard_failures == 0;
}

bool criterion_solver_oracle(std::string& detail) {
  long long failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + trial % 7;                   // spans n <= 10
    const double p = 0.1 * (1 + (trial / 7) % 9);  // 0.1 .. 0.9
    const Graph g = sample_gnp(n, p, derive_seed(0xACCE97, trial));
    const SolveResult fast = max_induced_tree(g);
    const SolveResult slow = brute_force_max_induced_tree(g);
    if (fast.size != slow.size || !is_induced_tree(g, fast.witness)) ++failures;
  }
  for (int n = 2; n <= 9; ++n) {
    if (max_induced_tree(make_complete(n)).size != 2) ++failures;
  }
  for (int n = 3; n <= 10; ++n) {
    if (max_induced_tree(make_cycle(n)).size != n - 1) ++failures;
  }
  for (int n = 1; n <= 10; ++n) {
    if (max_induced_tree(make_path(n)).size != n) ++failures;
  }
  for (int m = 1; m <= 9; ++m) {
    if (max_induced_tree(make_star(m)).size != m + 1) ++failures;
  }
  detail = "1000 random + 35 structured graphs, " + std::to_string(failures) + " mismatches";
  return failures == 0;
}

bool criterion_threshold_definitional(std::string& detail) {
  UnitRng rng(0x7E57ED);
  int kept = 0;
  long long failures = 0;
  double worst_gap = 0.0;
  // Sampled from the regime where Eq-style anchoring is meaningful at
  // finite n: the k0 deviation scales like ((2 ln(np)+2)/np + p ln(np)) / p,
  // so np >= 100 with p(ln(np)+2) <= 0.2 keeps it well inside 0.5/p.
  while (kept < 200) {
    const double n_real = std::pow(10.0, 3.0 + 4.0 * rng.next_unit());
    const long long n = static_cast<long long>(n_real);
    const double np = std::pow(10.0, 2.0 + 1.3 * rng.next_unit());
    const double p = np / static_cast<double>(n);
    const double lnn = std::log(static_cast<double>(n));
    if (p * (std::log(np) + 2.0) > 0.2 || p > 1.0 / (lnn * lnn)) continue;
    ++kept;
    const ThresholdReport report = compute_threshold(n, p);
    if (!(report.log_ex.at(report.k0) > report.ln_ln_np &&
          report.ln_ln_np >= report.log_ex.at(report.k0 + 1))) {
      ++failures;
    }
    const double gap = std::abs(report.k0 - report.approx_k) * p;
    worst_gap = std::max(worst_gap, gap);
    if (gap > 0.5) ++failures;
  }
  std::ostringstream out;
  out << "200 configurations, worst |k0 - approx| * p = " << worst_gap << ", "
      << failures << " failures";
  detail = out.str();
  return failures == 0;
}

ExperimentConfig concentration_config(long long trials, int workers) {
  ExperimentConfig config;
  config.n = 50;
  config.p = 0.5;
  config.trials = trials;
  config.master_seed = 0xD15C0;
  config.mode = Mode::concentration;
  config.worker_count = workers;
  config.node_budget = 100000000ull;
  return config;
}

bool criterion_markov_consistency(std::string& detail) {
  const ExperimentConfig config = concentration_config(10000, 1);
  const ConcentrationResult result = run_concentration(config);
  const long long k0 = result.report.k0;

  // Empirical P[T >= k] <= markov_tail + 3 SE for every k >= k0 + 2 seen.
  bool markov_ok = true;
  int max_t = 0;
  for (const TrialRecord& rec : result.records) max_t = std::max(max_t, rec.t_value);
  const double effective = static_cast<double>(result.stats.trials_effective);
  for (long long k = k0 + 2; k <= std::max<long long>(max_t, k0 + 2); ++k) {
    long long exceed = 0;
    for (const TrialRecord& rec : result.records) {
      if (!rec.censored && rec.t_value >= k) ++exceed;
    }
    const double freq = effective > 0 ? exceed / effective : 0.0;
    const double se = std::sqrt(std::max(freq * (1.0 - freq), 0.0) / std::max(effective, 1.0));
    const double tail = k <= config.n ? markov_tail(config.n, config.p, k) : 0.0;
    if (freq > tail + 3.0 * se) markov_ok = false;
  }

  long long maximal_failures = 0, checked = 0;
  for (const TrialRecord& rec : result.records) {
    if (rec.censored) continue;
    ++checked;
    const Graph g = sample_gnp(static_cast<int>(config.n), config.p, rec.seed);
    if (count_maximal_trees(g, rec.t_value, config.node_budget) < 1) ++maximal_failures;
  }

  std::ostringstream out;
  out << "freq_above " << result.stats.freq_above << " vs markov+3se "
      << result.stats.markov_bound_k0p2 + 3.0 * result.stats.se_above << " (all k >= k0+2 "
      << (markov_ok ? "ok" : "violated") << "); " << checked << " maximal-witness checks, "
      << maximal_failures << " failures; " << result.stats.censored << " censored";
  detail = out.str();
  return markov_ok && maximal_failures == 0;
}

bool criterion_reproducibility(std::string& detail) {
  ExperimentConfig serial = concentration_config(100, 1);
  ExperimentConfig parallel = concentration_config(100, 8);
  const std::string csv_serial = concentration_csv_string(serial, run_concentration(serial));
  const std::string csv_parallel =
      concentration_csv_string(parallel, run_concentration(parallel));
  const bool identical = csv_serial == csv_parallel;
  detail = identical ? "workers 1 and 8 produced byte-identical CSV ("
                         + std::to_string(csv_serial.size()) + " bytes)"
                     : "CSV outputs differ between worker counts";
  return identical;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> table = {
      {1, "covering-tree formula equals Pruefer enumeration for every profile, k <= 7", 60.0,
       criterion_covering_oracle},
      {2, "composition weight sums stay below the closed-form bound, ell <= 30", 5.0,
       criterion_composition_inequality},
      {3, "tree-pair counts equal exhaustive two-tree enumeration, k <= 5", 60.0,
       criterion_pair_count_oracle},
      {4, "pair expectation ratios match brute-force pair sums at n=8, k=3", 120.0,
       criterion_pair_expectation_exact},
      {5, "counter sample means match closed forms within 3 SE (n in {10,12,14})", 900.0,
       criterion_first_moment_monte_carlo},
      {6, "exact solver equals 2^n subset oracle on 1000 graphs plus anchors", 120.0,
       criterion_solver_oracle},
      {7, "threshold reports certify the crossing and the asymptotic anchor", 10.0,
       criterion_threshold_definitional},
      {8, "finite-n Markov consistency and maximal witnesses at n=50, p=0.5", 1800.0,
       criterion_markov_consistency},
      {9, "experiment CSV is byte-identical across worker counts", 300.0,
       criterion_reproducibility},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    try {
      selected.insert(std::stoi(argv[i]));
    } catch (...) {
      std::cerr << "usage: acceptance [criterion numbers]\n";
      return 2;
    }
  }

  bool all_ok = true;
  for (const Criterion& criterion : criteria()) {
    if (!selected.empty() && !selected.count(criterion.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string criterion_detail;
    bool ok = false;
    try {
      ok = criterion.run(criterion_detail);
    } catch (const std::exception& e) {
      criterion_detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.budget_seconds) {
      ok = false;
      criterion_detail += " [over runtime budget]";
    }
    all_ok = all_ok && ok;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
              << criterion.description << " - " << criterion_detail << " (" << seconds
              << " s, budget " << criterion.budget_seconds << " s)" << std::endl;
  }
  return all_ok ? 0 : 1;
}
