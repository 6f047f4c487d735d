#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "indtree/threshold.hpp"
#include "indtree/tree_search.hpp"

namespace indtree {

enum class Mode { concentration, moments, drift_report };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

// Flat key = value configuration (one pair per line, '#' comments).
// CLI flags override file values.
struct ExperimentConfig {
  long long n = 0;
  double p = 0.0;
  long long trials = 1;
  std::uint64_t master_seed = 0;
  Mode mode = Mode::concentration;
  std::vector<int> k_list;  // moments mode; empty means 1..n
  int worker_count = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
  long long exact_n_cap = 60;      // guardrail for exact concentration runs
  bool timing = false;             // off: elapsed_ms column written as 0.000
  long long heuristic_trials = 0;  // drift-report only

  static ExperimentConfig from_file(const std::string& path);
  void apply_line(const std::string& line);  // one "key = value" assignment
  void validate() const;
};

enum class Window { below, k0, k0_plus_1, above };

struct TrialRecord {
  long long trial_index = 0;
  std::uint64_t seed = 0;
  int t_value = -1;  // -1 when censored
  Window in_window = Window::below;
  bool censored = false;
  std::uint64_t solver_nodes = 0;
  double elapsed_ms = 0.0;
};

struct SummaryStats {
  long long trials_total = 0;
  long long trials_effective = 0;  // non-censored
  long long censored = 0;
  double freq_below = 0.0, freq_k0 = 0.0, freq_k0p1 = 0.0, freq_above = 0.0;
  double se_below = 0.0, se_k0 = 0.0, se_k0p1 = 0.0, se_above = 0.0;
  double markov_bound_k0p2 = 0.0;
  double drift_bound = 0.0;
};

struct ConcentrationResult {
  ThresholdReport report;
  std::vector<TrialRecord> records;
  SummaryStats stats;
};

// Samples `trials` graphs with derived seeds, solves T(G) exactly under the
// node budget (censoring trials that exceed it) and classifies each against
// the threshold report. Bit-for-bit reproducible from the config regardless
// of worker_count.
ConcentrationResult run_concentration(const ExperimentConfig& config);

void write_concentration_csv(std::ostream& out, const ExperimentConfig& config,
                             const ConcentrationResult& result);
std::string concentration_csv_string(const ExperimentConfig& config,
                                     const ConcentrationResult& result);
void write_summary(std::ostream& out, const ConcentrationResult& result);

struct MomentsRow {
  int k = 0;
  double mean_induced = 0.0, se_induced = 0.0, expected_induced = 0.0;
  double mean_fortified = 0.0, se_fortified = 0.0, expected_fortified = 0.0;
  double mean_maximal = 0.0, se_maximal = 0.0, expected_maximal = 0.0;
};

struct MomentsResult {
  long long trials = 0;
  std::vector<MomentsRow> rows;
};

// Sample means of the per-graph induced/fortified/maximal tree counters
// against their closed forms. Exact subset counters: n <= 14 enforced.
MomentsResult run_moments(const ExperimentConfig& config);
void write_moments_csv(std::ostream& out, const ExperimentConfig& config,
                       const MomentsResult& result);

struct DriftReport {
  ThresholdReport report;
  DriftTail tail;
  double window_expected_sum = 0.0;  // sum of E[X_k] over the same window
  std::vector<int> heuristic_sizes;  // labelled HEURISTIC, may be empty
};

// Evaluation-only drift bound report; optionally runs the greedy grower on
// sparse sampled graphs when heuristic_trials > 0.
DriftReport run_drift_report(const ExperimentConfig& config);
void write_drift_report(std::ostream& out, const DriftReport& report);

// Locale-independent number formatting shared by every writer.
std::string format_double(double value);            // shortest round-trip
std::string format_fixed(double value, int digits);  // fixed decimals

}  // namespace indtree
