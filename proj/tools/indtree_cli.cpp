#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "indtree/combinatorics.hpp"
#include "indtree/experiment.hpp"
#include "indtree/graph.hpp"
#include "indtree/threshold.hpp"
#include "indtree/tree_search.hpp"
#include "indtree/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitBudget = 3;

using indtree::format_double;

void print_threshold(std::ostream& out, const indtree::ThresholdReport& report, bool dump) {
  if (dump) {
    out << "n=" << report.n << '\n'
        << "p=" << format_double(report.p) << '\n'
        << "k0=" << report.k0 << '\n'
        << "k_unit=" << report.k_unit << '\n'
        << "k_unit_adjacent=" << (report.k_unit_adjacent ? 1 : 0) << '\n'
        << "ln_ln_np=" << format_double(report.ln_ln_np) << '\n'
        << "approx_k=" << format_double(report.approx_k) << '\n'
        << "drift_cut=" << format_double(report.drift_cut) << '\n';
    for (const auto& [k, log_ex] : report.log_ex) {
      out << "log_ex[" << k << "]=" << format_double(log_ex) << '\n';
    }
    return;
  }
  out << "n                " << report.n << '\n'
      << "p                " << format_double(report.p) << '\n'
      << "k0               " << report.k0 << '\n'
      << "k_unit           " << report.k_unit << '\n'
      << "k_unit_adjacent  " << (report.k_unit_adjacent ? "yes" : "no") << '\n'
      << "ln_ln_np         " << format_double(report.ln_ln_np) << '\n'
      << "approx_k         " << format_double(report.approx_k) << '\n'
      << "drift_cut        " << format_double(report.drift_cut) << '\n';
  for (const auto& [k, log_ex] : report.log_ex) {
    out << "log_ex[" << k << "]      " << format_double(log_ex) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"induced-tree thresholds, exact counters and Monte Carlo experiments on G(n,p)"};
  app.require_subcommand(1);

  // threshold
  auto* cmd_threshold = app.add_subcommand("threshold", "two-point window report for (n, p)");
  long long th_n = 0;
  double th_p = 0.0;
  bool th_dump = false;
  cmd_threshold->add_option("--n", th_n, "vertex count")->required();
  cmd_threshold->add_option("--p", th_p, "edge probability")->required();
  cmd_threshold->add_flag("--dump", th_dump, "machine-readable key=value output");

  // sample
  auto* cmd_sample = app.add_subcommand("sample", "sample G(n,p) and write the graph text format");
  long long sa_n = 0;
  double sa_p = 0.0;
  std::uint64_t sa_seed = 0;
  std::string sa_out;
  cmd_sample->add_option("--n", sa_n, "vertex count")->required();
  cmd_sample->add_option("--p", sa_p, "edge probability")->required();
  cmd_sample->add_option("--seed", sa_seed, "sampler seed")->required();
  cmd_sample->add_option("--out", sa_out, "output file (default stdout)");

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "exact maximum induced tree of a graph file");
  std::string so_in;
  std::uint64_t so_budget = indtree::kDefaultNodeBudget;
  cmd_solve->add_option("--in", so_in, "graph file (text format)")->required();
  cmd_solve->add_option("--budget", so_budget, "search node budget");

  // count
  auto* cmd_count = app.add_subcommand("count", "count induced k-trees of a graph file");
  std::string co_in;
  int co_k = 0;
  bool co_fortified = false, co_maximal = false;
  cmd_count->add_option("--in", co_in, "graph file (text format)")->required();
  cmd_count->add_option("--k", co_k, "tree size")->required();
  cmd_count->add_flag("--fortified", co_fortified, "outside vertices need >= 3 neighbors inside");
  cmd_count->add_flag("--maximal", co_maximal, "no outside vertex with exactly one neighbor inside");

  // pairs
  auto* cmd_pairs = app.add_subcommand("pairs", "overlapping tree-pair diagnostics");
  long long pa_n = 0;
  int pa_k = 0, pa_l = 0, pa_m = 0;
  double pa_p = 0.0;
  cmd_pairs->add_option("--n", pa_n, "vertex count")->required();
  cmd_pairs->add_option("--k", pa_k, "tree size")->required();
  cmd_pairs->add_option("--l", pa_l, "overlap size")->required();
  cmd_pairs->add_option("--m", pa_m, "overlap components")->required();
  cmd_pairs->add_option("--p", pa_p, "edge probability")->required();

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the oracle verification suites");
  int ve_kmax = 7, ve_lmax = 30;
  bool ve_fault = false;
  cmd_verify->add_option("--kmax", ve_kmax, "covering-tree oracle cap (<= 7)");
  cmd_verify->add_option("--lmax", ve_lmax, "composition inequality cap (<= 30)");
  cmd_verify->add_flag("--inject-fault", ve_fault, "harness self-test: force a failure")
      ->group("");  // hidden

  // experiment
  auto* cmd_exp = app.add_subcommand("experiment", "configuration-driven Monte Carlo runs");
  std::string ex_config, ex_out, ex_mode;
  long long ex_trials = -1;
  std::uint64_t ex_seed = 0;
  bool ex_seed_set = false;
  int ex_workers = -1;
  cmd_exp->add_option("--config", ex_config, "key = value config file")->required();
  cmd_exp->add_option("--mode", ex_mode, "override: concentration|moments|drift-report");
  cmd_exp->add_option("--trials", ex_trials, "override: trial count");
  cmd_exp->add_option("--seed", ex_seed, "override: master seed")->each([&](const std::string&) {
    ex_seed_set = true;
  });
  cmd_exp->add_option("--workers", ex_workers, "override: worker threads");
  cmd_exp->add_option("--out", ex_out, "CSV/report output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_threshold) {
      print_threshold(std::cout, indtree::compute_threshold(th_n, th_p), th_dump);
      return kExitOk;
    }

    if (*cmd_sample) {
      const indtree::Graph g = indtree::sample_gnp(static_cast<int>(sa_n), sa_p, sa_seed);
      if (sa_out.empty()) {
        indtree::write_graph_text(std::cout, g);
      } else {
        std::ofstream out(sa_out);
        if (!out) throw std::invalid_argument("cannot open output file: " + sa_out);
        indtree::write_graph_text(out, g);
      }
      return kExitOk;
    }

    if (*cmd_solve) {
      std::ifstream in(so_in);
      if (!in) throw std::invalid_argument("cannot open graph file: " + so_in);
      const indtree::Graph g = indtree::read_graph_text(in);
      const indtree::SolveResult result = indtree::max_induced_tree(g, so_budget);
      std::cout << "size          " << result.size << '\n' << "witness       ";
      bool first = true;
      for (int v : result.witness.members()) {
        std::cout << (first ? "" : " ") << v;
        first = false;
      }
      std::cout << '\n' << "nodes         " << result.nodes_explored << '\n';
      if (result.budget_exhausted) {
        std::cerr << "node budget exhausted; reported size is only a lower bound\n";
        return kExitBudget;
      }
      return kExitOk;
    }

    if (*cmd_count) {
      if (co_fortified && co_maximal) {
        throw std::invalid_argument("--fortified and --maximal are mutually exclusive");
      }
      std::ifstream in(co_in);
      if (!in) throw std::invalid_argument("cannot open graph file: " + co_in);
      const indtree::Graph g = indtree::read_graph_text(in);
      indtree::BigInt count;
      if (co_fortified) {
        count = indtree::count_fortified_trees(g, co_k);
      } else if (co_maximal) {
        count = indtree::count_maximal_trees(g, co_k);
      } else {
        count = indtree::count_induced_trees(g, co_k);
      }
      std::cout << count.str() << '\n';
      return kExitOk;
    }

    if (*cmd_pairs) {
      const indtree::BigInt pairs = indtree::count_overlapping_tree_pairs(pa_k, pa_l, pa_m);
      std::cout << "pair_count          " << pairs.str() << '\n'
                << "log_probability     "
                << format_double(indtree::pair_edge_log_probability(pa_k, pa_l, pa_m, pa_p).log_abs())
                << '\n'
                << "expectation_ratio   "
                << format_double(indtree::pair_expectation_ratio(pa_n, pa_k, pa_l, pa_m, pa_p))
                << '\n';
      const indtree::DampingFactor damping = indtree::fortified_damping_factor(pa_k, pa_l, pa_m, pa_p);
      std::cout << "damping_factor      " << format_double(damping.value)
                << (damping.applicable ? "" : " (clamped)") << '\n';
      return kExitOk;
    }

    if (*cmd_verify) {
      const auto results = indtree::run_verification({ve_kmax, ve_lmax, ve_fault}, std::cout);
      return indtree::all_passed(results) ? kExitOk : kExitVerification;
    }

    if (*cmd_exp) {
      indtree::ExperimentConfig config = indtree::ExperimentConfig::from_file(ex_config);
      if (!ex_mode.empty()) config.mode = indtree::parse_mode(ex_mode);
      if (ex_trials >= 0) config.trials = ex_trials;
      if (ex_seed_set) config.master_seed = ex_seed;
      if (ex_workers >= 0) config.worker_count = ex_workers;

      std::ofstream file_out;
      std::ostream* out = &std::cout;
      if (!ex_out.empty()) {
        file_out.open(ex_out, std::ios::binary);
        if (!file_out) throw std::invalid_argument("cannot open output file: " + ex_out);
        out = &file_out;
      }

      switch (config.mode) {
        case indtree::Mode::concentration: {
          const auto result = indtree::run_concentration(config);
          indtree::write_concentration_csv(*out, config, result);
          indtree::write_summary(std::cerr, result);
          break;
        }
        case indtree::Mode::moments: {
          const auto result = indtree::run_moments(config);
          indtree::write_moments_csv(*out, config, result);
          break;
        }
        case indtree::Mode::drift_report: {
          const auto result = indtree::run_drift_report(config);
          indtree::write_drift_report(*out, result);
          break;
        }
      }
      return kExitOk;
    }
  } catch (const indtree::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
