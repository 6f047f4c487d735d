#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "indtree/combinatorics.hpp"

namespace indtree {

struct VerifyOptions {
  int kmax = 7;   // covering-tree oracle cap
  int lmax = 30;  // composition inequality cap
  // Test-only self-check: perturbs one formula constant so a healthy
  // harness must report a failure.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs every oracle-equality and inequality suite over the counting and
// graph modules, logging one verdict line per suite.
std::vector<SuiteResult> run_verification(const VerifyOptions& options, std::ostream& log);

bool all_passed(const std::vector<SuiteResult>& results);

// Oracle building blocks shared with the acceptance suite.

// Every partition of `total` (non-increasing part lists).
void for_each_partition(int total, const std::function<void(const std::vector<int>&)>& fn);

// Every concrete forest realizing the profile on consecutive label blocks:
// one spanning tree per part, combined by odometer.
void for_each_profile_realization(
    const ForestProfile& profile,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& fn);

// Exhaustive pair census over two k-sets sharing the fixed overlap
// {0..ell-1}: number of ordered tree pairs coinciding on the overlap,
// keyed by the component count of the overlap forest.
std::map<int, long long> brute_overlapping_pair_counts(int k, int ell);

// Exhaustive sum of E[X_{A,T_A} X_{B,T_B}] / E[X]^2 over all ordered pairs
// on [n], keyed by (overlap size, overlap components). Supported for n <= 8.
std::map<std::pair<int, int>, double> brute_pair_expectation_sums(long long n, int k, double p);

}  // namespace indtree
