#pragma once

#include <map>
#include <vector>

#include "indtree/logreal.hpp"

namespace indtree {

// E[X_k] for the number of induced k-trees of G(n, p):
//   C(n,k) * k^{k-2} * p^{k-1} * (1-p)^{C(k,2)-k+1}
// evaluated in log space. p = 1 is allowed (exact zero for k >= 3).
LogReal log_expected_tree_count(long long n, long long k, double p);

// E[X_{k+1}] / E[X_k] in closed form:
//   (n-k) ((k+1)/k)^{k-2} p (1-p)^{k-1}.
double expectation_ratio(long long n, long long k, double p);

struct FlaggedRatio {
  double value = 0.0;
  bool clamped = false;  // the inner base left [0, 1) and was clamped
};

// P[every vertex outside a fixed k-set has >= 3 neighbors inside] =
//   (1 - sum_{i=0..2} C(k,i) p^i (1-p)^{k-i})^{n-k}.
// Equals E[Y_k]/E[X_k]. Exactly 0 (clamped) when k <= 2 < n.
FlaggedRatio fortified_ratio(long long n, long long k, double p);

// P[no vertex outside a fixed k-set has exactly one neighbor inside] =
//   (1 - k p (1-p)^{k-1})^{n-k}.
// Equals E[W_k]/E[X_k].
FlaggedRatio maximal_ratio(long long n, long long k, double p);

// Markov bound on P[T(G) >= k]: min(1, E[X_k]).
double markov_tail(long long n, double p, long long k);

struct ThresholdReport {
  long long n = 0;
  double p = 0.0;
  long long k0 = 0;      // largest k with E[X_k] > ln(np)
  long long k_unit = 0;  // largest k with E[X_k] >= 1
  bool k_unit_adjacent = false;  // k_unit in {k0, k0+1}
  double ln_ln_np = 0.0;
  double approx_k = 0.0;   // (2 ln(np) + 2) / p
  double drift_cut = 0.0;  // k0 - 1/(4 n p^2)
  std::map<long long, double> log_ex;  // k in {k0-1 .. k0+2}, log E[X_k]
};

// Locates k0 by scanning log_expected_tree_count outward from the
// approximation (2 ln(np) + 2)/p. Requires np > 1. The crossing is
// certified definitionally (log E[X_{k0}] > ln ln(np) >= log E[X_{k0+1}])
// and the expectation ratio is checked to be decreasing around it.
ThresholdReport compute_threshold(long long n, double p);

struct DriftWindowTerm {
  long long k = 0;
  double log_expected = 0.0;     // log E[X_k]
  double maximal_ratio = 0.0;    // E[W_k]/E[X_k]
  double expected_maximal = 0.0; // E[W_k]
};

struct DriftTail {
  double value = 0.0;             // sum of E[W_k] over the window
  bool window_collapsed = false;  // 1/(4np^2) < 1: only k0, k0+1 remain
  long long k_low = 0;
  long long k_high = 0;
  std::vector<DriftWindowTerm> terms;
};

// Finite-n Markov bound on P[T in [k0 - 1/(4np^2), k0 + 1]]:
// sum of E[W_k] = maximal_ratio * E[X_k] over the window, computed exactly.
DriftTail drift_tail(long long n, double p);

}  // namespace indtree
