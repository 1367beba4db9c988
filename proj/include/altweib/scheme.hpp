#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace altweib {

enum class Regime { PHC, APHC };
enum class CaseKind { CaseI, CaseII };

/// Progressive Type-II censoring plan: n units on test, m target failures,
/// R_i units withdrawn at the i-th failure, and a pre-fixed cutoff time.
struct ProgressiveScheme {
  int n;
  int m;
  std::vector<int> removals;  ///< length m, entries >= 0, sum = n - m
  double cutoff;

  ProgressiveScheme(int n_, int m_, std::vector<int> removals_, double cutoff_)
      : n(n_), m(m_), removals(std::move(removals_)), cutoff(cutoff_) {
    if (n <= 0 || m <= 0 || m > n)
      throw std::invalid_argument("ProgressiveScheme: require 0 < m <= n");
    if (static_cast<int>(removals.size()) != m)
      throw std::invalid_argument("ProgressiveScheme: removals must have length m");
    int sum = 0;
    for (int r : removals) {
      if (r < 0) throw std::invalid_argument("ProgressiveScheme: removals must be >= 0");
      sum += r;
    }
    if (sum + m != n)
      throw std::invalid_argument("ProgressiveScheme: sum(removals) + m must equal n");
    if (!(cutoff > 0.0))
      throw std::invalid_argument("ProgressiveScheme: cutoff must be positive");
  }
};

/// Failure times after applying one censoring regime, with the bookkeeping
/// the likelihood needs.
///
/// Case I (j = m): all m failures observed by the cutoff; times has length m.
/// PHC Case II: times holds the j observations before the cutoff and rj_star
/// units leave the test en masse at the cutoff.
/// APHC Case II: times has length m; removals apply only at indices < j and
/// the n - m - sum_{i<j} R_i survivors leave at the final failure.
struct CensoredDataset {
  std::vector<double> times;  ///< strictly increasing
  ProgressiveScheme scheme;
  Regime regime;
  CaseKind caseKind;
  int j;        ///< failures observed before the cutoff
  int rj_star;  ///< units censored at the cutoff (PHC Case II), else 0
};

/// The fifteen built-in experiment designs (index 1..15). Every entry
/// satisfies sum(removals) + m = n; validated on first use.
const std::vector<ProgressiveScheme>& preset_catalog();

/// Preset lookup, index in 1..15; throws std::out_of_range otherwise.
const ProgressiveScheme& preset(int index);

}  // namespace altweib
