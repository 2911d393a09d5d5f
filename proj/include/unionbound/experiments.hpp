// Monte Carlo studies of how often climbing one level of the bound hierarchy
// strictly improves the optimal bound, plus the analytic asymptotic lower
// bound on that probability under the conditional-uniform random model.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "unionbound/search.hpp"

namespace unionbound {

struct EstimateResult {
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(estimate * (1 - estimate) / trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Probability that one line three positions into a random ordering deducts
// strictly more at level 2 than at level 1, under the conditional-uniform
// model with its two predecessors.  Analytically 17/108.
inline constexpr double kLineImprovementProbability = 17.0 / 108.0;

// The same event split by how the line's first-order probability ranks
// against its two predecessors: largest, smallest, middle (newer predecessor
// larger), middle (older predecessor larger).  Masses sum to 17/108.
inline constexpr std::array<double, 4> kLineImprovementPartition = {
    1.0 / 12.0, 1.0 / 54.0, 1.0 / 36.0, 1.0 / 36.0};

struct LineImprovementEstimate {
  EstimateResult total;
  std::array<EstimateResult, 4> partition;
};

// Simulates the line-improvement event directly from seven independent
// uniforms per trial.  Bitwise reproducible for fixed (trials, seed)
// regardless of worker count.
LineImprovementEstimate estimate_line_improvement_probability(std::uint64_t trials,
                                                              std::uint64_t seed,
                                                              unsigned workers = 1);

// 1 - (1 - 17/108)^floor(n/3): lower bound on the probability that the
// optimal level-2 bound strictly beats the optimal level-1 bound for a
// conditional-uniform random matrix of size n.  Vacuously 0 for n < 3;
// tends to 1 as n grows.
double improvement_probability_lower_bound(std::size_t n);

// Fraction of random conditional-uniform matrices whose optimal level+1
// bound strictly beats the optimal level-`level` bound.  Exact ties are
// common under this model and count as no improvement; a small relative
// margin keeps rounding noise from flipping them.  Each trial searches all
// n! orderings, so n is capped like the exhaustive search.
EstimateResult estimate_improvement_probability(std::size_t n, std::size_t level,
                                                std::uint64_t trials, std::uint64_t seed,
                                                unsigned workers = 1);

// One delta of a correlated-pair sweep: exhaustive summaries per level plus,
// for each level m < max, the number of orderings whose level-max bound is
// strictly below their level-m bound.
struct DeltaSweepEntry {
  double delta = 0.0;
  std::vector<SearchSummary> summaries;
  std::vector<std::size_t> strict_improvement_counts;  // [m-1]: B_max < B_m
};

std::vector<DeltaSweepEntry> delta_sweep(const std::vector<double>& first_order,
                                         const std::vector<double>& deltas,
                                         std::size_t max_level,
                                         const SearchOptions& options = {});

}  // namespace unionbound
