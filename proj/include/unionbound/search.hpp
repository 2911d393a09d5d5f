// Exhaustive enumeration of the n! evaluation orders, per-level summary
// statistics, and a cheap greedy ordering heuristic.
//
// Results are bitwise reproducible for any worker count: workers fill
// disjoint, rank-indexed slots of one value buffer per level, and every
// statistic is then derived sequentially from those buffers.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "unionbound/matrix.hpp"

namespace unionbound {

// Population statistics of one value set.
struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;   // population standard deviation
  double cov = 0.0;  // sd / mean, 0 when the mean is 0
};

Stats summary_stats(std::span<const double> values);

struct SearchOptions {
  // An ordering is counted as a minimizer when its value is within
  // max(tolerance * min, tolerance_floor) of the minimum.
  double tolerance = 1e-9;
  double tolerance_floor = 1e-15;
  std::size_t cap = 10;         // refuse factorial enumeration beyond this n
  std::size_t max_argmin = 16;  // orderings retained per level, rank order
  unsigned workers = 1;         // 0 = one per hardware thread
  // Optional per-ordering callback, invoked sequentially in lexicographic
  // rank order after the parallel fill: (rank, ordering, values per level).
  std::function<void(std::size_t, const Ordering&, std::span<const double>)> row_sink;
};

struct SearchSummary {
  std::size_t level = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double cov = 0.0;  // sample (N-1) SD over mean, the tabulated convention
  std::size_t minimizer_count = 0;
  std::vector<Ordering> argmin;  // first max_argmin minimizers, rank order
  double wall_time_s = 0.0;      // shared across levels of one search
};

// Evaluates B_1..B_max_level for every ordering of the matrix.  Returns one
// summary per level.  Throws when n exceeds options.cap or the level range
// is invalid.
std::vector<SearchSummary> exhaustive_search(const ProbabilityMatrix& matrix,
                                             std::size_t max_level,
                                             const SearchOptions& options = {});

// Minimum of the level-`level` bound over all orderings, with the first
// minimizing ordering in lexicographic rank order.
std::pair<double, Ordering> optimal_bound(const ProbabilityMatrix& matrix,
                                          std::size_t level,
                                          const SearchOptions& options = {});

// Heuristic order for large n: starts from the pair with the largest joint
// probability and repeatedly appends the event with the largest joint
// probability against any already-placed event (ties by smallest index).
Ordering greedy_ordering(const ProbabilityMatrix& matrix);

}  // namespace unionbound
