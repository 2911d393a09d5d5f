// The nested hierarchy of level-m second-order upper bounds on the union
// probability P(C_1 u ... u C_n).
//
// In a fixed ordering, line i of the bound contributes
//
//   [ P_i - max over sequences (j_1, ..., j_t) of distinct predecessors of i
//       sum_{r=1..t} [ P_{j_r,i} - sum_{s<r} min(P_{j_r,i}, P_{j_s,i}, P_{j_r,j_s}) ]^+ ]^+
//
// with t = min(m, i-1) and [x]^+ = max(x, 0).  The max ranges over ordered
// arrangements, not just sorted index tuples: only the first slot of a
// sequence escapes all subtractions, so the arrangement matters from t = 3
// up, and extending any sequence by one more index can only add a clipped,
// non-negative term.  That extension argument is what makes the hierarchy
// non-increasing in m.  Level 1 is the classical second-order upper bound
// that deducts only the best single pair probability per line; level 2 is
// the symmetric best-pair deduction.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "unionbound/matrix.hpp"

namespace unionbound {

// The B_1..B_L values of one ordering.  Non-increasing in the level.
struct LevelBounds {
  Ordering ordering;
  std::vector<double> values;  // values[m-1] = level-m bound

  double at_level(std::size_t m) const { return values.at(m - 1); }
};

// Largest deduction available to line `line` (0-based) of a matrix already
// permuted into evaluation order, using sequences of up to `level`
// predecessor events.  Returns 0 for the first line.  Throws
// std::invalid_argument when `line` or `level` is out of range.
double line_deduction(const ProbabilityMatrix& permuted, std::size_t line,
                      std::size_t level);

// Level-m upper bound of `matrix` evaluated in `ordering`.  Requires
// 1 <= level <= n-1; for n = 1 the level is ignored and the bound is P_1.
double bound(const ProbabilityMatrix& matrix, const Ordering& ordering,
             std::size_t level);

// All levels 1..max_level in one pass over a single permuted copy.
LevelBounds bound_all_levels(const ProbabilityMatrix& matrix, const Ordering& ordering,
                             std::size_t max_level);

// Reusable evaluator holding per-thread scratch (permuted matrix, the
// three-way minimum lookup table, the sequence stack).  Exists so that
// enumerating many orderings does not allocate per permutation.
class LevelEvaluator {
 public:
  LevelEvaluator(const ProbabilityMatrix& matrix, std::size_t max_level);

  std::size_t max_level() const { return max_level_; }

  // out[m-1] = B_m(perm) for m = 1..max_level.
  void evaluate(std::span<const std::size_t> perm, std::span<double> out);

  // Level-`level` bound only (level <= max_level).
  double evaluate_single(std::span<const std::size_t> perm, std::size_t level);

 private:
  friend double line_deduction(const ProbabilityMatrix&, std::size_t, std::size_t);

  void load_permutation(std::span<const std::size_t> perm);
  void fill_trip_table(std::size_t line);
  // Fills line_ded_[t-1], t = 1..t_max, with the best sequence sum of each
  // length for `line` via one depth-first sweep over arrangements.
  void fill_line_deductions(std::size_t line, std::size_t t_max);
  void descend(std::size_t line, std::size_t t_max, std::size_t depth,
               std::uint32_t used, double prefix);

  const ProbabilityMatrix& base_;
  std::size_t n_;
  std::size_t max_level_;
  std::vector<double> q_;        // permuted matrix, row-major
  std::vector<double> trip_;     // trip_[j*n+s] = min(P_j,line, P_s,line, P_js)
  std::vector<double> line_ded_; // best deduction per sequence length
  std::vector<std::size_t> seq_; // current sequence prefix
};

}  // namespace unionbound
