// Checkable certificates that moving up one level of the bound hierarchy
// strictly helps for a given ordering, plus the exact count of orderings of
// n events that admit the level-1 -> level-2 certificate when the decisive
// triplet's top event sits at position c.

#pragma once

#include <cstddef>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "unionbound/matrix.hpp"

namespace unionbound {

using BigInt = boost::multiprecision::cpp_int;

// Triplet of 0-based positions (a, b < c) in the evaluation order with
// P_{a,c} maximal in column c, P_{a,c} >= P_{b,c} and P_{b,c} > P_{a,b}.
// Its existence guarantees B_2 < B_1 for that ordering.
struct Condition1Witness {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;

  bool operator==(const Condition1Witness&) const = default;
};

// Line (0-based position in the evaluation order) at which every
// (level+1)-subset of predecessors satisfies, for each member r,
//   P_{j_r,line} > sum_{s != r} min(P_{j_s,line}, P_{j_r,j_s}).
// Its existence guarantees B_{level+1} < B_level for that ordering.
struct Condition2Witness {
  std::size_t level = 0;
  std::size_t line = 0;

  bool operator==(const Condition2Witness&) const = default;
};

// First (smallest c, then smallest qualifying a, then smallest b) witness for
// the level-1 -> level-2 certificate, or nullopt.  Every column-max position
// is tried as `a`.  Requires n >= 3.
std::optional<Condition1Witness> condition1(const ProbabilityMatrix& matrix,
                                            const Ordering& ordering);

// Whether the level -> level+1 certificate holds at 0-based `line` of the
// evaluation order: every (level+1)-subset of the line's predecessors must
// satisfy the row-dominance inequalities, and the line's term must still be
// positive at the given level (a fully deducted line cannot witness an
// improvement; this can only happen on matrices that respect the pairwise
// constraints without being consistent with any joint distribution).
// Requires level + 1 <= line < n.  Comparisons are strict in exact floating
// point; no tolerance is applied.
bool condition2_at(const ProbabilityMatrix& matrix, const Ordering& ordering,
                   std::size_t level, std::size_t line);

// Smallest line carrying the level -> level+1 certificate, or nullopt.
// A witness guarantees the level+1 bound is strictly below the level bound
// in this ordering.  Requires 1 <= level <= n-1.
std::optional<Condition2Witness> condition2_any(const ProbabilityMatrix& matrix,
                                                const Ordering& ordering,
                                                std::size_t level);

// Number of orderings of n events in which a fixed decisive triplet
// {e_1, e_2, e_3} produces the level-1 -> level-2 certificate with its top
// event at position c (1-based, 3 <= c <= n):
//   sum_{j=0}^{c-3} C(c-3, j) * (j+2)! * (n-3-j)!
// Exact integer arithmetic; the result reaches n!/3 at c = n.
BigInt count_orderings_condition1(std::size_t n, std::size_t c);

}  // namespace unionbound
