#include "unionbound/conditions.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "unionbound/bound.hpp"

namespace unionbound {

namespace {

// All checks below run on the matrix already permuted into evaluation order.

std::optional<Condition1Witness> condition1_permuted(const ProbabilityMatrix& q) {
  const std::size_t n = q.size();
  for (std::size_t c = 2; c < n; ++c) {
    double col_max = q(0, c);
    for (std::size_t i = 1; i < c; ++i) {
      if (q(i, c) > col_max) col_max = q(i, c);
    }
    // Ties for the column maximum are all admissible as `a`.
    for (std::size_t a = 0; a < c; ++a) {
      if (q(a, c) != col_max) continue;
      for (std::size_t b = 0; b < c; ++b) {
        if (b == a) continue;
        if (q(b, c) > q(a, b)) {
          return Condition1Witness{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

bool condition2_at_permuted(const ProbabilityMatrix& q, std::size_t level,
                            std::size_t line) {
  // Every (level+1)-subset of predecessors must satisfy the row-dominance
  // inequality for each of its members.  The line must also still contribute
  // at the lower level: when the deduction already absorbs the whole
  // first-order probability, the term is clipped to zero at both levels and
  // a larger deduction cannot tighten the bound.  For matrices consistent
  // with an actual joint distribution the deduction never exceeds the
  // first-order probability, so that requirement only bites on inputs that
  // merely respect the pairwise constraints.
  const std::size_t t = level + 1;
  std::vector<std::size_t> comb(t);
  for (std::size_t r = 0; r < t; ++r) comb[r] = r;
  for (;;) {
    for (std::size_t r = 0; r < t; ++r) {
      double rhs = 0.0;
      for (std::size_t s = 0; s < t; ++s) {
        if (s == r) continue;
        const double a = q(comb[s], line);
        const double b = q(comb[r], comb[s]);
        rhs += a < b ? a : b;
      }
      if (!(q(comb[r], line) > rhs)) return false;
    }
    std::size_t r = t;
    while (r > 0 && comb[r - 1] == line - t + (r - 1)) --r;
    if (r == 0) break;
    ++comb[r - 1];
    for (std::size_t s = r; s < t; ++s) comb[s] = comb[s - 1] + 1;
  }
  return q(line, line) > line_deduction(q, line, level);
}

}  // namespace

std::optional<Condition1Witness> condition1(const ProbabilityMatrix& matrix,
                                            const Ordering& ordering) {
  if (matrix.size() < 3) {
    throw std::invalid_argument("condition1 requires at least 3 events");
  }
  return condition1_permuted(reorder(matrix, ordering));
}

bool condition2_at(const ProbabilityMatrix& matrix, const Ordering& ordering,
                   std::size_t level, std::size_t line) {
  const std::size_t n = matrix.size();
  if (level < 1) {
    throw std::invalid_argument("level must be at least 1");
  }
  if (line >= n || line < level + 1) {
    throw std::invalid_argument("line must satisfy level+1 <= line <= n-1, got line=" +
                                std::to_string(line));
  }
  return condition2_at_permuted(reorder(matrix, ordering), level, line);
}

std::optional<Condition2Witness> condition2_any(const ProbabilityMatrix& matrix,
                                                const Ordering& ordering,
                                                std::size_t level) {
  const std::size_t n = matrix.size();
  if (level < 1 || level + 1 > n) {
    throw std::invalid_argument("level must satisfy 1 <= level <= n-1");
  }
  const ProbabilityMatrix q = reorder(matrix, ordering);
  for (std::size_t line = level + 1; line < n; ++line) {
    if (condition2_at_permuted(q, level, line)) {
      return Condition2Witness{level, line};
    }
  }
  return std::nullopt;
}

BigInt count_orderings_condition1(std::size_t n, std::size_t c) {
  if (c < 3 || c > n) {
    throw std::invalid_argument("position must satisfy 3 <= c <= n");
  }
  auto factorial = [](std::size_t k) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    return f;
  };
  auto choose = [](std::size_t a, std::size_t b) {
    BigInt r = 1;
    for (std::size_t i = 0; i < b; ++i) {
      r *= a - i;
      r /= i + 1;
    }
    return r;
  };
  BigInt total = 0;
  for (std::size_t j = 0; j + 3 <= c; ++j) {
    total += choose(c - 3, j) * factorial(j + 2) * factorial(n - 3 - j);
  }
  return total;
}

}  // namespace unionbound
