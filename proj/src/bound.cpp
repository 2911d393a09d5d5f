#include "unionbound/bound.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace unionbound {

namespace {

double clip(double x) { return x > 0.0 ? x : 0.0; }

void check_level(std::size_t level, std::size_t n) {
  if (level < 1 || level + 1 > n) {
    throw std::invalid_argument("level must satisfy 1 <= level <= n-1, got level=" +
                                std::to_string(level) + " for n=" + std::to_string(n));
  }
}

}  // namespace

LevelEvaluator::LevelEvaluator(const ProbabilityMatrix& matrix, std::size_t max_level)
    : base_(matrix), n_(matrix.size()), max_level_(max_level) {
  check_level(max_level, n_);
  q_.resize(n_ * n_);
  trip_.resize(n_ * n_);
  line_ded_.resize(max_level_);
  seq_.resize(max_level_);
}

void LevelEvaluator::load_permutation(std::span<const std::size_t> perm) {
  if (perm.size() != n_) {
    throw std::invalid_argument("permutation length does not match matrix size");
  }
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      q_[a * n_ + b] = base_(perm[a], perm[b]);
    }
  }
}

void LevelEvaluator::fill_trip_table(std::size_t line) {
  // trip_[j*n+s] = min(P_{j,line}, P_{s,line}, P_{j,s}) for j, s < line.
  for (std::size_t j = 1; j < line; ++j) {
    const double pj = q_[j * n_ + line];
    for (std::size_t s = 0; s < j; ++s) {
      const double ps = q_[s * n_ + line];
      const double pjs = q_[j * n_ + s];
      double m = pj < ps ? pj : ps;
      if (pjs < m) m = pjs;
      trip_[j * n_ + s] = m;
      trip_[s * n_ + j] = m;
    }
  }
}

void LevelEvaluator::descend(std::size_t line, std::size_t t_max, std::size_t depth,
                             std::uint32_t used, double prefix) {
  for (std::size_t next = 0; next < line; ++next) {
    if (used & (std::uint32_t{1} << next)) continue;
    // Subtractions follow the sequence order so that every sequence sum is
    // evaluated exactly as it would be standalone.
    double term = q_[next * n_ + line];
    for (std::size_t r = 0; r < depth; ++r) {
      term -= trip_[next * n_ + seq_[r]];
    }
    const double sum = prefix + clip(term);
    if (sum > line_ded_[depth]) line_ded_[depth] = sum;
    if (depth + 1 < t_max) {
      seq_[depth] = next;
      descend(line, t_max, depth + 1, used | (std::uint32_t{1} << next), sum);
    }
  }
}

void LevelEvaluator::fill_line_deductions(std::size_t line, std::size_t t_max) {
  if (t_max >= 2) fill_trip_table(line);
  for (std::size_t t = 0; t < t_max; ++t) {
    line_ded_[t] = -std::numeric_limits<double>::infinity();
  }
  descend(line, t_max, 0, 0, 0.0);
}

void LevelEvaluator::evaluate(std::span<const std::size_t> perm, std::span<double> out) {
  if (out.size() < max_level_) {
    throw std::invalid_argument("output span too small for requested levels");
  }
  load_permutation(perm);
  for (std::size_t m = 0; m < max_level_; ++m) out[m] = 0.0;

  // First line: no predecessors, no deduction.
  const double first = clip(q_[0]);
  for (std::size_t m = 0; m < max_level_; ++m) out[m] += first;

  for (std::size_t line = 1; line < n_; ++line) {
    fill_line_deductions(line, std::min(max_level_, line));
    const double p_line = q_[line * n_ + line];
    // Accumulate every level in line order so each B_m is summed i = 1..n.
    for (std::size_t m = 1; m <= max_level_; ++m) {
      const std::size_t t = std::min(m, line);
      out[m - 1] += clip(p_line - line_ded_[t - 1]);
    }
  }
}

double LevelEvaluator::evaluate_single(std::span<const std::size_t> perm, std::size_t level) {
  if (level < 1 || level > max_level_) {
    throw std::invalid_argument("level exceeds evaluator capacity");
  }
  load_permutation(perm);
  double total = clip(q_[0]);
  for (std::size_t line = 1; line < n_; ++line) {
    const std::size_t t = std::min(level, line);
    fill_line_deductions(line, t);
    total += clip(q_[line * n_ + line] - line_ded_[t - 1]);
  }
  return total;
}

double line_deduction(const ProbabilityMatrix& permuted, std::size_t line,
                      std::size_t level) {
  const std::size_t n = permuted.size();
  if (line >= n) {
    throw std::invalid_argument("line index out of range");
  }
  check_level(level, n);
  if (line == 0) return 0.0;
  LevelEvaluator ev(permuted, level);
  std::vector<std::size_t> identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = i;
  ev.load_permutation(identity);
  const std::size_t t = std::min(level, line);
  ev.fill_line_deductions(line, t);
  return ev.line_ded_[t - 1];
}

namespace {

// The per-line clip keeps every contribution inside [0, P_i], so the total is
// bracketed by 0 and the first-order sum accumulated in the same order; a
// violation means the arithmetic itself is broken, not the input.
void check_result_range(double value, const ProbabilityMatrix& matrix) {
  const double upper = matrix.sum_first_order();
  if (!(value >= 0.0) || (upper >= 0.0 && value > upper)) {
    throw std::logic_error("bound escaped [0, sum of first-order probabilities]");
  }
}

}  // namespace

double bound(const ProbabilityMatrix& matrix, const Ordering& ordering,
             std::size_t level) {
  const std::size_t n = matrix.size();
  if (ordering.size() != n) {
    throw std::invalid_argument("ordering length does not match matrix size");
  }
  if (n == 1) {
    return clip(matrix(0, 0));
  }
  check_level(level, n);
  LevelEvaluator ev(matrix, level);
  const double value = ev.evaluate_single(ordering.indices(), level);
  check_result_range(value, matrix);
  return value;
}

LevelBounds bound_all_levels(const ProbabilityMatrix& matrix, const Ordering& ordering,
                             std::size_t max_level) {
  const std::size_t n = matrix.size();
  if (ordering.size() != n) {
    throw std::invalid_argument("ordering length does not match matrix size");
  }
  check_level(max_level, n);
  LevelEvaluator ev(matrix, max_level);
  LevelBounds result{ordering, std::vector<double>(max_level, 0.0)};
  ev.evaluate(ordering.indices(), result.values);
  for (double v : result.values) check_result_range(v, matrix);
  return result;
}

}  // namespace unionbound
