// Second-order probability matrix: the n first-order event probabilities on
// the diagonal and the pairwise joint probabilities off it.  This is the sole
// input the bound hierarchy consumes.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace unionbound {

// Validation slack on the Frechet inequalities.  Matrices transcribed from
// rounded tables can overshoot them by a rounding ulp; symmetry and the
// diagonal range are still compared exactly.
inline constexpr double kFrechetSlack = 1e-12;

class Ordering;

class ProbabilityMatrix {
 public:
  // Zero-initialized n x n matrix.
  explicit ProbabilityMatrix(std::size_t n);

  // Builds from a full (row-major) array, scaling every entry.  Throws
  // std::invalid_argument if the array is not square or is empty.
  static ProbabilityMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                     double scale = 1.0);

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return p_[i * n_ + j]; }
  double first_order(std::size_t i) const { return p_[i * n_ + i]; }

  // Writes both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double value);

  // Sum of the diagonal, accumulated in index order.
  double sum_first_order() const;

  std::vector<std::vector<double>> rows() const;

  bool operator==(const ProbabilityMatrix& other) const = default;

 private:
  std::size_t n_;
  std::vector<double> p_;  // row-major
};

// A permutation of the event index set.  Stored 0-based; all external I/O
// (JSON, CLI, strings) is 1-based.
class Ordering {
 public:
  // Throws std::invalid_argument unless `positions` is a permutation
  // of {0, ..., n-1}.
  explicit Ordering(std::vector<std::size_t> positions);

  static Ordering identity(std::size_t n);
  static Ordering from_one_based(const std::vector<std::size_t>& indices);

  // Accepts "3-1-2-4" or "3,1,2,4" (1-based).
  static Ordering parse(const std::string& text);

  std::size_t size() const { return sigma_.size(); }
  std::size_t operator[](std::size_t position) const { return sigma_[position]; }
  const std::vector<std::size_t>& indices() const { return sigma_; }

  Ordering inverse() const;
  std::vector<std::size_t> one_based() const;
  std::string to_string(char separator = '-') const;

  bool operator==(const Ordering& other) const = default;

 private:
  std::vector<std::size_t> sigma_;
};

struct Violation {
  enum class Kind { Symmetry, DiagonalRange, FrechetLower, FrechetUpper };
  Kind kind;
  std::size_t i, j;  // 0-based
  double value;
  double limit;
  std::string message() const;  // 1-based indices in the text
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks symmetry, the diagonal range [0,1], and the Frechet bounds
// 0 <= p_ij <= min(p_ii, p_jj).  Lists every violation.
ValidationReport validate(const ProbabilityMatrix& matrix);

// Permuted copy: result(a,b) = matrix(ordering[a], ordering[b]).  Evaluating
// a bound "in ordering pi" means evaluating the identity-ordered bound on
// this permuted matrix.
ProbabilityMatrix reorder(const ProbabilityMatrix& matrix, const Ordering& ordering);

// Common-offset correlation model: P_ij = P_i * P_j + delta for every pair.
struct DeltaModel {
  std::vector<double> first_order;
  double delta = 0.0;
};

// Throws std::invalid_argument (naming the offending pair) when delta falls
// outside [-P_i*P_j, min(P_i, P_j) - P_i*P_j] for some pair.
ProbabilityMatrix generate_delta(const DeltaModel& model);

// Random matrix with P_i ~ U[0,1] i.i.d. and, conditionally on the diagonal,
// P_ij = min(P_i, P_j) * U_ij with U_ij ~ U[0,1] independent.  Deterministic
// per seed.
ProbabilityMatrix generate_conditional_uniform(std::size_t n, std::uint64_t seed);

}  // namespace unionbound
