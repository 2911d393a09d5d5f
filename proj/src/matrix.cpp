#include "unionbound/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "unionbound/rng.hpp"

namespace unionbound {

ProbabilityMatrix::ProbabilityMatrix(std::size_t n) : n_(n), p_(n * n, 0.0) {
  if (n == 0) throw std::invalid_argument("matrix must have at least one event");
}

ProbabilityMatrix ProbabilityMatrix::from_rows(
    const std::vector<std::vector<double>>& rows, double scale) {
  const std::size_t n = rows.size();
  if (n == 0) throw std::invalid_argument("matrix must have at least one row");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      std::ostringstream oss;
      oss << "matrix is not square: row " << (i + 1) << " has " << rows[i].size()
          << " entries, expected " << n;
      throw std::invalid_argument(oss.str());
    }
  }
  ProbabilityMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.p_[i * n + j] = rows[i][j] * scale;
  return m;
}

void ProbabilityMatrix::set(std::size_t i, std::size_t j, double value) {
  p_[i * n_ + j] = value;
  p_[j * n_ + i] = value;
}

double ProbabilityMatrix::sum_first_order() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) sum += first_order(i);
  return sum;
}

std::vector<std::vector<double>> ProbabilityMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = p_[i * n_ + j];
  return out;
}

Ordering::Ordering(std::vector<std::size_t> positions) : sigma_(std::move(positions)) {
  const std::size_t n = sigma_.size();
  if (n == 0) throw std::invalid_argument("ordering must be non-empty");
  std::vector<bool> seen(n, false);
  for (std::size_t idx : sigma_) {
    if (idx >= n)
      throw std::invalid_argument("ordering entry " + std::to_string(idx + 1) +
                                  " outside 1.." + std::to_string(n));
    if (seen[idx])
      throw std::invalid_argument("ordering repeats index " + std::to_string(idx + 1));
    seen[idx] = true;
  }
}

Ordering Ordering::identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return Ordering(std::move(v));
}

Ordering Ordering::from_one_based(const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> v;
  v.reserve(indices.size());
  for (std::size_t idx : indices) {
    if (idx == 0) throw std::invalid_argument("ordering indices are 1-based; got 0");
    v.push_back(idx - 1);
  }
  return Ordering(std::move(v));
}

Ordering Ordering::parse(const std::string& text) {
  std::vector<std::size_t> indices;
  std::string token;
  for (char ch : text) {
    if (ch == ',' || ch == '-' || ch == ' ') {
      if (!token.empty()) {
        indices.push_back(std::stoul(token));
        token.clear();
      }
    } else if (ch >= '0' && ch <= '9') {
      token.push_back(ch);
    } else {
      throw std::invalid_argument("cannot parse ordering '" + text + "'");
    }
  }
  if (!token.empty()) indices.push_back(std::stoul(token));
  if (indices.empty()) throw std::invalid_argument("empty ordering '" + text + "'");
  return from_one_based(indices);
}

Ordering Ordering::inverse() const {
  std::vector<std::size_t> inv(sigma_.size());
  for (std::size_t pos = 0; pos < sigma_.size(); ++pos) inv[sigma_[pos]] = pos;
  return Ordering(std::move(inv));
}

std::vector<std::size_t> Ordering::one_based() const {
  std::vector<std::size_t> v;
  v.reserve(sigma_.size());
  for (std::size_t idx : sigma_) v.push_back(idx + 1);
  return v;
}

std::string Ordering::to_string(char separator) const {
  std::string out;
  for (std::size_t pos = 0; pos < sigma_.size(); ++pos) {
    if (pos > 0) out.push_back(separator);
    out += std::to_string(sigma_[pos] + 1);
  }
  return out;
}

std::string Violation::message() const {
  std::ostringstream oss;
  const std::size_t a = i + 1, b = j + 1;
  switch (kind) {
    case Kind::Symmetry:
      oss << "p[" << a << "][" << b << "] = " << value << " != p[" << b << "][" << a
          << "] = " << limit;
      break;
    case Kind::DiagonalRange:
      oss << "p[" << a << "][" << a << "] = " << value << " outside [0, 1]";
      break;
    case Kind::FrechetLower:
      oss << "p[" << a << "][" << b << "] = " << value << " is negative";
      break;
    case Kind::FrechetUpper:
      oss << "p[" << a << "][" << b << "] = " << value << " > min(P_" << a << ", P_" << b
          << ") = " << limit;
      break;
  }
  return oss.str();
}

ValidationReport validate(const ProbabilityMatrix& matrix) {
  ValidationReport report;
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double pii = matrix(i, i);
    if (!(pii >= 0.0 && pii <= 1.0))
      report.violations.push_back({Violation::Kind::DiagonalRange, i, i, pii, 1.0});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double pij = matrix(i, j);
      const double pji = matrix(j, i);
      if (pij != pji)
        report.violations.push_back({Violation::Kind::Symmetry, i, j, pij, pji});
      const double cap = std::min(matrix(i, i), matrix(j, j));
      if (!(pij >= -kFrechetSlack))
        report.violations.push_back({Violation::Kind::FrechetLower, i, j, pij, 0.0});
      else if (!(pij <= cap + kFrechetSlack))
        report.violations.push_back({Violation::Kind::FrechetUpper, i, j, pij, cap});
    }
  }
  return report;
}

ProbabilityMatrix reorder(const ProbabilityMatrix& matrix, const Ordering& ordering) {
  const std::size_t n = matrix.size();
  if (ordering.size() != n)
    throw std::invalid_argument("ordering length " + std::to_string(ordering.size()) +
                                " does not match matrix size " + std::to_string(n));
  ProbabilityMatrix out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.set(a, b, matrix(ordering[a], ordering[b]));
  return out;
}

ProbabilityMatrix generate_delta(const DeltaModel& model) {
  const std::size_t n = model.first_order.size();
  if (n == 0) throw std::invalid_argument("delta model needs at least one probability");
  for (std::size_t i = 0; i < n; ++i) {
    const double p = model.first_order[i];
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("first-order probability " + std::to_string(i + 1) +
                                  " outside [0, 1]");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double prod = model.first_order[i] * model.first_order[j];
      const double lo = -prod;
      const double hi = std::min(model.first_order[i], model.first_order[j]) - prod;
      if (!(model.delta >= lo && model.delta <= hi)) {
        std::ostringstream oss;
        oss << "delta = " << model.delta << " outside [" << lo << ", " << hi
            << "] for pair (" << (i + 1) << ", " << (j + 1) << ")";
        throw std::invalid_argument(oss.str());
      }
    }
  }
  ProbabilityMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, model.first_order[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m.set(i, j, model.first_order[i] * model.first_order[j] + model.delta);
  return m;
}

ProbabilityMatrix generate_conditional_uniform(std::size_t n, std::uint64_t seed) {
  ProbabilityMatrix m(n);
  // Draw index k addresses substream (seed, k): diagonal first, then the
  // upper triangle row by row.
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, rng::unit(seed, i));
  std::uint64_t k = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double cap = std::min(m(i, i), m(j, j));
      m.set(i, j, cap * rng::unit(seed, k));
    }
  }
  return m;
}

}  // namespace unionbound
