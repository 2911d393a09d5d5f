#include "unionbound/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "unionbound/bound.hpp"

namespace unionbound {

namespace {

std::uint64_t factorial_u64(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Lexicographic rank -> permutation of {0..n-1} (factorial number system).
std::vector<std::size_t> unrank_permutation(std::uint64_t rank, std::size_t n) {
  std::vector<std::uint64_t> fact(n, 1);
  for (std::size_t i = 1; i < n; ++i) fact[i] = fact[i - 1] * i;
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = n; i-- > 0;) {
    const std::uint64_t f = fact[i];
    const std::size_t d = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[d]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return out;
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw != 0 ? hw : 1;
}

}  // namespace

Stats summary_stats(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("summary_stats requires a non-empty sequence");
  }
  const std::size_t count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(count);

  double sq = 0.0;
  for (double v : values) {
    const double d = v - mean;
    sq += d * d;
  }
  const double sd = std::sqrt(sq / static_cast<double>(count));

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = (count % 2 == 1)
                            ? sorted[count / 2]
                            : 0.5 * (sorted[count / 2 - 1] + sorted[count / 2]);

  return Stats{mean, median, sd, mean != 0.0 ? sd / mean : 0.0};
}

std::vector<SearchSummary> exhaustive_search(const ProbabilityMatrix& matrix,
                                             std::size_t max_level,
                                             const SearchOptions& options) {
  const auto start_time = std::chrono::steady_clock::now();
  const std::size_t n = matrix.size();
  if (n > options.cap) {
    throw std::invalid_argument(
        "matrix size " + std::to_string(n) + " exceeds the exhaustive cap of " +
        std::to_string(options.cap) + "; use the greedy heuristic instead");
  }
  if (max_level < 1 || max_level + 1 > n) {
    throw std::invalid_argument("max level must satisfy 1 <= level <= n-1");
  }

  const std::uint64_t total = factorial_u64(n);
  // One value buffer per level; workers own disjoint rank ranges, so the fill
  // is race-free and its content independent of the worker count.
  std::vector<std::vector<double>> values(max_level);
  for (auto& buf : values) buf.resize(total);

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(options.workers), total));
  auto fill_block = [&](std::uint64_t begin, std::uint64_t end) {
    LevelEvaluator evaluator(matrix, max_level);
    std::vector<std::size_t> perm = unrank_permutation(begin, n);
    std::vector<double> row(max_level);
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      evaluator.evaluate(perm, row);
      for (std::size_t m = 0; m < max_level; ++m) values[m][rank] = row[m];
      std::next_permutation(perm.begin(), perm.end());
    }
  };
  if (workers <= 1) {
    fill_block(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = total * w / workers;
      const std::uint64_t end = total * (w + 1) / workers;
      pool.emplace_back(fill_block, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  // Everything derived from the buffers runs single-threaded in rank order.
  std::vector<SearchSummary> summaries(max_level);
  for (std::size_t m = 0; m < max_level; ++m) {
    SearchSummary& s = summaries[m];
    s.level = m + 1;
    const Stats stats = summary_stats(values[m]);
    s.mean = stats.mean;
    s.median = stats.median;
    // Ordering-scatter summaries report the sample (N-1) standard
    // deviation, so the search summary does too; the generic summary_stats
    // helper stays with the population convention.
    const auto count = static_cast<double>(total);
    const double sample_sd = stats.sd * std::sqrt(count / (count - 1.0));
    s.cov = stats.mean != 0.0 ? sample_sd / stats.mean : 0.0;
    s.min = *std::min_element(values[m].begin(), values[m].end());
    s.max = *std::max_element(values[m].begin(), values[m].end());
  }

  std::vector<double> cutoff(max_level);
  for (std::size_t m = 0; m < max_level; ++m) {
    cutoff[m] = summaries[m].min +
                std::max(options.tolerance * summaries[m].min, options.tolerance_floor);
  }
  {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<double> row(max_level);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
      bool want_ordering = options.row_sink != nullptr;
      for (std::size_t m = 0; m < max_level && !want_ordering; ++m) {
        want_ordering = values[m][rank] <= cutoff[m] &&
                        summaries[m].argmin.size() < options.max_argmin;
      }
      for (std::size_t m = 0; m < max_level; ++m) {
        if (values[m][rank] <= cutoff[m]) {
          ++summaries[m].minimizer_count;
        }
      }
      if (want_ordering) {
        Ordering ordering(perm);
        for (std::size_t m = 0; m < max_level; ++m) {
          if (values[m][rank] <= cutoff[m] &&
              summaries[m].argmin.size() < options.max_argmin) {
            summaries[m].argmin.push_back(ordering);
          }
        }
        if (options.row_sink) {
          for (std::size_t m = 0; m < max_level; ++m) row[m] = values[m][rank];
          options.row_sink(rank, ordering, row);
        }
      }
      std::next_permutation(perm.begin(), perm.end());
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  for (auto& s : summaries) s.wall_time_s = elapsed;
  return summaries;
}

std::pair<double, Ordering> optimal_bound(const ProbabilityMatrix& matrix,
                                          std::size_t level,
                                          const SearchOptions& options) {
  SearchOptions opts = options;
  if (opts.max_argmin == 0) opts.max_argmin = 1;
  const auto summaries = exhaustive_search(matrix, level, opts);
  const SearchSummary& s = summaries.at(level - 1);
  return {s.min, s.argmin.front()};
}

Ordering greedy_ordering(const ProbabilityMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n < 2) {
    throw std::invalid_argument("greedy ordering requires at least 2 events");
  }
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);

  // Seed with the largest joint probability; ties resolve to the smallest
  // index pair so the result is deterministic.
  std::size_t best_i = 0, best_j = 1;
  double best = matrix(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix(i, j) > best) {
        best = matrix(i, j);
        best_i = i;
        best_j = j;
      }
    }
  }
  order.push_back(best_i);
  order.push_back(best_j);
  placed[best_i] = placed[best_j] = true;

  while (order.size() < n) {
    std::size_t pick = n;
    double pick_score = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (placed[k]) continue;
      double score = 0.0;
      for (std::size_t j : order) score = std::max(score, matrix(j, k));
      if (score > pick_score) {
        pick_score = score;
        pick = k;
      }
    }
    order.push_back(pick);
    placed[pick] = true;
  }
  return Ordering(order);
}

}  // namespace unionbound
