#include "unionbound/atom_system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "unionbound/rng.hpp"

namespace unionbound {

namespace {

constexpr double kSimplexTolerance = 1e-12;
constexpr double kCrossCheckTolerance = 1e-10;

std::uint32_t mask_of(const std::vector<std::size_t>& cut_set, std::size_t element_count,
                      std::size_t cut_index) {
  if (cut_set.empty()) {
    throw std::invalid_argument("cut set " + std::to_string(cut_index + 1) + " is empty");
  }
  std::uint32_t mask = 0;
  for (std::size_t e : cut_set) {
    if (e >= element_count) {
      throw std::invalid_argument("cut set " + std::to_string(cut_index + 1) +
                                  " references element " + std::to_string(e + 1) +
                                  " beyond the element count");
    }
    const std::uint32_t bit = 1u << e;
    if (mask & bit) {
      throw std::invalid_argument("cut set " + std::to_string(cut_index + 1) +
                                  " lists element " + std::to_string(e + 1) + " twice");
    }
    mask |= bit;
  }
  return mask;
}

}  // namespace

AtomSystem::AtomSystem(std::size_t element_count, std::vector<double> atom_probs,
                       std::vector<std::vector<std::size_t>> cut_sets)
    : element_count_(element_count),
      atom_probs_(std::move(atom_probs)),
      cut_sets_(std::move(cut_sets)) {
  if (element_count_ < 1 || element_count_ > kMaxElements) {
    throw std::invalid_argument("element count must be between 1 and " +
                                std::to_string(kMaxElements));
  }
  const std::size_t atom_count = std::size_t{1} << element_count_;
  if (atom_probs_.size() != atom_count) {
    throw std::invalid_argument("expected " + std::to_string(atom_count) +
                                " atom probabilities, got " +
                                std::to_string(atom_probs_.size()));
  }
  double sum = 0.0;
  for (double p : atom_probs_) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("atom probabilities must be non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw std::invalid_argument("atom probabilities sum to " + std::to_string(sum) +
                                ", not 1");
  }
  if (cut_sets_.empty()) {
    throw std::invalid_argument("at least one cut set is required");
  }
  masks_.reserve(cut_sets_.size());
  for (std::size_t i = 0; i < cut_sets_.size(); ++i) {
    masks_.push_back(mask_of(cut_sets_[i], element_count_, i));
  }
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    for (std::size_t j = 0; j < masks_.size(); ++j) {
      if (i == j || masks_[i] == masks_[j]) continue;
      if ((masks_[i] & masks_[j]) == masks_[j]) {
        throw std::invalid_argument("cut set " + std::to_string(i + 1) +
                                    " properly contains cut set " + std::to_string(j + 1) +
                                    "; the family must be minimal");
      }
    }
  }
}

std::uint32_t AtomSystem::cut_mask(std::size_t i) const {
  if (i >= masks_.size()) {
    throw std::invalid_argument("cut-set index out of range");
  }
  return masks_[i];
}

bool AtomSystem::cutset_occurs(std::size_t i, std::uint32_t atom) const {
  const std::uint32_t mask = cut_mask(i);
  return (atom & mask) == mask;
}

double AtomSystem::joint_probability(std::span<const std::size_t> indices) const {
  if (indices.empty()) {
    throw std::invalid_argument("joint probability needs at least one cut set");
  }
  std::uint32_t combined = 0;
  for (std::size_t i : indices) combined |= cut_mask(i);
  double sum = 0.0;
  for (std::size_t atom = 0; atom < atom_probs_.size(); ++atom) {
    if ((static_cast<std::uint32_t>(atom) & combined) == combined) {
      sum += atom_probs_[atom];
    }
  }
  return sum;
}

double AtomSystem::union_probability() const {
  double direct = 0.0;
  for (std::size_t atom = 0; atom < atom_probs_.size(); ++atom) {
    for (std::uint32_t mask : masks_) {
      if ((static_cast<std::uint32_t>(atom) & mask) == mask) {
        direct += atom_probs_[atom];
        break;
      }
    }
  }

  const std::size_t n = masks_.size();
  if (n <= 10) {
    // Full inclusion-exclusion over all non-empty index subsets; the two
    // routes must agree or the oracle itself is broken.
    double ie = 0.0;
    for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
      std::uint32_t combined = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (subset & (1u << i)) combined |= masks_[i];
      }
      double p = 0.0;
      for (std::size_t atom = 0; atom < atom_probs_.size(); ++atom) {
        if ((static_cast<std::uint32_t>(atom) & combined) == combined) {
          p += atom_probs_[atom];
        }
      }
      ie += (std::popcount(subset) % 2 == 1) ? p : -p;
    }
    if (std::abs(direct - ie) > kCrossCheckTolerance) {
      throw std::logic_error("direct union probability and inclusion-exclusion disagree");
    }
  }
  return direct;
}

ProbabilityMatrix AtomSystem::project_second_order() const {
  const std::size_t n = masks_.size();
  ProbabilityMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t single[] = {i};
    m.set(i, i, joint_probability(single));
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t pair[] = {i, j};
      m.set(i, j, joint_probability(pair));
    }
  }
  return m;
}

AtomSystem AtomSystem::random_system(std::size_t element_count, std::size_t n,
                                     std::uint64_t seed) {
  if (element_count < 1 || element_count > kMaxElements) {
    throw std::invalid_argument("element count must be between 1 and " +
                                std::to_string(kMaxElements));
  }
  if (n < 1) {
    throw std::invalid_argument("at least one cut set is required");
  }
  // Largest antichain over element subsets (Sperner):
  // C(element_count, element_count / 2).
  {
    std::size_t limit = 1;
    for (std::size_t i = 0; i < element_count / 2; ++i) {
      limit = limit * (element_count - i) / (i + 1);
    }
    if (n > limit) {
      throw std::invalid_argument("cannot fit " + std::to_string(n) +
                                  " incomparable cut sets over " +
                                  std::to_string(element_count) + " elements");
    }
  }

  const std::size_t atom_count = std::size_t{1} << element_count;
  std::vector<double> probs(atom_count);
  rng::Stream prob_stream(seed, 0);
  double total = 0.0;
  for (double& p : probs) {
    // Exponential spacings give a symmetric Dirichlet(1) simplex point.
    p = -std::log(prob_stream.next_unit_open0());
    total += p;
  }
  for (double& p : probs) p /= total;
  // Absorb the normalization residue into the largest entry so the sum is
  // exactly 1 and nothing can be pushed below zero.
  double sum = 0.0;
  for (double p : probs) sum += p;
  const auto largest = std::max_element(probs.begin(), probs.end());
  *largest += 1.0 - sum;

  rng::Stream set_stream(seed, 1);
  std::vector<std::uint32_t> masks;
  masks.reserve(n);
  const std::uint64_t mask_space = atom_count - 1;  // non-empty masks
  std::size_t attempts = 0;
  std::size_t rejection_streak = 0;
  while (masks.size() < n) {
    if (++attempts > 100000) {
      throw std::runtime_error("could not sample an antichain of cut sets; "
                               "reduce the cut-set count");
    }
    const auto candidate = static_cast<std::uint32_t>(1 + set_stream.next_u64() % mask_space);
    bool ok = true;
    for (std::uint32_t prior : masks) {
      if ((candidate & prior) == prior || (candidate & prior) == candidate) {
        ok = false;
        break;
      }
    }
    if (ok) {
      masks.push_back(candidate);
      rejection_streak = 0;
    } else if (++rejection_streak > 200) {
      // A prefix can be unextendable (e.g. the first draw covered every
      // element); discard it and resample rather than spinning to the cap.
      masks.clear();
      rejection_streak = 0;
    }
  }

  std::vector<std::vector<std::size_t>> cut_sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < element_count; ++e) {
      if (masks[i] & (1u << e)) cut_sets[i].push_back(e);
    }
  }
  return AtomSystem(element_count, std::move(probs), std::move(cut_sets));
}

}  // namespace unionbound
