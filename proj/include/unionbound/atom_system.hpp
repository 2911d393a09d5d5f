// Exact ground truth for the bounds: a finite probability space over binary
// element states ("atoms"), a family of cut sets over those elements, and
// exact joint/union probabilities computed by direct summation over atoms.
//
// Atoms are bitmasks over elements; bit j set means element j is down.  A cut
// set occurs in an atom when all of its elements are down there.  The space
// is capped at 12 elements (4096 atoms) - exactness beats scalability here.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "unionbound/matrix.hpp"

namespace unionbound {

class AtomSystem {
 public:
  static constexpr std::size_t kMaxElements = 12;

  // atom_probs has 2^element_count entries, non-negative, summing to 1 within
  // 1e-12.  cut_sets hold 0-based element indices; each must be non-empty,
  // and no cut set may properly contain another (equal duplicates are
  // allowed, since identical events are still a valid event family).
  AtomSystem(std::size_t element_count, std::vector<double> atom_probs,
             std::vector<std::vector<std::size_t>> cut_sets);

  std::size_t element_count() const { return element_count_; }
  std::size_t cut_set_count() const { return masks_.size(); }
  const std::vector<double>& atom_probs() const { return atom_probs_; }
  const std::vector<std::vector<std::size_t>>& cut_sets() const { return cut_sets_; }

  // Bitmask of cut set i's elements.
  std::uint32_t cut_mask(std::size_t i) const;

  // True when every element of cut set i is down in `atom`.
  bool cutset_occurs(std::size_t i, std::uint32_t atom) const;

  // P of the intersection of the listed cut-set events (non-empty list).
  double joint_probability(std::span<const std::size_t> indices) const;

  // P(C_1 u ... u C_n) summed directly over atoms; cross-checked against the
  // full inclusion-exclusion expansion for n <= 10 (must agree within 1e-10).
  double union_probability() const;

  // First- and second-order joint probabilities as a ProbabilityMatrix; the
  // output always passes validate because it comes from a real measure.
  ProbabilityMatrix project_second_order() const;

  // Deterministic random fixture: atom probabilities from a symmetric
  // simplex point, cut sets rejection-sampled into an antichain (no subset /
  // superset / duplicate pairs).
  static AtomSystem random_system(std::size_t element_count, std::size_t n,
                                  std::uint64_t seed);

 private:
  std::size_t element_count_ = 0;
  std::vector<double> atom_probs_;
  std::vector<std::vector<std::size_t>> cut_sets_;
  std::vector<std::uint32_t> masks_;
};

}  // namespace unionbound
