// JSON (de)serialization for probability matrices and atom systems.
//
// Matrix document: {"n": 4, "matrix": [[...], ...], "scale": 0.01}
//   - "matrix" is the full symmetric n x n array of already-consistent
//     first/second-order probabilities; "scale" (optional, default 1)
//     multiplies every entry on load, which keeps small-probability tables
//     legible.
// System document: {"n_el": 3, "atom_probs": [...], "cut_sets": [[1,2],[3]]}
//   - cut sets use 1-based element indices on disk, 0-based in memory.

#pragma once

#include <string>

#include <json.hpp>

#include "unionbound/atom_system.hpp"
#include "unionbound/matrix.hpp"

namespace unionbound {

using Json = nlohmann::ordered_json;

ProbabilityMatrix matrix_from_json(const Json& doc);
Json matrix_to_json(const ProbabilityMatrix& matrix);
ProbabilityMatrix load_matrix(const std::string& path);
void save_matrix(const ProbabilityMatrix& matrix, const std::string& path);

AtomSystem system_from_json(const Json& doc);
Json system_to_json(const AtomSystem& system);
AtomSystem load_system(const std::string& path);
void save_system(const AtomSystem& system, const std::string& path);

}  // namespace unionbound
