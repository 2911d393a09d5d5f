#include "unionbound/json_io.hpp"

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace unionbound {

namespace {

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  Json doc;
  try {
    in >> doc;
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return doc;
}

void write_document(const Json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace

ProbabilityMatrix matrix_from_json(const Json& doc) {
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    throw std::runtime_error("matrix document needs a \"matrix\" array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["matrix"]) {
    rows.push_back(row.get<std::vector<double>>());
  }
  if (doc.contains("n")) {
    const auto n = doc["n"].get<std::size_t>();
    if (n != rows.size()) {
      throw std::runtime_error("\"n\" is " + std::to_string(n) + " but the matrix has " +
                               std::to_string(rows.size()) + " rows");
    }
  }
  const double scale = doc.value("scale", 1.0);
  return ProbabilityMatrix::from_rows(rows, scale);
}

Json matrix_to_json(const ProbabilityMatrix& matrix) {
  Json doc;
  const std::size_t n = matrix.size();
  doc["n"] = n;
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(matrix(i, j));
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc;
}

ProbabilityMatrix load_matrix(const std::string& path) {
  return matrix_from_json(read_document(path));
}

void save_matrix(const ProbabilityMatrix& matrix, const std::string& path) {
  write_document(matrix_to_json(matrix), path);
}

AtomSystem system_from_json(const Json& doc) {
  for (const char* key : {"n_el", "atom_probs", "cut_sets"}) {
    if (!doc.contains(key)) {
      throw std::runtime_error(std::string("system document needs \"") + key + "\"");
    }
  }
  const auto n_el = doc["n_el"].get<std::size_t>();
  auto probs = doc["atom_probs"].get<std::vector<double>>();
  std::vector<std::vector<std::size_t>> cut_sets;
  for (const auto& entry : doc["cut_sets"]) {
    std::vector<std::size_t> set;
    for (const auto& e : entry) {
      const auto idx = e.get<std::size_t>();
      if (idx < 1) {
        throw std::runtime_error("cut-set element indices are 1-based on disk");
      }
      set.push_back(idx - 1);
    }
    cut_sets.push_back(std::move(set));
  }
  return AtomSystem(n_el, std::move(probs), std::move(cut_sets));
}

Json system_to_json(const AtomSystem& system) {
  Json doc;
  doc["n_el"] = system.element_count();
  doc["atom_probs"] = system.atom_probs();
  Json sets = Json::array();
  for (const auto& cut_set : system.cut_sets()) {
    Json set = Json::array();
    for (std::size_t e : cut_set) set.push_back(e + 1);
    sets.push_back(std::move(set));
  }
  doc["cut_sets"] = std::move(sets);
  return doc;
}

AtomSystem load_system(const std::string& path) {
  return system_from_json(read_document(path));
}

void save_system(const AtomSystem& system, const std::string& path) {
  write_document(system_to_json(system), path);
}

}  // namespace unionbound
