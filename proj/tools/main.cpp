// Command-line front end: validate inputs, evaluate bounds, search orderings,
// check strict-improvement conditions, generate matrices, query the exact
// oracle, and run the Monte Carlo experiments.  Emits JSON (default) or CSV.
//
// Exit codes: 0 success, 1 usage error, 2 validation/domain failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unionbound/atom_system.hpp"
#include "unionbound/bound.hpp"
#include "unionbound/conditions.hpp"
#include "unionbound/experiments.hpp"
#include "unionbound/json_io.hpp"
#include "unionbound/matrix.hpp"
#include "unionbound/search.hpp"

namespace {

using unionbound::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

void emit_text(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw std::runtime_error("cannot write " + output_path);
  }
  out << text;
}

void emit_json(const Json& doc, const std::string& output_path) {
  emit_text(doc.dump(2) + "\n", output_path);
}

std::string format_probability(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) {
      values.push_back(std::stod(token));
      token.clear();
    }
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  if (values.empty()) {
    throw std::runtime_error("empty number list '" + text + "'");
  }
  return values;
}

unionbound::Ordering ordering_or_identity(const std::string& flag, std::size_t n) {
  if (flag.empty()) return unionbound::Ordering::identity(n);
  auto ordering = unionbound::Ordering::parse(flag);
  if (ordering.size() != n) {
    throw std::runtime_error("ordering has " + std::to_string(ordering.size()) +
                             " entries but the matrix has " + std::to_string(n));
  }
  return ordering;
}

void require_valid(const unionbound::ProbabilityMatrix& matrix) {
  const auto report = unionbound::validate(matrix);
  if (!report.ok()) {
    std::string message = "matrix fails validation:";
    for (const auto& v : report.violations) message += "\n  " + v.message();
    throw std::runtime_error(message);
  }
}

Json summary_to_json(const unionbound::SearchSummary& s) {
  Json j;
  j["level"] = s.level;
  j["min"] = s.min;
  j["max"] = s.max;
  j["mean"] = s.mean;
  j["median"] = s.median;
  j["cov"] = s.cov;
  j["minimizer_count"] = s.minimizer_count;
  Json argmin = Json::array();
  for (const auto& ordering : s.argmin) argmin.push_back(ordering.one_based());
  j["argmin"] = std::move(argmin);
  j["wall_time_s"] = s.wall_time_s;
  return j;
}

Json estimate_to_json(const unionbound::EstimateResult& e) {
  Json j;
  j["estimate"] = e.estimate;
  j["std_error"] = e.std_error;
  j["trials"] = e.trials;
  j["seed"] = e.seed;
  return j;
}

struct CommonFlags {
  std::string input;
  std::string output;
  std::string ordering;
  std::string format = "json";
};

int run_validate(const CommonFlags& flags) {
  const Json doc = [&] {
    std::ifstream in(flags.input);
    if (!in) throw std::runtime_error("cannot open " + flags.input);
    Json d;
    in >> d;
    return d;
  }();

  Json report;
  if (doc.contains("cut_sets")) {
    // Constructing the system runs all of its invariant checks.
    const auto system = unionbound::system_from_json(doc);
    report["type"] = "system";
    report["n_el"] = system.element_count();
    report["n"] = system.cut_set_count();
    report["ok"] = true;
    report["violations"] = Json::array();
    emit_json(report, flags.output);
    return kExitOk;
  }

  const auto matrix = unionbound::matrix_from_json(doc);
  const auto result = unionbound::validate(matrix);
  report["type"] = "matrix";
  report["n"] = matrix.size();
  report["ok"] = result.ok();
  Json violations = Json::array();
  for (const auto& v : result.violations) {
    Json entry;
    entry["i"] = v.i + 1;
    entry["j"] = v.j + 1;
    entry["value"] = v.value;
    entry["limit"] = v.limit;
    entry["message"] = v.message();
    violations.push_back(std::move(entry));
  }
  report["violations"] = std::move(violations);
  emit_json(report, flags.output);
  return result.ok() ? kExitOk : kExitFailure;
}

int run_bound(const CommonFlags& flags, std::size_t level, std::size_t max_level) {
  const auto matrix = unionbound::load_matrix(flags.input);
  require_valid(matrix);
  const auto ordering = ordering_or_identity(flags.ordering, matrix.size());

  Json out;
  out["n"] = matrix.size();
  out["ordering"] = ordering.one_based();
  if (level > 0) {
    out["level"] = level;
    out["value"] = unionbound::bound(matrix, ordering, level);
  } else {
    const std::size_t top = max_level > 0 ? max_level : matrix.size() - 1;
    const auto levels = unionbound::bound_all_levels(matrix, ordering, top);
    out["max_level"] = top;
    out["values"] = levels.values;
  }
  emit_json(out, flags.output);
  return kExitOk;
}

int run_search(const CommonFlags& flags, std::size_t max_level,
               unionbound::SearchOptions options) {
  const auto matrix = unionbound::load_matrix(flags.input);
  require_valid(matrix);
  const std::size_t top = max_level > 0 ? max_level : matrix.size() - 1;

  if (flags.format == "csv") {
    std::string csv = "perm_index,ordering";
    for (std::size_t m = 1; m <= top; ++m) csv += ",B" + std::to_string(m);
    csv += "\n";
    options.row_sink = [&](std::size_t rank, const unionbound::Ordering& ordering,
                           std::span<const double> values) {
      csv += std::to_string(rank) + "," + ordering.to_string();
      for (double v : values) csv += "," + format_probability(v);
      csv += "\n";
    };
    unionbound::exhaustive_search(matrix, top, options);
    emit_text(csv, flags.output);
    return kExitOk;
  }

  const auto summaries = unionbound::exhaustive_search(matrix, top, options);
  Json out;
  out["n"] = matrix.size();
  out["max_level"] = top;
  out["tolerance"] = options.tolerance;
  Json levels = Json::array();
  for (const auto& s : summaries) levels.push_back(summary_to_json(s));
  out["levels"] = std::move(levels);
  emit_json(out, flags.output);
  return kExitOk;
}

int run_check(const CommonFlags& flags, std::size_t level, std::size_t line,
              std::size_t count_n, std::size_t count_c) {
  if (count_n > 0 || count_c > 0) {
    if (count_n == 0 || count_c == 0) {
      throw std::runtime_error("--count-n and --count-c go together");
    }
    Json out;
    out["n"] = count_n;
    out["c"] = count_c;
    out["orderings_count"] =
        unionbound::count_orderings_condition1(count_n, count_c).str();
    emit_json(out, flags.output);
    return kExitOk;
  }

  const auto matrix = unionbound::load_matrix(flags.input);
  require_valid(matrix);
  const auto ordering = ordering_or_identity(flags.ordering, matrix.size());

  Json out;
  out["n"] = matrix.size();
  out["ordering"] = ordering.one_based();
  out["level"] = level;

  if (matrix.size() >= 3) {
    const auto witness1 = unionbound::condition1(matrix, ordering);
    if (witness1) {
      Json w;
      w["a"] = witness1->a + 1;
      w["b"] = witness1->b + 1;
      w["c"] = witness1->c + 1;
      out["condition1"] = std::move(w);
    } else {
      out["condition1"] = nullptr;
    }
  } else {
    out["condition1"] = nullptr;
  }

  if (level + 1 < matrix.size()) {
    const auto witness2 = unionbound::condition2_any(matrix, ordering, level);
    if (witness2) {
      Json w;
      w["level"] = witness2->level;
      w["line"] = witness2->line + 1;
      out["condition2"] = std::move(w);
    } else {
      out["condition2"] = nullptr;
    }
  } else {
    out["condition2"] = nullptr;
  }

  if (line > 0) {
    out["line"] = line;
    out["condition2_at"] =
        unionbound::condition2_at(matrix, ordering, level, line - 1);
  }
  emit_json(out, flags.output);
  return kExitOk;
}

int run_generate_delta(const std::string& first_order, double delta,
                       const std::string& output) {
  const unionbound::DeltaModel model{parse_double_list(first_order), delta};
  const auto matrix = unionbound::generate_delta(model);
  emit_json(unionbound::matrix_to_json(matrix), output);
  return kExitOk;
}

int run_generate_uniform(std::size_t n, std::uint64_t seed, const std::string& output) {
  const auto matrix = unionbound::generate_conditional_uniform(n, seed);
  emit_json(unionbound::matrix_to_json(matrix), output);
  return kExitOk;
}

int run_oracle(const std::string& input, bool random, std::size_t n_el, std::size_t n,
               std::uint64_t seed, const std::string& save, const std::string& output) {
  std::optional<unionbound::AtomSystem> system;
  if (random) {
    system = unionbound::AtomSystem::random_system(n_el, n, seed);
  } else {
    if (input.empty()) {
      throw std::runtime_error("oracle needs --input or --random");
    }
    system = unionbound::load_system(input);
  }
  if (!save.empty()) {
    unionbound::save_system(*system, save);
  }

  Json out;
  out["n_el"] = system->element_count();
  out["n"] = system->cut_set_count();
  out["union_probability"] = system->union_probability();
  out["matrix"] = unionbound::matrix_to_json(system->project_second_order());
  emit_json(out, output);
  return kExitOk;
}

int run_experiment_line(std::uint64_t trials, std::uint64_t seed, unsigned workers,
                        const std::string& output) {
  const auto result =
      unionbound::estimate_line_improvement_probability(trials, seed, workers);
  Json out = estimate_to_json(result.total);
  out["analytic"] = unionbound::kLineImprovementProbability;
  Json partition = Json::array();
  for (std::size_t k = 0; k < 4; ++k) {
    Json p;
    p["estimate"] = result.partition[k].estimate;
    p["std_error"] = result.partition[k].std_error;
    p["analytic"] = unionbound::kLineImprovementPartition[k];
    partition.push_back(std::move(p));
  }
  out["partition"] = std::move(partition);
  emit_json(out, output);
  return kExitOk;
}

int run_experiment_improvement(std::size_t n, std::size_t level, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers,
                               const std::string& output) {
  const auto result =
      unionbound::estimate_improvement_probability(n, level, trials, seed, workers);
  Json out;
  out["n"] = n;
  out["pair"] = {level, level + 1};
  out["trials"] = result.trials;
  out["seed"] = result.seed;
  out["estimate"] = result.estimate;
  out["std_error"] = result.std_error;
  if (level == 1) {
    out["asymptotic_lower_bound"] = unionbound::improvement_probability_lower_bound(n);
    if (n < 3) out["lower_bound_vacuous"] = true;
  }
  emit_json(out, output);
  return kExitOk;
}

int run_experiment_delta(const std::string& first_order, const std::string& deltas,
                         std::size_t max_level, unionbound::SearchOptions options,
                         const std::string& format, const std::string& output) {
  const auto p = parse_double_list(first_order);
  const auto d = parse_double_list(deltas);
  const std::size_t top = max_level > 0 ? max_level : p.size() - 1;
  const auto entries = unionbound::delta_sweep(p, d, top, options);

  if (format == "csv") {
    std::string csv = "delta";
    for (std::size_t m = 1; m <= top; ++m) csv += ",min_B" + std::to_string(m);
    for (std::size_t m = 1; m < top; ++m) {
      csv += ",improved_vs_B" + std::to_string(m);
    }
    csv += "\n";
    for (const auto& e : entries) {
      csv += format_probability(e.delta);
      for (const auto& s : e.summaries) csv += "," + format_probability(s.min);
      for (std::size_t c : e.strict_improvement_counts) csv += "," + std::to_string(c);
      csv += "\n";
    }
    emit_text(csv, output);
    return kExitOk;
  }

  Json out = Json::array();
  for (const auto& e : entries) {
    Json entry;
    entry["delta"] = e.delta;
    entry["strict_improvement_counts"] = e.strict_improvement_counts;
    Json levels = Json::array();
    for (const auto& s : e.summaries) levels.push_back(summary_to_json(s));
    entry["levels"] = std::move(levels);
    out.push_back(std::move(entry));
  }
  emit_json(out, output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order union probability bounds: evaluation, ordering search,\n"
               "strict-improvement conditions, exact oracle, and experiments"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::size_t level = 0;
  std::size_t check_level = 1;
  std::size_t improve_level = 1;
  std::size_t max_level = 0;
  std::size_t line = 0;
  std::size_t count_n = 0;
  std::size_t count_c = 0;
  unionbound::SearchOptions options;
  std::string first_order;
  std::string deltas;
  double delta = 0.0;
  std::size_t gen_n = 4;
  std::size_t n_el = 4;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  unsigned workers = 1;
  bool random_system = false;
  std::string save_path;

  auto* validate_cmd = app.add_subcommand("validate", "Check a matrix or system file");
  validate_cmd->add_option("--input", flags.input, "matrix or system JSON")->required();
  validate_cmd->add_option("--output", flags.output, "write the report here");

  auto* bound_cmd = app.add_subcommand("bound", "Evaluate the bound in one ordering");
  bound_cmd->add_option("--input", flags.input, "matrix JSON")->required();
  bound_cmd->add_option("--ordering", flags.ordering, "1-based ordering, e.g. 3,1,2,4");
  bound_cmd->add_option("--level", level, "single level to evaluate");
  bound_cmd->add_option("--max-level", max_level, "levels 1..L (default n-1)");
  bound_cmd->add_option("--output", flags.output, "write JSON here");

  auto* search_cmd = app.add_subcommand("search", "Enumerate all orderings");
  search_cmd->add_option("--input", flags.input, "matrix JSON")->required();
  search_cmd->add_option("--max-level", max_level, "levels 1..L (default n-1)");
  search_cmd->add_option("--tolerance", options.tolerance, "relative minimizer tolerance");
  search_cmd->add_option("--max-argmin", options.max_argmin, "argmin orderings kept");
  search_cmd->add_option("--cap", options.cap, "largest n to enumerate");
  search_cmd->add_option("--workers", options.workers, "worker threads (0 = auto)");
  search_cmd->add_option("--format", flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  search_cmd->add_option("--output", flags.output, "write results here");

  auto* check_cmd = app.add_subcommand("check", "Strict-improvement conditions");
  check_cmd->add_option("--input", flags.input, "matrix JSON");
  check_cmd->add_option("--ordering", flags.ordering, "1-based ordering");
  check_cmd->add_option("--level", check_level, "condition level m (default 1)");
  check_cmd->add_option("--line", line, "also test one 1-based line");
  check_cmd->add_option("--count-n", count_n, "ordering-count formula: n");
  check_cmd->add_option("--count-c", count_c, "ordering-count formula: position c");
  check_cmd->add_option("--output", flags.output, "write JSON here");

  auto* generate_cmd = app.add_subcommand("generate", "Produce a matrix file");
  generate_cmd->require_subcommand(1);
  auto* gen_delta = generate_cmd->add_subcommand("delta", "shared-correlation model");
  gen_delta->add_option("--first-order", first_order, "comma-separated P_i")->required();
  gen_delta->add_option("--delta", delta, "joint-probability offset")->required();
  gen_delta->add_option("--output", flags.output, "write matrix JSON here");
  auto* gen_uniform = generate_cmd->add_subcommand("uniform", "conditional-uniform model");
  gen_uniform->add_option("--n", gen_n, "number of events")->required();
  gen_uniform->add_option("--seed", seed, "RNG seed");
  gen_uniform->add_option("--output", flags.output, "write matrix JSON here");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact union probability");
  oracle_cmd->add_option("--input", flags.input, "system JSON");
  oracle_cmd->add_flag("--random", random_system, "generate a random system");
  oracle_cmd->add_option("--n-el", n_el, "elements (random system)");
  oracle_cmd->add_option("--n", gen_n, "cut sets (random system)");
  oracle_cmd->add_option("--seed", seed, "RNG seed (random system)");
  oracle_cmd->add_option("--save", save_path, "write the system JSON here");
  oracle_cmd->add_option("--output", flags.output, "write the report here");

  auto* experiment_cmd = app.add_subcommand("experiment", "Monte Carlo studies");
  experiment_cmd->require_subcommand(1);
  auto* exp_line = experiment_cmd->add_subcommand(
      "line-improvement", "single-line level-2 vs level-1 deduction event");
  std::uint64_t line_trials = 1000000;
  exp_line->add_option("--trials", line_trials, "trial count");
  exp_line->add_option("--seed", seed, "RNG seed");
  exp_line->add_option("--workers", workers, "worker threads (0 = auto)");
  exp_line->add_option("--output", flags.output, "write JSON here");
  auto* exp_improve = experiment_cmd->add_subcommand(
      "improvement", "optimal-bound improvement rate between adjacent levels");
  exp_improve->add_option("--n", gen_n, "number of events")->required();
  exp_improve->add_option("--level", improve_level, "lower level of the pair");
  exp_improve->add_option("--trials", trials, "trial count");
  exp_improve->add_option("--seed", seed, "RNG seed");
  exp_improve->add_option("--workers", workers, "worker threads (0 = auto)");
  exp_improve->add_option("--output", flags.output, "write JSON here");
  auto* exp_delta = experiment_cmd->add_subcommand(
      "delta", "exhaustive sweep over shared-correlation offsets");
  exp_delta->add_option("--first-order", first_order, "comma-separated P_i")->required();
  exp_delta->add_option("--deltas", deltas, "comma-separated offsets")->required();
  exp_delta->add_option("--max-level", max_level, "levels 1..L (default n-1)");
  exp_delta->add_option("--workers", options.workers, "worker threads (0 = auto)");
  exp_delta->add_option("--format", flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  exp_delta->add_option("--output", flags.output, "write results here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(flags);
    if (bound_cmd->parsed()) return run_bound(flags, level, max_level);
    if (search_cmd->parsed()) return run_search(flags, max_level, options);
    if (check_cmd->parsed()) return run_check(flags, check_level, line, count_n, count_c);
    if (generate_cmd->parsed()) {
      if (gen_delta->parsed()) return run_generate_delta(first_order, delta, flags.output);
      return run_generate_uniform(gen_n, seed, flags.output);
    }
    if (oracle_cmd->parsed()) {
      return run_oracle(flags.input, random_system, n_el, gen_n, seed, save_path,
                        flags.output);
    }
    if (experiment_cmd->parsed()) {
      if (exp_line->parsed()) {
        return run_experiment_line(line_trials, seed, workers, flags.output);
      }
      if (exp_improve->parsed()) {
        return run_experiment_improvement(gen_n, improve_level, trials, seed, workers,
                                          flags.output);
      }
      return run_experiment_delta(first_order, deltas, max_level, options, flags.format,
                                  flags.output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
