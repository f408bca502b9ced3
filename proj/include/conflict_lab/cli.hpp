#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace clab::cli {

using nlohmann::json;

/// Report records for a single function: measures, witnesses and, for
/// nonconstant functions, the witness-pair chi lower bound. A positive
/// budget adds a maximize_pairs search.
struct MeasuresOptions {
  int budget = 0;
  std::uint64_t seed = 0;
  int max_n = 12;
};
json cmd_measures(const std::string& spec, const MeasuresOptions& options);

enum class VerifyMode { kAll, kRandom };
struct VerifyOptions {
  int n = 3;
  VerifyMode mode = VerifyMode::kAll;
  int count = 200;
  std::uint64_t seed = 0;
};
/// Checks chi_lower_bound >= (bs + 1) / 2 exactly. The report's "passed"
/// field is true iff every check held.
json cmd_verify_theorem(const VerifyOptions& options);

struct SurveyOptions {
  std::vector<std::string> families = {"AND", "OR", "XOR", "MAJ", "ANDOR"};
  int n_min = 1;
  int n_max = 4;
  int budget = 0;
  std::uint64_t seed = 0;
  int max_n = 12;
};
json cmd_survey(const SurveyOptions& options);

struct ChiOptions {
  int budget = 200;
  std::uint64_t seed = 0;
  int max_n = 12;
};
json cmd_chi_lb(const std::string& spec, const ChiOptions& options);

struct SimulateOptions {
  std::string pair_source = "witness";  // or a JSON file path
  std::string tree_source = "optimal";  // or a tree text file path
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  int max_n = 12;
};
json cmd_simulate(const std::string& spec, const SimulateOptions& options);

json cmd_compose(const std::string& outer, const std::string& inner);

/// Entry point behind the conflict_lab binary. Returns the exit code:
/// 0 when all requested checks pass, 1 when a check fails, 2 on usage,
/// parse or cap errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace clab::cli
