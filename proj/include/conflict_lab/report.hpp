#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "conflict_lab/conflict.hpp"
#include "conflict_lab/measures.hpp"
#include "conflict_lab/montecarlo.hpp"

namespace clab::report {

using nlohmann::json;

inline constexpr const char* kSchema = "1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Every rational is emitted as a "num/den" string.
json rational(const Rational& q);

json pair_to_json(const DistributionPair& pair);
/// {"arity": n, "mu0": {"<bits>": "num/den", ...}, "mu1": {...}}; points
/// are bitstrings with x1 first. Throws ParseError.
DistributionPair pair_from_json(const json& j);

json packing_to_json(const BlockPacking& packing);
json certificate_to_json(const Certificate& certificate);
json chi_bound_to_json(const ChiBound& bound);
json walk_stats_to_json(const WalkStats& stats);
json sim_result_to_json(const SimResult& result);

/// Report envelope: schema, tool, version and the command echo.
json envelope(const std::string& command);

/// Columns shared by every record-producing command.
inline const std::vector<std::string> kCsvColumns = {"spec", "table", "n", "bs", "C", "D", "s", "chi_lb"};

/// One CSV row per record; missing fields are left empty.
void write_csv(std::ostream& out, const json& records);

/// Aligned human-readable table of the same columns.
void write_table(std::ostream& out, const json& records);

}  // namespace clab::report
