#include "conflict_lab/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "conflict_lab/error.hpp"

namespace clab::report {

json rational(const Rational& q) { return to_string(q); }

namespace {

json side_to_json(const std::map<std::uint32_t, Rational>& side, int arity) {
  json out = json::object();
  for (const auto& [idx, w] : side) out[Point{idx, arity}.to_string()] = rational(w);
  return out;
}

std::map<std::uint32_t, Rational> side_from_json(const json& j, int arity, const char* name) {
  if (!j.is_object()) throw ParseError(std::string("pair field '") + name + "' must be an object");
  std::map<std::uint32_t, Rational> side;
  for (const auto& [key, value] : j.items()) {
    const Point p = Point::from_string(key);
    if (p.arity != arity) throw ParseError("point '" + key + "' does not match arity " + std::to_string(arity));
    if (!value.is_string()) throw ParseError("weight for '" + key + "' must be a \"num/den\" string");
    side[p.bits] = parse_rational(value.get<std::string>());
  }
  return side;
}

json blocks_to_json(const std::vector<std::uint32_t>& blocks) {
  json out = json::array();
  for (std::uint32_t b : blocks) out.push_back(mask_to_indices(b));
  return out;
}

}  // namespace

json pair_to_json(const DistributionPair& pair) {
  return {{"arity", pair.arity}, {"mu0", side_to_json(pair.mu0, pair.arity)}, {"mu1", side_to_json(pair.mu1, pair.arity)}};
}

DistributionPair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mu0") || !j.contains("mu1")) {
    throw ParseError("distribution pair must be an object with 'mu0' and 'mu1'");
  }
  DistributionPair pair;
  if (j.contains("arity")) {
    if (!j["arity"].is_number_integer()) throw ParseError("pair 'arity' must be an integer");
    pair.arity = j["arity"].get<int>();
  } else {
    // Infer from the first point.
    for (const char* side : {"mu0", "mu1"}) {
      if (j[side].is_object() && !j[side].empty()) {
        pair.arity = static_cast<int>(j[side].begin().key().size());
        break;
      }
    }
  }
  pair.mu0 = side_from_json(j["mu0"], pair.arity, "mu0");
  pair.mu1 = side_from_json(j["mu1"], pair.arity, "mu1");
  return pair;
}

json packing_to_json(const BlockPacking& packing) {
  return {{"point", packing.base.to_string()}, {"k", packing.size()}, {"blocks", blocks_to_json(packing.blocks)}};
}

json certificate_to_json(const Certificate& certificate) {
  return {{"point", certificate.base.to_string()},
          {"indices", mask_to_indices(certificate.indices)},
          {"value", certificate.value ? 1 : 0}};
}

json chi_bound_to_json(const ChiBound& bound) {
  return {{"value", rational(bound.value)},
          {"provenance", to_string(bound.provenance)},
          {"tree", bound.tree.to_string()},
          {"pair", pair_to_json(bound.pair)}};
}

json walk_stats_to_json(const WalkStats& stats) {
  json nodes = json::array();
  for (const auto& w : stats.nodes) {
    json node = {{"var", w.var + 1},
                 {"position", w.position},
                 {"subcube", w.cube.to_string()},
                 {"reach", rational(w.reach)},
                 {"stop", rational(w.stop)}};
    if (w.ab) {
      node["alpha"] = rational(w.ab->alpha);
      node["beta"] = rational(w.ab->beta);
    }
    nodes.push_back(std::move(node));
  }
  json stopping = json::array();
  for (const auto& p : stats.stopping_time) stopping.push_back(rational(p));
  return {{"nodes", nodes}, {"stopping_time", stopping}, {"expectation", rational(stats.expectation)}};
}

json sim_result_to_json(const SimResult& result) {
  return {{"samples", result.samples},
          {"seed", result.seed},
          {"generator", kSimulationGenerator},
          {"counts", result.counts},
          {"distribution", result.distribution},
          {"mean", result.mean},
          {"standard_error", result.standard_error}};
}

json envelope(const std::string& command) {
  return {{"schema", kSchema}, {"tool", "conflict_lab"}, {"version", kToolVersion}, {"command", command}};
}

namespace {

std::string cell(const json& record, const std::string& column) {
  if (!record.contains(column) || record[column].is_null()) return "";
  const json& v = record[column];
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

void write_csv(std::ostream& out, const json& records) {
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) out << (c ? "," : "") << kCsvColumns[c];
  out << "\n";
  for (const auto& r : records) {
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
      std::string v = cell(r, kCsvColumns[c]);
      // Specs like COMPOSE(a,b) contain commas.
      if (v.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : v) {
          if (ch == '"') quoted += '"';
          quoted += ch;
        }
        v = quoted + "\"";
      }
      out << (c ? "," : "") << v;
    }
    out << "\n";
  }
}

void write_table(std::ostream& out, const json& records) {
  std::vector<std::size_t> width(kCsvColumns.size());
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    width[c] = kCsvColumns[c].size();
    for (const auto& r : records) width[c] = std::max(width[c], cell(r, kCsvColumns[c]).size());
  }
  auto row = [&](auto&& value_of) {
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << value_of(c);
    }
    out << "\n";
  };
  row([&](std::size_t c) { return kCsvColumns[c]; });
  for (const auto& r : records) row([&](std::size_t c) { return cell(r, kCsvColumns[c]); });
}

}  // namespace clab::report
