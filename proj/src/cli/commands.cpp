#include "conflict_lab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "conflict_lab/conflict.hpp"
#include "conflict_lab/error.hpp"
#include "conflict_lab/measures.hpp"
#include "conflict_lab/montecarlo.hpp"
#include "conflict_lab/parallel.hpp"
#include "conflict_lab/report.hpp"

namespace clab::cli {

namespace {

constexpr int kVerifyAllMaxArity = 4;
constexpr int kVerifyRandomMaxArity = 8;

void check_max_n(const TruthTable& t, int max_n) {
  if (t.arity() > max_n) {
    throw ArityError("function arity " + std::to_string(t.arity()) + " exceeds --max-n " + std::to_string(max_n));
  }
}

Rational theorem_bound(int bs) { return make_rational(bs + 1, 2); }

json measures_record(const std::string& spec, const TruthTable& t, int budget, std::uint64_t seed) {
  const BlockSensitivity bs = block_sensitivity(t);
  const CertificateComplexity c = certificate(t);
  const DecisionTreeDepth d = decision_tree_depth(t);
  json r = {{"spec", spec},
            {"table", serialize(t)},
            {"n", t.arity()},
            {"bs", bs.value},
            {"C", c.value},
            {"D", d.value},
            {"s", sensitivity(t)}};
  r["witnesses"] = {{"bs", report::packing_to_json(bs.witness)},
                    {"certificate", report::certificate_to_json(c.witness)},
                    {"decision_tree", d.tree.to_string()}};
  if (t.is_constant()) {
    r["chi_lb"] = nullptr;
    return r;
  }
  const ChiBound chi = min_expected_conflict(t, witness_pair(t, bs.witness));
  const Rational bound = theorem_bound(bs.value);
  r["chi_lb"] = report::rational(chi.value);
  r["theorem_bound"] = report::rational(bound);
  r["theorem_holds"] = chi.value >= bound;
  r["sandwich_holds"] = chi.value >= 1 && chi.value <= d.value;
  r["witnesses"]["chi"] = report::chi_bound_to_json(chi);
  if (budget > 0 && t.arity() <= kMaximizeMaxArity) {
    const ChiBound best = maximize_pairs(t, {budget, seed, 16});
    r["chi_heuristic"] = report::chi_bound_to_json(best);
    r["chi_best"] = report::rational(std::max(best.value, chi.value));
    r["sandwich_holds"] = r["sandwich_holds"].get<bool>() && best.value >= 1 && best.value <= d.value;
  }
  return r;
}

bool record_ok(const json& r) {
  return r.value("theorem_holds", true) && r.value("sandwich_holds", true);
}

// Numeric order of the "n:HEX" strings: arity, then hex length, then digits.
bool table_less(const std::string& a, const std::string& b) {
  const auto ca = a.find(':');
  const auto cb = b.find(':');
  const int na = std::stoi(a.substr(0, ca));
  const int nb = std::stoi(b.substr(0, cb));
  if (na != nb) return na < nb;
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

json verify_record(const TruthTable& t) {
  const BlockSensitivity bs = block_sensitivity(t);
  const int depth = decision_tree_depth(t).value;
  const ChiBound chi = min_expected_conflict(t, witness_pair(t, bs.witness));
  const Rational bound = theorem_bound(bs.value);
  const std::string table = serialize(t);
  return {{"spec", table},
          {"table", table},
          {"n", t.arity()},
          {"bs", bs.value},
          {"D", depth},
          {"chi_lb", report::rational(chi.value)},
          {"bound", report::rational(bound)},
          {"holds", chi.value >= bound},
          {"equality", chi.value == bound},
          {"sandwich_holds", chi.value >= 1 && chi.value <= depth}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

json cmd_measures(const std::string& spec, const MeasuresOptions& options) {
  const TruthTable t = parse_spec(spec);
  check_max_n(t, options.max_n);
  json r = report::envelope("measures " + spec);
  json record = measures_record(spec, t, options.budget, options.seed);
  r["passed"] = record_ok(record);
  r["records"] = json::array({std::move(record)});
  return r;
}

json cmd_verify_theorem(const VerifyOptions& options) {
  const int n = options.n;
  std::vector<TruthTable> tables;
  std::string echo = "verify-theorem --n " + std::to_string(n);
  if (options.mode == VerifyMode::kAll) {
    if (n < 1 || n > kVerifyAllMaxArity) {
      throw ArityError("verify-theorem all-mode supports 1 <= n <= " + std::to_string(kVerifyAllMaxArity));
    }
    echo += " --mode all";
    const std::uint64_t total = std::uint64_t{1} << (1u << n);
    for (std::uint64_t v = 1; v + 1 < total; ++v) {
      tables.push_back(TruthTable::from_function(n, [v](std::uint32_t idx) { return (v >> idx) & 1u; }));
    }
  } else {
    if (n < 1 || n > kVerifyRandomMaxArity) {
      throw ArityError("verify-theorem random-mode supports 1 <= n <= " + std::to_string(kVerifyRandomMaxArity));
    }
    if (options.count < 1) throw DomainError("--count must be positive");
    echo += " --mode random --count " + std::to_string(options.count) + " --seed " + std::to_string(options.seed);
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32)};
    std::mt19937_64 rng(seq);
    while (static_cast<int>(tables.size()) < options.count) {
      TruthTable t = TruthTable::from_function(n, [&](std::uint32_t) { return (rng() >> 63) != 0; });
      if (!t.is_constant()) tables.push_back(std::move(t));
    }
  }

  std::vector<json> records(tables.size());
  parallel_for(tables.size(), [&](std::size_t i) { records[i] = verify_record(tables[i]); });
  std::stable_sort(records.begin(), records.end(), [](const json& a, const json& b) {
    return table_less(a["table"].get<std::string>(), b["table"].get<std::string>());
  });

  json r = report::envelope(echo);
  r["n"] = n;
  r["mode"] = options.mode == VerifyMode::kAll ? "all" : "random";
  r["seed"] = options.seed;
  int passed = 0;
  json failures = json::array();
  json equality = json::array();
  for (const auto& rec : records) {
    const bool ok = rec["holds"].get<bool>() && rec["sandwich_holds"].get<bool>();
    if (ok) {
      ++passed;
    } else {
      failures.push_back(rec["table"]);
    }
    if (rec["equality"].get<bool>()) equality.push_back(rec["table"]);
  }
  r["checked"] = records.size();
  r["passes"] = passed;
  r["failures"] = failures;
  r["equality_instances"] = equality;
  r["passed"] = failures.empty();
  r["records"] = records;
  return r;
}

json cmd_survey(const SurveyOptions& options) {
  if (options.n_min < 1 || options.n_max < options.n_min) throw DomainError("bad --n-min/--n-max range");
  std::vector<std::pair<std::string, TruthTable>> specs;
  json skipped = json::array();
  for (const std::string& family : options.families) {
    for (int n = options.n_min; n <= options.n_max; ++n) {
      std::string spec;
      if (family == "ANDOR") {
        spec = "COMPOSE(AND:" + std::to_string(n) + ",OR:" + std::to_string(n) + ")";
      } else if (family == "AND" || family == "OR" || family == "XOR" || family == "MAJ") {
        if (family == "MAJ" && n % 2 == 0) continue;
        spec = family + ":" + std::to_string(n);
      } else {
        throw DomainError("unknown survey family '" + family + "'");
      }
      const int arity = family == "ANDOR" ? n * n : n;
      if (arity > options.max_n || arity > kMeasuresMaxArity) {
        skipped.push_back(spec);
        continue;
      }
      specs.emplace_back(spec, parse_spec(spec));
    }
  }
  std::sort(specs.begin(), specs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<json> records(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    records[i] = measures_record(specs[i].first, specs[i].second, options.budget, options.seed);
  });

  std::string families;
  for (const auto& f : options.families) families += (families.empty() ? "" : ",") + f;
  json r = report::envelope("survey --families " + families + " --n-min " + std::to_string(options.n_min) +
                            " --n-max " + std::to_string(options.n_max) + " --budget " +
                            std::to_string(options.budget) + " --seed " + std::to_string(options.seed));
  r["skipped"] = skipped;
  r["passed"] = std::all_of(records.begin(), records.end(), record_ok);
  r["records"] = records;
  return r;
}

json cmd_chi_lb(const std::string& spec, const ChiOptions& options) {
  const TruthTable t = parse_spec(spec);
  check_max_n(t, options.max_n);
  if (t.is_constant()) throw DomainError("function " + serialize(t) + " is constant; chi is undefined");
  const BlockSensitivity bs = block_sensitivity(t);
  const int depth = decision_tree_depth(t).value;
  const ChiBound witness = min_expected_conflict(t, witness_pair(t, bs.witness));
  json rec = {{"spec", spec},
              {"table", serialize(t)},
              {"n", t.arity()},
              {"bs", bs.value},
              {"C", certificate(t).value},
              {"D", depth},
              {"s", sensitivity(t)},
              {"chi_lb", report::rational(witness.value)},
              {"theorem_bound", report::rational(theorem_bound(bs.value))},
              {"theorem_holds", witness.value >= theorem_bound(bs.value)},
              {"witness", report::chi_bound_to_json(witness)}};
  Rational best = witness.value;
  if (options.budget > 0 && t.arity() <= kMaximizeMaxArity) {
    const ChiBound h = maximize_pairs(t, {options.budget, options.seed, 16});
    rec["heuristic"] = report::chi_bound_to_json(h);
    best = std::max(best, h.value);
  }
  rec["chi_best"] = report::rational(best);
  rec["sandwich_holds"] = witness.value >= 1 && best <= depth;
  json r = report::envelope("chi-lb " + spec + " --budget " + std::to_string(options.budget) + " --seed " +
                            std::to_string(options.seed));
  r["passed"] = record_ok(rec);
  r["records"] = json::array({std::move(rec)});
  return r;
}

json cmd_simulate(const std::string& spec, const SimulateOptions& options) {
  const TruthTable t = parse_spec(spec);
  check_max_n(t, options.max_n);
  if (t.is_constant()) throw DomainError("function " + serialize(t) + " is constant; the walk is undefined");
  const DistributionPair pair = options.pair_source == "witness"
                                    ? witness_pair(t)
                                    : report::pair_from_json(json::parse(read_file(options.pair_source)));
  check_pair(t, pair);
  const DecisionTree tree = options.tree_source == "optimal" ? min_expected_conflict(t, pair).tree
                                                             : DecisionTree::parse(read_file(options.tree_source));
  const WalkStats stats = walk_stats(t, pair, tree);
  const SimResult sim = simulate_walk(t, pair, tree, options.samples, options.seed);

  const double exact_mean = stats.expectation.get_d();
  const double n = static_cast<double>(sim.samples);
  bool dist_ok = true;
  for (std::size_t r = 0; r < sim.distribution.size(); ++r) {
    const double p = stats.stopping_time[r].get_d();
    if (std::abs(sim.distribution[r] - p) > 3 * std::sqrt(p * (1 - p) / n) + 1e-12) dist_ok = false;
  }
  const bool mean_ok = std::abs(sim.mean - exact_mean) <= 3 * sim.standard_error + 1e-12;

  json r = report::envelope("simulate " + spec + " --pair " + options.pair_source + " --tree " + options.tree_source +
                            " --samples " + std::to_string(options.samples) + " --seed " +
                            std::to_string(options.seed));
  r["table"] = serialize(t);
  r["tree"] = tree.to_string();
  r["pair"] = report::pair_to_json(pair);
  r["exact"] = report::walk_stats_to_json(stats);
  r["simulation"] = report::sim_result_to_json(sim);
  r["mean_within_3se"] = mean_ok;
  r["distribution_within_3se"] = dist_ok;
  r["passed"] = mean_ok && dist_ok;
  return r;
}

json cmd_compose(const std::string& outer, const std::string& inner) {
  const TruthTable t = compose(parse_spec(outer), parse_spec(inner));
  json r = report::envelope("compose " + outer + " " + inner);
  r["table"] = serialize(t);
  r["n"] = t.arity();
  r["passed"] = true;
  return r;
}

namespace {

struct OutputOptions {
  bool json = false;
  bool timing = false;
  std::string csv;
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_flag("--json", o.json, "Print the JSON report on stdout");
  cmd->add_option("--csv", o.csv, "Write the CSV projection of the records to PATH");
  cmd->add_flag("--timing", o.timing, "Include wall-clock timing in the report");
}

void print_human(std::ostream& out, const json& r) {
  if (r.contains("records")) {
    report::write_table(out, r["records"]);
    if (r.contains("checked")) {
      out << "checked " << r["checked"] << ", passes " << r["passes"] << ", failures " << r["failures"].size()
          << ", equality instances " << r["equality_instances"].size() << "\n";
    }
    if (r.contains("skipped") && !r["skipped"].empty()) out << "skipped (arity cap): " << r["skipped"].dump() << "\n";
  } else if (r.contains("simulation")) {
    const auto& s = r["simulation"];
    out << "tree            " << r["tree"].get<std::string>() << "\n"
        << "exact E[X]      " << r["exact"]["expectation"].get<std::string>() << "\n"
        << "empirical mean  " << s["mean"].get<double>() << " (se " << s["standard_error"].get<double>() << ", N "
        << s["samples"] << ", seed " << s["seed"] << ", " << s["generator"].get<std::string>() << ")\n";
    for (std::size_t i = 0; i < s["distribution"].size(); ++i) {
      out << "Pr[X=" << i + 1 << "]  exact " << r["exact"]["stopping_time"][i].get<std::string>() << "  empirical "
          << s["distribution"][i].get<double>() << "\n";
    }
    out << "within 3 standard errors: " << (r["passed"].get<bool>() ? "yes" : "no") << "\n";
  } else if (r.contains("table")) {
    out << r["table"].get<std::string>() << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean function complexity lab: block sensitivity, certificates, decision trees and conflict complexity"};
  app.require_subcommand(1);
  OutputOptions output;

  std::string spec;
  MeasuresOptions measures_opts;
  auto* measures = app.add_subcommand("measures", "bs, C, D, s and the witness chi lower bound of one function");
  measures->add_option("spec", spec, "Function spec, e.g. AND:3 or 3:e8")->required();
  measures->add_option("--budget", measures_opts.budget, "maximize_pairs evaluations (0 disables)");
  measures->add_option("--seed", measures_opts.seed, "Seed for maximize_pairs");
  measures->add_option("--max-n", measures_opts.max_n, "Reject functions above this arity")->check(CLI::Range(1, 12));
  add_output_flags(measures, output);

  VerifyOptions verify_opts;
  std::string mode = "all";
  auto* verify = app.add_subcommand("verify-theorem", "Check chi >= (bs+1)/2 over all or random n-bit functions");
  verify->add_option("--n", verify_opts.n, "Arity");
  verify->add_option("--mode", mode, "all | random")->check(CLI::IsMember({"all", "random"}));
  verify->add_option("--count", verify_opts.count, "Functions sampled in random mode");
  verify->add_option("--seed", verify_opts.seed, "Seed for random mode");
  add_output_flags(verify, output);

  SurveyOptions survey_opts;
  std::string families;
  auto* survey = app.add_subcommand("survey", "Tabulate chi lower bound against bs, C, D, s across families");
  survey->add_option("--families", families, "Comma list from AND,OR,XOR,MAJ,ANDOR");
  survey->add_option("--n-min", survey_opts.n_min, "Smallest family parameter");
  survey->add_option("--n-max", survey_opts.n_max, "Largest family parameter");
  survey->add_option("--budget", survey_opts.budget, "maximize_pairs evaluations per function (0 disables)");
  survey->add_option("--seed", survey_opts.seed, "Seed for maximize_pairs");
  survey->add_option("--max-n", survey_opts.max_n, "Skip functions above this arity")->check(CLI::Range(1, 12));
  add_output_flags(survey, output);

  ChiOptions chi_opts;
  auto* chi = app.add_subcommand("chi-lb", "Certified lower bounds on chi(f)");
  chi->add_option("spec", spec, "Function spec")->required();
  chi->add_option("--budget", chi_opts.budget, "maximize_pairs evaluations (0 disables)");
  chi->add_option("--seed", chi_opts.seed, "Seed for maximize_pairs");
  chi->add_option("--max-n", chi_opts.max_n, "Reject functions above this arity")->check(CLI::Range(1, 12));
  add_output_flags(chi, output);

  SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo simulation of the random walk");
  simulate->add_option("spec", spec, "Function spec")->required();
  simulate->add_option("--pair", sim_opts.pair_source, "'witness' or a JSON distribution-pair file");
  simulate->add_option("--tree", sim_opts.tree_source, "'optimal' or a tree text file");
  simulate->add_option("--samples", sim_opts.samples, "Number of walks")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_opts.seed, "Generator seed");
  simulate->add_option("--max-n", sim_opts.max_n, "Reject functions above this arity")->check(CLI::Range(1, 12));
  bool check = false;
  simulate->add_flag("--check", check, "Exit 1 unless the sample agrees with the exact walk within 3 standard errors");
  add_output_flags(simulate, output);

  std::string outer, inner;
  auto* compose_cmd = app.add_subcommand("compose", "Print the truth table of OUTER o INNER");
  compose_cmd->add_option("outer", outer, "Outer function spec")->required();
  compose_cmd->add_option("inner", inner, "Inner function spec")->required();
  add_output_flags(compose_cmd, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    json r;
    bool checks_requested = true;
    if (*measures) {
      r = cmd_measures(spec, measures_opts);
    } else if (*verify) {
      verify_opts.mode = mode == "all" ? VerifyMode::kAll : VerifyMode::kRandom;
      r = cmd_verify_theorem(verify_opts);
    } else if (*survey) {
      if (!families.empty()) {
        survey_opts.families.clear();
        std::stringstream ss(families);
        for (std::string f; std::getline(ss, f, ',');) survey_opts.families.push_back(f);
      }
      r = cmd_survey(survey_opts);
    } else if (*chi) {
      r = cmd_chi_lb(spec, chi_opts);
    } else if (*simulate) {
      r = cmd_simulate(spec, sim_opts);
      checks_requested = check;
    } else {
      r = cmd_compose(outer, inner);
    }
    std::string echo;
    for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
    r["command"] = echo;
    if (output.timing) {
      r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    if (!output.csv.empty() && r.contains("records")) {
      std::ofstream csv(output.csv);
      if (!csv) throw DomainError("cannot write " + output.csv);
      report::write_csv(csv, r["records"]);
    }
    if (output.json) {
      out << r.dump(2) << "\n";
    } else {
      print_human(out, r);
    }
    return (!checks_requested || r.value("passed", true)) ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace clab::cli
