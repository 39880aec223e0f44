// mefe: command line front end for the MEFE matching library.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mefe/mefe.hpp"

namespace {

using mefe::Instance;
using mefe::Rational;
using mefe::SolverOutcome;
using mefe::io::json;
using mefe::io::ordered_json;

enum Exit { kYes = 0, kNo = 1, kUndecided = 2, kInputError = 3 };

struct Common {
  std::string format = "json";
  std::string output;
  std::optional<std::uint64_t> budget;
  int jobs = 1;

  [[nodiscard]] bool text() const { return format == "text"; }

  [[nodiscard]] mefe::SolveOptions options() const {
    mefe::SolveOptions o;
    if (budget) {
      o.budget = *budget;
    } else if (const char* env = std::getenv("MEFE_BUDGET")) {
      try {
        o.budget = std::stoull(env);
      } catch (const std::exception&) {
        throw mefe::Error(mefe::ErrorKind::Parse, std::string("MEFE_BUDGET is not a number: ") + env);
      }
    }
    o.jobs = jobs;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("-o,--output", c.output, "Also write the primary JSON result to this file");
  cmd->add_option("--budget", c.budget, "Enumeration budget (falls back to MEFE_BUDGET)");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 256));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw mefe::Error(mefe::ErrorKind::Parse, "cannot write '" + path + "'");
  out << text << '\n';
}

Instance load_instance(const std::string& path) { return mefe::io::instance_from_json(mefe::io::read_json_file(path)); }

Rational parse_rational_arg(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw mefe::Error(mefe::ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

ordered_json avg_json(const Instance& inst, const mefe::VerificationReport& r) {
  ordered_json out = ordered_json::object();
  for (int x = 0; x < inst.num_courses(); ++x) out[inst.course_id(x)] = r.avg_utils[x].pretty();
  return out;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string input;
  std::string strategy = "auto";
  std::optional<std::string> epsilon;
};

int cmd_solve(const SolveArgs& a, const Common& c) {
  if (!mefe::is_strategy(a.strategy)) throw mefe::Error(mefe::ErrorKind::Parse, "unknown strategy '" + a.strategy + "'");
  if ((a.strategy == "approx") != a.epsilon.has_value()) {
    throw mefe::Error(mefe::ErrorKind::Parse, "--epsilon is required with --strategy approx and only there");
  }
  const Instance inst = load_instance(a.input);
  std::optional<Rational> eps;
  if (a.epsilon) eps = parse_rational_arg(*a.epsilon, "--epsilon");

  SolverOutcome o;
  std::string reason;
  bool bounded = false;
  try {
    o = mefe::dispatch(inst, a.strategy, c.options(), eps);
  } catch (const mefe::Error& e) {
    if (e.kind() != mefe::ErrorKind::ResourceBound) throw;
    o = SolverOutcome::not_applicable(a.strategy, e.what());
    bounded = true;
  }

  ordered_json doc;
  doc["solver"] = o.solver;
  doc["verdict"] = bounded ? "resource_bound" : std::string(mefe::to_string(o.verdict));
  doc["k"] = inst.k().pretty();
  if (o.reason.empty()) {
    doc["reason"] = nullptr;
  } else {
    doc["reason"] = o.reason;
  }
  std::optional<mefe::VerificationReport> report;
  if (o.is_yes()) {
    const Rational certified = o.certified_k.value_or(inst.k());
    report = mefe::verify(inst.with_threshold(certified), *o.matching);
    doc["certified_k"] = certified.pretty();
    doc["verified"] = report->is_mefe;
    doc["avg_utils"] = avg_json(inst, *report);
    doc["assignment"] = mefe::io::matching_to_json(inst, *o.matching)["assignment"];
  }
  if (!c.output.empty()) write_file(c.output, doc.dump(2));

  if (c.text()) {
    std::cout << "solver: " << o.solver << '\n' << "verdict: " << doc["verdict"].get<std::string>() << '\n';
    std::cout << "k: " << inst.k() << '\n';
    if (!o.reason.empty()) std::cout << "reason: " << o.reason << '\n';
    if (o.is_yes()) {
      std::cout << "certified k: " << doc["certified_k"].get<std::string>() << '\n';
      for (int x = 0; x < inst.num_courses(); ++x) {
        std::cout << "avg " << inst.course_id(x) << ": " << report->avg_utils[x] << '\n';
      }
      for (int t = 0; t < inst.num_tas(); ++t) {
        std::cout << inst.ta_id(t) << " -> "
                  << (o.matching->assigned(t) ? inst.course_id(o.matching->course_of(t)) : std::string("-")) << '\n';
      }
    }
  } else {
    std::cout << doc.dump(2) << '\n';
  }
  if (o.is_yes()) return report->is_mefe ? kYes : kUndecided;
  return o.is_no() ? kNo : kUndecided;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& instance_path, const std::string& matching_path, const Common& c) {
  const Instance inst = load_instance(instance_path);
  const auto mu = mefe::io::matching_from_json(inst, mefe::io::read_json_file(matching_path));
  const auto r = mefe::verify(inst, mu);
  const auto doc = mefe::io::report_to_json(inst, r);
  if (!c.output.empty()) write_file(c.output, doc.dump(2));
  if (c.text()) {
    std::cout << "feasible: " << (r.feasible ? "yes" : "no") << '\n' << "mefe: " << (r.is_mefe ? "yes" : "no") << '\n';
    for (int x = 0; x < inst.num_courses(); ++x) {
      std::cout << "avg " << inst.course_id(x) << ": " << r.avg_utils[x] << " (k " << inst.k() << ")\n";
    }
    for (const auto& [t, s] : r.envy_pairs) std::cout << "envy: " << inst.ta_id(t) << " envies " << inst.ta_id(s) << '\n';
  } else {
    std::cout << doc.dump(2) << '\n';
  }
  return r.is_mefe ? kYes : kNo;
}

// ---------------------------------------------------------------- generate

struct GenArgs {
  std::string from;
  std::string input;
  bool binary = false;
  std::uint64_t seed = 1;
  int courses = 2;
  int tas = 4;
  int cap_max = 2;
  int val_max = 4;
  std::string structure = "none";
  bool distinct = false;
  int density = 70;
};

// A tie group is either one index or an array of indices.
std::vector<std::vector<std::vector<int>>> smti_lists(const json& side) {
  std::vector<std::vector<std::vector<int>>> out;
  for (const auto& list : side) {
    auto& groups = out.emplace_back();
    for (const auto& g : list) {
      if (g.is_array()) {
        groups.push_back(g.get<std::vector<int>>());
      } else {
        groups.push_back({g.get<int>()});
      }
    }
  }
  return out;
}

mefe::RandomSpec random_spec(const GenArgs& a) {
  mefe::RandomSpec s;
  s.seed = a.seed;
  s.n = a.courses;
  s.m = a.tas;
  s.cap_max = a.cap_max;
  s.val_max = a.val_max;
  s.structure = mefe::parse_structure(a.structure);
  s.ties = a.distinct ? mefe::TiePolicy::Distinct : mefe::TiePolicy::Allow;
  s.density = a.density;
  return s;
}

int cmd_generate(const GenArgs& a, const Common& c) {
  Instance inst;
  if (a.from.empty()) {
    inst = mefe::random_instance(random_spec(a));
  } else {
    if (a.input.empty()) throw mefe::Error(mefe::ErrorKind::Parse, "--from needs an input file");
    const json doc = mefe::io::read_json_file(a.input);
    if (a.from == "partition") {
      const json& items = doc.is_array() ? doc : mefe::io::require(doc, "items");
      inst = mefe::from_partition(items.get<std::vector<mefe::Value>>());
    } else if (a.from == "smti") {
      mefe::SmtiInput in;
      in.men = smti_lists(mefe::io::require(doc, "men"));
      in.women = smti_lists(mefe::io::require(doc, "women"));
      inst = mefe::from_smti33(in, a.binary);
    } else {
      mefe::ThreeDmInput in;
      in.n = mefe::io::require(doc, "n").get<int>();
      in.triples = mefe::io::require(doc, "triples").get<std::vector<std::array<int, 3>>>();
      inst = mefe::from_3dpm(in);
    }
  }
  const std::string text = mefe::io::instance_to_json(inst).dump(2);
  if (!c.output.empty()) write_file(c.output, text);
  if (c.text()) {
    const auto p = mefe::profile(inst);
    std::cout << "courses " << p.n << ", TAs " << p.m << ", max capacity " << p.max_capacity << ", max TA degree "
              << p.max_ta_degree << ", k " << inst.k() << '\n';
  } else {
    std::cout << text << '\n';
  }
  return kYes;
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(const std::string& input, std::size_t limit, const Common& c) {
  const Instance inst = load_instance(input);
  std::vector<mefe::Matching> all;
  try {
    all = mefe::enumerate_all_mefe(inst, c.options());
  } catch (const mefe::Error& e) {
    if (e.kind() != mefe::ErrorKind::ResourceBound) throw;
    std::cerr << e.what() << '\n';
    return kUndecided;
  }
  ordered_json doc;
  doc["count"] = all.size();
  doc["matchings"] = ordered_json::array();
  for (std::size_t i = 0; i < all.size() && (limit == 0 || i < limit); ++i) {
    doc["matchings"].push_back(mefe::io::matching_to_json(inst, all[i]));
  }
  if (!c.output.empty()) write_file(c.output, doc.dump(2));
  if (c.text()) {
    std::cout << all.size() << " MEFE matchings\n";
    for (std::size_t i = 0; i < all.size() && (limit == 0 || i < limit); ++i) {
      for (int t = 0; t < inst.num_tas(); ++t) {
        std::cout << (t ? " " : "") << inst.ta_id(t) << "->"
                  << (all[i].assigned(t) ? inst.course_id(all[i].course_of(t)) : std::string("-"));
      }
      std::cout << '\n';
    }
  } else {
    std::cout << doc.dump(2) << '\n';
  }
  return all.empty() ? kNo : kYes;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  GenArgs gen;
  int count = 100;
  std::vector<std::string> strategies;
  std::optional<std::string> epsilon;
  bool no_time = false;
};

int cmd_bench(const BenchArgs& a, const Common& c) {
  std::vector<std::string> names = a.strategies;
  if (names.empty()) {
    for (auto s : mefe::strategy_names()) {
      if (s != "approx" || a.epsilon) names.emplace_back(s);
    }
  }
  for (const auto& s : names) {
    if (!mefe::is_strategy(s)) throw mefe::Error(mefe::ErrorKind::Parse, "unknown strategy '" + s + "'");
  }
  std::optional<Rational> eps;
  if (a.epsilon) eps = parse_rational_arg(*a.epsilon, "--epsilon");
  if (std::find(names.begin(), names.end(), "approx") != names.end() && !eps) {
    throw mefe::Error(mefe::ErrorKind::Parse, "approx needs --epsilon");
  }
  const auto opts = c.options();

  std::ostringstream csv;
  csv << "seed,courses,tas,max_capacity,max_ta_degree,max_distinct_values,k,strategy,verdict,oracle,agree,micros\n";
  std::map<std::string, std::pair<int, int>> tally;  // applicable, agreeing
  for (int i = 0; i < a.count; ++i) {
    GenArgs g = a.gen;
    g.seed = a.gen.seed + static_cast<std::uint64_t>(i);
    const Instance inst = mefe::random_instance(random_spec(g));
    const auto p = mefe::profile(inst);
    const int max_distinct = p.distinct_values.empty() ? 0 : *std::max_element(p.distinct_values.begin(), p.distinct_values.end());

    std::string oracle = "unknown";
    try {
      oracle = std::string(mefe::to_string(mefe::solve_bruteforce(inst, opts).verdict));
    } catch (const mefe::Error& e) {
      if (e.kind() != mefe::ErrorKind::ResourceBound) throw;
    }

    for (const auto& name : names) {
      const auto start = std::chrono::steady_clock::now();
      std::string verdict;
      std::string agree = "na";
      try {
        const auto o = mefe::dispatch(inst, name, opts, eps);
        verdict = std::string(mefe::to_string(o.verdict));
        if (o.applicable() && oracle != "unknown") {
          bool ok = false;
          if (name == "approx") {
            // Yes must come back whenever the oracle says yes, and a returned
            // matching must clear the relaxed threshold.
            const bool clean = !o.is_yes() || mefe::is_mefe(inst.with_threshold(*o.certified_k), *o.matching);
            ok = clean && (oracle != "yes" || o.is_yes());
          } else if (name == "exist-binval" || name == "exist-hr") {
            ok = !o.is_yes() || mefe::is_mefe(inst.with_threshold(o.certified_k.value_or(inst.k())), *o.matching);
          } else {
            ok = verdict == oracle && (!o.is_yes() || mefe::is_mefe(inst, *o.matching));
          }
          agree = ok ? "yes" : "no";
          auto& [applicable, agreeing] = tally[name];
          ++applicable;
          agreeing += ok ? 1 : 0;
        }
      } catch (const mefe::Error& e) {
        if (e.kind() != mefe::ErrorKind::ResourceBound) throw;
        verdict = "resource_bound";
      }
      const auto micros =
          std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
      csv << g.seed << ',' << p.n << ',' << p.m << ',' << p.max_capacity << ',' << p.max_ta_degree << ',' << max_distinct
          << ',' << inst.k() << ',' << name << ',' << verdict << ',' << oracle << ',' << agree << ','
          << (a.no_time ? 0 : micros) << '\n';
    }
  }
  if (!c.output.empty()) write_file(c.output, csv.str());
  std::cout << csv.str();
  for (const auto& name : names) {
    const auto [applicable, agreeing] = tally[name];
    std::cerr << name << ": applicable " << applicable << "/" << a.count << ", agreement " << agreeing << "/"
              << applicable << '\n';
  }
  return kYes;
}

void add_generator_options(CLI::App* cmd, GenArgs& g) {
  cmd->add_option("--seed", g.seed, "Generator seed");
  cmd->add_option("--courses", g.courses, "Number of courses")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tas", g.tas, "Number of TAs")->check(CLI::NonNegativeNumber);
  cmd->add_option("--cap-max", g.cap_max, "Largest capacity");
  cmd->add_option("--val-max", g.val_max, "Largest valuation");
  cmd->add_option("--structure", g.structure, "Profile: none, degcap1, cap1, twoval, binval, allpos, tadeg1");
  cmd->add_flag("--distinct", g.distinct, "Distinct grades and utilities");
  cmd->add_option("--density", g.density, "Percent of positive pairs")->check(CLI::Range(0, 100));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MEFE matching of TAs to courses"};
  app.require_subcommand(1);

  Common common;
  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance and print a matching");
  solve_cmd->add_option("instance", solve.input, "Instance JSON")->required();
  solve_cmd->add_option("--strategy", solve.strategy, "Solver name or auto");
  solve_cmd->add_option("--epsilon", solve.epsilon, "Approximation slack, e.g. 1/2");
  add_common(solve_cmd, common);

  std::string verify_instance;
  std::string verify_matching;
  auto* verify_cmd = app.add_subcommand("verify", "Check a matching against an instance");
  verify_cmd->add_option("instance", verify_instance, "Instance JSON")->required();
  verify_cmd->add_option("matching", verify_matching, "Matching JSON")->required();
  add_common(verify_cmd, common);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Emit an instance from a reduction input or at random");
  gen_cmd->add_option("input", gen.input, "Reduction input JSON (with --from)");
  gen_cmd->add_option("--from", gen.from, "Reduction source")->check(CLI::IsMember({"partition", "smti", "3dpm"}));
  gen_cmd->add_flag("--binary", gen.binary, "Binary course valuations for smti");
  add_generator_options(gen_cmd, gen);
  add_common(gen_cmd, common);

  std::string enum_input;
  std::size_t enum_limit = 0;
  auto* enum_cmd = app.add_subcommand("enumerate", "List every MEFE matching");
  enum_cmd->add_option("instance", enum_input, "Instance JSON")->required();
  enum_cmd->add_option("--limit", enum_limit, "Print at most this many (0 prints all)");
  add_common(enum_cmd, common);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time solvers against the oracle on random instances, as CSV");
  add_generator_options(bench_cmd, bench.gen);
  bench_cmd->add_option("--count", bench.count, "Instances")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--strategies", bench.strategies, "Solvers to run (default all)")->delimiter(',');
  bench_cmd->add_option("--epsilon", bench.epsilon, "Slack for approx");
  bench_cmd->add_flag("--no-time", bench.no_time, "Print 0 in the timing column");
  add_common(bench_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, common);
    if (*verify_cmd) return cmd_verify(verify_instance, verify_matching, common);
    if (*gen_cmd) return cmd_generate(gen, common);
    if (*enum_cmd) return cmd_enumerate(enum_input, enum_limit, common);
    if (*bench_cmd) return cmd_bench(bench, common);
  } catch (const mefe::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == mefe::ErrorKind::ResourceBound ? kUndecided : kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return kInputError;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
