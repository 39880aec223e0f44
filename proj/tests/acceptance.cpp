// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <path to mefe binary> <samples dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "support.hpp"

using namespace mefe;
using namespace mefe::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (ok) first_failure = why;
    ok = false;
  }
};

int failures = 0;

void report(int id, const std::string& name, const Result& r, double seconds) {
  std::ostringstream line;
  line << (r.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " (" << r.detail;
  line.precision(2);
  line << std::fixed << "; " << seconds << " s)";
  if (!r.ok) line << " first failure: " << r.first_failure;
  std::cout << line.str() << std::endl;
  if (!r.ok) ++failures;
}

template <typename Fn>
void run(int id, const std::string& name, Fn fn) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  report(id, name, r, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Draws an instance within n <= 3 courses, m <= 6 TAs.
std::optional<Instance> draw(std::uint64_t seed, int val_max, Structure s, TiePolicy ties, int n_fixed = 0,
                             int cap_max = 2) {
  Rng rng(seed * 7919 + 17);
  const int n = n_fixed > 0 ? n_fixed : static_cast<int>(rng.uniform(1, 3));
  const int m = static_cast<int>(rng.uniform(n, 6));
  try {
    return random_instance(spec(seed, n, m, cap_max, val_max, s, ties));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnsatisfiableProfile) return std::nullopt;
    throw;
  }
}

struct Proc {
  int code = -1;
  std::string out;
};

Proc shell(const std::string& cmd) {
  Proc p;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return p;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) p.out.append(buf.data(), got);
  const int status = pclose(pipe);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

// ---------------------------------------------------------------- 1

Result oracle_soundness() {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  int yes = 0;
  int total = 0;
  for (std::uint64_t seed = 1; total < 2000; ++seed) {
    const auto inst = draw(seed, 4, Structure::None, TiePolicy::Allow);
    if (!inst) continue;
    ++total;
    if (inst->k() > Rational(4)) r.fail("k above 4 at seed " + std::to_string(seed));
    const auto o = solve_bruteforce(*inst);
    if (!o.is_yes()) continue;
    ++yes;
    if (!verify(*inst, *o.matching).is_mefe) r.fail("seed " + std::to_string(seed));
  }
  const double t = since(start);
  if (t >= 60) r.fail("took " + std::to_string(t) + " s");
  r.detail = std::to_string(total) + " instances, " + std::to_string(yes) + " yes, all verified";
  return r;
}

// ---------------------------------------------------------------- 2

Result special_cases() {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    std::function<SolverOutcome(const Instance&)> solve;
    Structure structure;
    TiePolicy ties;
    int n_fixed;
  };
  const std::vector<Case> cases{
      {"degcap", [](const Instance& i) { return solve_degcap_le1(i); }, Structure::DegCap1, TiePolicy::Allow, 0},
      {"single", [](const Instance& i) { return solve_single_course(i); }, Structure::None, TiePolicy::Allow, 1},
      {"tadeg1", [](const Instance& i) { return solve_ta_degree1(i); }, Structure::TaDeg1, TiePolicy::Allow, 0},
      {"constenum", [](const Instance& i) { return solve_constant_enum(i); }, Structure::None, TiePolicy::Allow, 0},
      {"cap1", [](const Instance& i) { return solve_capacity1(i); }, Structure::Cap1, TiePolicy::Allow, 0},
      {"twoval", [](const Instance& i) { return solve_two_valuation(i); }, Structure::TwoVal, TiePolicy::Distinct, 0},
      {"fptn", [](const Instance& i) { return solve_fpt_n(i); }, Structure::None, TiePolicy::Distinct, 0},
  };
  std::ostringstream detail;
  for (const auto& c : cases) {
    int applicable = 0;
    int yes = 0;
    std::uint64_t seed = 1;
    for (; applicable < 1000 && seed <= 20000; ++seed) {
      const auto inst = draw(seed, 4, c.structure, c.ties, c.n_fixed);
      if (!inst) continue;
      const auto got = c.solve(*inst);
      if (!got.applicable()) continue;
      ++applicable;
      const auto want = solve_bruteforce(*inst);
      if (got.verdict != want.verdict) r.fail(std::string(c.name) + " disagrees at seed " + std::to_string(seed));
      if (got.is_yes()) {
        ++yes;
        if (!verify(*inst, *got.matching).is_mefe) r.fail(std::string(c.name) + " unclean at seed " + std::to_string(seed));
      }
    }
    if (applicable < 1000) r.fail(std::string(c.name) + " applicable on only " + std::to_string(applicable));
    detail << c.name << " " << applicable << "/" << yes << "y ";
  }
  const double t = since(start);
  if (t >= 300) r.fail("took " + std::to_string(t) + " s");
  r.detail = detail.str() + "agreement 100%";
  return r;
}

// ---------------------------------------------------------------- 3

Result fig1_fixture(const std::string& cli, const std::string& samples) {
  Result r;
  const Instance inst = fig1();
  const auto rep = verify(inst, fig1_displayed(inst));
  if (rep.envy_pairs.size() != 1 || inst.ta_id(rep.envy_pairs[0].first) != "t1" ||
      inst.ta_id(rep.envy_pairs[0].second) != "t2") {
    r.fail("displayed matching does not report exactly (t1, t2)");
  }
  const Instance file_inst = io::instance_from_json(io::read_json_file(samples + "/fig1.json"));
  if (io::instance_to_json(file_inst).dump() != io::instance_to_json(inst).dump()) r.fail("sample differs from fixture");
  const auto p = shell(quote(cli) + " solve " + quote(samples + "/fig1.json"));
  if (p.code != 0) r.fail("solve exit " + std::to_string(p.code));
  if (p.code == 0) {
    const auto mu = io::matching_from_json(inst, io::parse_text(p.out));
    if (!verify(inst, mu).is_mefe) r.fail("solve output is not MEFE");
  }
  r.detail = "envy pair (t1, t2); cli solve exit " + std::to_string(p.code) + ", verifier-clean";
  return r;
}

// ---------------------------------------------------------------- 4

void multisets(int size, int max_value, std::vector<Value>& cur, const std::function<void(const std::vector<Value>&)>& fn) {
  if (static_cast<int>(cur.size()) == size) {
    fn(cur);
    return;
  }
  const Value lo = cur.empty() ? 1 : cur.back();
  for (Value v = lo; v <= max_value; ++v) {
    cur.push_back(v);
    multisets(size, max_value, cur, fn);
    cur.pop_back();
  }
}

Result reductions() {
  Result r;
  int partitions = 0;
  int partition_yes = 0;
  for (int size = 0; size <= 8; size += 2) {
    std::vector<Value> cur;
    multisets(size, 6, cur, [&](const std::vector<Value>& s) {
      ++partitions;
      const Instance inst = from_partition(s);
      const auto o = solve_bruteforce(inst);
      const bool want = partition_exists(s);
      partition_yes += want ? 1 : 0;
      if (o.is_yes() != want) r.fail("partition disagrees");
      if (o.is_yes() && size > 0) {
        const auto [a, b] = map_back_partition(inst, *o.matching);
        if (a.size() != b.size() || std::accumulate(a.begin(), a.end(), Value{0}) != std::accumulate(b.begin(), b.end(), Value{0})) {
          r.fail("partition map back unbalanced");
        }
      }
    });
  }
  // Odd sizes are rejected rather than reduced.
  try {
    from_partition({1, 2, 3});
    r.fail("odd multiset accepted");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OddCardinality) r.fail("odd multiset wrong error");
  }

  Rng rng(2024);
  int smti = 0;
  int smti_yes = 0;
  for (; smti < 400; ++smti) {
    const SmtiInput in = random_smti(rng, static_cast<int>(rng.uniform(1, 4)));
    const bool want = smti_complete_weakly_stable_exists(in);
    smti_yes += want ? 1 : 0;
    if (solve_bruteforce(from_smti33(in)).is_yes() != want) r.fail("smti disagrees at sample " + std::to_string(smti));
  }

  int dm = 0;
  int dm_yes = 0;
  for (int n = 1; n <= 2; ++n) {
    for_each_3dm(n, [&](const ThreeDmInput& in) {
      ++dm;
      const bool want = perfect_3dm_exists(in);
      dm_yes += want ? 1 : 0;
      if (solve_bruteforce(from_3dpm(in)).is_yes() != want) r.fail("3dm disagrees (exhaustive)");
    });
  }
  int dm3 = 0;
  int dm3_yes = 0;
  for (; dm3 < 200; ++dm3) {
    const ThreeDmInput in = random_3dm(rng, 3, 9);
    const bool want = perfect_3dm_exists(in);
    dm3_yes += want ? 1 : 0;
    if (solve_bruteforce(from_3dpm(in)).is_yes() != want) r.fail("3dm disagrees (|R| = 3)");
  }
  r.detail = "partition " + std::to_string(partitions) + " (" + std::to_string(partition_yes) + " yes), smti " +
             std::to_string(smti) + " (" + std::to_string(smti_yes) + " yes), 3dm exhaustive " + std::to_string(dm) +
             " (" + std::to_string(dm_yes) + " yes) + random " + std::to_string(dm3) + " (" + std::to_string(dm3_yes) +
             " yes)";
  return r;
}

// ---------------------------------------------------------------- 5

Result quotas() {
  Result r;
  int checked = 0;
  int unsat = 0;
  for (int q = 1; q <= 6; ++q) {
    for (int ql = 1; ql <= q; ++ql) {
      for (int c = 1; c <= 4; ++c) {
        for (int k2 = 0; k2 <= 12; ++k2) {
          const Rational k(k2, 2);
          ++checked;
          std::optional<int> least;
          for (int a = 0; a <= c && !least; ++a) {
            if (Rational(a * q + (c - a) * ql) >= k * Rational(c)) least = a;
          }
          const auto got = two_valuation_quota(Rational(q), Rational(ql), c, k);
          if (!least) {
            ++unsat;
            if (got) r.fail("quota reported for an unsatisfiable case");
            continue;
          }
          if (!got) {
            r.fail("satisfiable case reported unsatisfiable");
            continue;
          }
          const auto [a, b] = *got;
          if (a < 0 || b < 0 || a + b != c || Rational(a * q + b * ql) < k * Rational(c)) r.fail("quota violates the equations");
          if (q != ql && a != *least) r.fail("quota is not the least high count");
        }
      }
    }
  }
  r.detail = std::to_string(checked) + " cases, " + std::to_string(unsat) + " unsatisfiable";
  return r;
}

// ---------------------------------------------------------------- 6

Result approximation() {
  Result r;
  int yes = 0;
  std::uint64_t seed = 1;
  for (; yes < 300 && seed <= 50000; ++seed) {
    // the solver asks for distinct grades per course and utilities per TA
    const auto inst = draw(seed, 16, Structure::None, TiePolicy::Distinct);
    if (!inst || !solve_bruteforce(*inst).is_yes()) continue;
    ++yes;
    const auto o = solve_approx(*inst, Rational(1, 2));
    if (!o.is_yes()) {
      r.fail("no matching at seed " + std::to_string(seed));
      continue;
    }
    const auto rep = verify(*inst, *o.matching);
    if (!rep.feasible || !rep.envy_pairs.empty()) r.fail("infeasible or envious at seed " + std::to_string(seed));
    for (const auto& a : rep.avg_utils) {
      if (a < inst->k() / Rational(2)) r.fail("average below k/2 at seed " + std::to_string(seed));
    }
  }
  if (yes < 300) r.fail("only " + std::to_string(yes) + " yes instances");
  r.detail = std::to_string(yes) + " oracle-yes instances, 0 violations";
  return r;
}

// ---------------------------------------------------------------- 7

Result exchange() {
  Result r;
  int fixtures = 0;
  int swaps = 0;
  for (std::uint64_t seed = 1; fixtures < 300 && seed <= 5000; ++seed) {
    const auto inst = draw(seed, 4, Structure::BinVal, TiePolicy::Allow);
    if (!inst) continue;
    ++fixtures;
    const auto pre = check_binary_utility_preconditions(*inst);
    if (!pre.ok()) r.fail("fixture misses preconditions at seed " + std::to_string(seed));
    const auto trace = exchange_matching_traced(*inst, seat_filling_matching(*inst));
    for (std::size_t i = 1; i < trace.psi.size(); ++i) {
      if (trace.psi[i] >= trace.psi[i - 1]) r.fail("potential did not drop at seed " + std::to_string(seed));
    }
    const int iterations = static_cast<int>(trace.psi.size()) - 1;
    swaps += iterations;
    if (iterations > trace.psi.front() || trace.psi.front() > inst->num_courses() * inst->num_tas()) {
      r.fail("iteration bound broken at seed " + std::to_string(seed));
    }
    const Rational k_star = pre.ranks.k_star;
    if (inst->k() != k_star) r.fail("fixture k is not min k_i");
    if (!is_mefe(inst->with_threshold(k_star), trace.matching)) r.fail("not MEFE at seed " + std::to_string(seed));
    for (int t = 0; t < inst->num_tas(); ++t) {
      if (trace.matching.assigned(t) && pre.ranks.rank[trace.matching.course_of(t)][t] > pre.ranks.seats) {
        r.fail("matched TA ranked beyond c at seed " + std::to_string(seed));
      }
    }
  }
  if (fixtures < 300) r.fail("only " + std::to_string(fixtures) + " fixtures");
  r.detail = std::to_string(fixtures) + " fixtures, " + std::to_string(swaps) + " swaps";
  return r;
}

// ---------------------------------------------------------------- 8

Result hospitals() {
  Result r;
  int fixtures = 0;
  for (std::uint64_t seed = 1; fixtures < 300 && seed <= 5000; ++seed) {
    const auto drawn = draw(seed, 6, Structure::AllPos, TiePolicy::Distinct);
    if (!drawn) continue;
    ++fixtures;
    const Instance inst = drawn->with_threshold(1);
    const auto o = solve_existence_hr(inst);
    if (!o.is_yes() || !verify(inst, *o.matching).is_mefe) r.fail("seed " + std::to_string(seed));
  }
  if (fixtures < 300) r.fail("only " + std::to_string(fixtures) + " fixtures");
  r.detail = std::to_string(fixtures) + " fixtures, all yes and verifier-clean";
  return r;
}

// ---------------------------------------------------------------- 9

// Every valuation table with entries 0..3 over n <= 2 courses and m <= 4 TAs,
// every capacity vector; grades equal valuations, utilities and k drawn per
// table.
Result weak_stability() {
  Result r;
  Rng rng(99);
  long instances = 0;
  long matchings = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 4; ++m) {
      const int cells = n * m;
      long tables = 1;
      for (int i = 0; i < cells; ++i) tables *= 4;
      for (int c0 = 1; c0 <= 2; ++c0) {
        for (int c1 = 1; c1 <= (n == 2 ? 2 : 1); ++c1) {
          const int seats = c0 + (n == 2 ? c1 : 0);
          if (seats > m) continue;
          for (long code = 0; code < tables; ++code) {
            InstanceBuilder b;
            b.add_course("x1", c0);
            if (n == 2) b.add_course("x2", c1);
            for (int t = 0; t < m; ++t) b.add_ta("t" + std::to_string(t + 1));
            long rest = code;
            for (int x = 0; x < n; ++x) {
              for (int t = 0; t < m; ++t) {
                const Value v = rest % 4;
                rest /= 4;
                if (v > 0) b.set_pair(x, t, v, rng.uniform(1, 3), Rational(v));
              }
            }
            for (const Rational k : {Rational(0), Rational(rng.uniform(1, 6), 2)}) {
              b.set_k(k);
              const Instance inst = b.build();
              ++instances;
              for (const auto& mu : enumerate_all_mefe(inst)) {
                ++matchings;
                if (!is_weakly_stable(inst, mu)) r.fail("instance " + std::to_string(instances));
              }
            }
          }
        }
      }
    }
  }
  r.detail = std::to_string(instances) + " instances, " + std::to_string(matchings) + " MEFE matchings, all weakly stable";
  return r;
}

// ---------------------------------------------------------------- 10

Result determinism(const std::string& cli, const std::string& samples) {
  Result r;
  const fs::path dir = fs::temp_directory_path() / ("mefe_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string c = quote(cli);
  std::vector<std::string> instances{samples + "/fig1.json", samples + "/equal_grades.json"};
  for (int i = 0; i < 6; ++i) {
    const std::string path = (dir / ("gen" + std::to_string(i) + ".json")).string();
    const char* structures[] = {"none", "cap1", "twoval", "degcap1", "binval", "tadeg1"};
    const auto p = shell(c + " generate --seed " + std::to_string(100 + i) + " --courses 3 --tas 6 --structure " +
                         structures[i] + " -o " + quote(path));
    if (p.code != 0) r.fail("generate failed");
    instances.push_back(path);
  }
  std::vector<std::string> commands;
  for (const auto& inst : instances) {
    for (const char* s : {"auto", "brute", "constenum", "fptn", "twoval", "cap1"}) {
      commands.push_back(c + " solve " + quote(inst) + " --strategy " + s);
    }
    commands.push_back(c + " solve " + quote(inst) + " --strategy approx --epsilon 1/2");
    commands.push_back(c + " solve " + quote(inst) + " --format text");
    commands.push_back(c + " enumerate " + quote(inst));
    commands.push_back(c + " verify " + quote(inst) + " " + quote(samples + "/fig1_mefe_matching.json"));
  }
  commands.push_back(c + " verify " + quote(samples + "/fig1.json") + " " + quote(samples + "/fig1_matching.json"));
  commands.push_back(c + " generate --from partition " + quote(samples + "/partition.json"));
  commands.push_back(c + " generate --from smti " + quote(samples + "/smti.json"));
  commands.push_back(c + " generate --from 3dpm " + quote(samples + "/3dpm.json"));
  commands.push_back(c + " generate --seed 7 --courses 3 --tas 6");
  commands.push_back(c + " bench --seed 11 --count 20 --courses 2 --tas 5 --no-time");
  commands.push_back(c + " bench --seed 12 --count 20 --structure cap1 --courses 3 --tas 5 --epsilon 1/2 --no-time");
  int compared = 0;
  for (const auto& cmd : commands) {
    const auto a = shell(cmd + " --jobs 1");
    const auto b = shell(cmd + " --jobs 4");
    const auto again = shell(cmd + " --jobs 1");
    ++compared;
    if (a.out != b.out || a.code != b.code || a.out != again.out) r.fail(cmd);
  }
  fs::remove_all(dir);
  r.detail = std::to_string(compared) + " commands byte-identical across --jobs 1, 4 and a rerun";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <mefe binary> <samples dir>\n";
    return 2;
  }
  const std::string cli = fs::absolute(argv[1]).string();
  const std::string samples = fs::absolute(argv[2]).string();

  run(1, "oracle soundness", oracle_soundness);
  run(2, "special-case equivalence", special_cases);
  run(3, "three-course fixture", [&] { return fig1_fixture(cli, samples); });
  run(4, "reduction round trips", reductions);
  run(5, "two-valuation quotas", quotas);
  run(6, "approximation guarantee", approximation);
  run(7, "exchange matching", exchange);
  run(8, "hospitals/residents existence", hospitals);
  run(9, "weak stability of MEFE matchings", weak_stability);
  run(10, "CLI determinism", [&] { return determinism(cli, samples); });
  return failures == 0 ? 0 : 1;
}
