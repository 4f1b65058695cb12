// Acceptance gate: one line per criterion, PASS or FAIL, exit 0 only when
// every criterion passes. argv[1] is the path to the command line tool.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "racg/racg.hpp"

#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_cli;
int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s  %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++g_failures;
}

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  q += "'";
  return q;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::vector<std::string>& args) {
  static int counter = 0;
  const fs::path out_file =
      fs::temp_directory_path() / ("racg_accept_" + std::to_string(::getpid()) + "_" +
                                   std::to_string(counter++));
  std::string cmd = shell_quote(g_cli);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + shell_quote(out_file.string()) + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult res;
  res.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out_file);
  fs::remove(out_file);
  return res;
}

fs::path scratch(const std::string& name) {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("racg_accept_dir_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir / name;
}

racg::Graph glued14() {
  racg::GammaParams params;
  params.n = 14;
  params.m = 5;
  return racg::build_gamma(params);
}

// 1. Construction counts through the tool itself.
void criterion_1() {
  bool ok = true;
  auto ladder = run_cli({"build", "gamma-n", "--n", "14", "--json"});
  ok = ok && ladder.code == 0;
  if (ok) {
    const json j = json::parse(ladder.out, nullptr, false);
    ok = !j.is_discarded() && j["vertices"].size() == 28 && j["edges"].size() == 52;
  }
  auto glued = run_cli({"build", "gamma", "--n", "14", "--m", "5", "--json"});
  ok = ok && glued.code == 0;
  if (ok) {
    const json j = json::parse(glued.out, nullptr, false);
    ok = !j.is_discarded() && j["vertices"].size() == 28 && j["edges"].size() == 57;
  }
  report(1, ok, "cli counts: ladder n=14 is 28/52, glued n=14 m=5 is 28/57");
}

// 2. The ladder is a non-degenerate join exactly for n in {2, 3}.
void criterion_2() {
  bool ok = true;
  for (int n = 2; n <= 10; ++n) {
    const auto dec = racg::join_decomposition(racg::build_gamma_n(n));
    ok = ok && (dec.is_nondegenerate_join == (n == 2 || n == 3));
  }
  report(2, ok, "ladder join decomposition: non-degenerate join iff n in {2, 3}");
}

// 3. In the n=10 ladder, a_i and a_j share a join exactly when |i-j| <= 2.
void criterion_3() {
  const racg::Graph g = racg::build_gamma_n(10);
  bool ok = true;
  for (int i = 1; i <= 10 && ok; ++i)
    for (int j = i + 1; j <= 10 && ok; ++j) {
      const bool got = racg::pair_in_common_join(g, "a" + std::to_string(i),
                                                 "a" + std::to_string(j))
                           .has_value();
      ok = (got == (j - i <= 2));
    }
  report(3, ok, "ladder n=10: a_i, a_j share a common join iff |i-j| <= 2");
}

// 4. The polynomial witness search agrees with exponential enumeration on
//    every labeled graph with at most 6 vertices and on 500 random draws
//    with 7 to 9 vertices.
void criterion_4() {
  bool ok = true;
  long long pairs_checked = 0;
  for (int n = 2; n <= 6 && ok; ++n) {
    oracle::for_each_graph(n, [&](const racg::Graph& g) {
      if (!ok) return;
      for (int u = 0; u < n && ok; ++u)
        for (int v = u + 1; v < n && ok; ++v) {
          const bool fast = racg::pair_in_common_join(g, u, v).has_value();
          const bool slow = racg::brute_force_common_join(g, u, v, 12);
          ok = (fast == slow);
          ++pairs_checked;
        }
    });
  }
  int random_graphs = 0;
  for (int i = 0; i < 500 && ok; ++i) {
    const int n = 7 + i % 3;
    const racg::Graph g = oracle::random_graph(n, 0.45, 0xacce97, static_cast<std::uint64_t>(i));
    ++random_graphs;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v) {
        const bool fast = racg::pair_in_common_join(g, u, v).has_value();
        const bool slow = racg::brute_force_common_join(g, u, v, 12);
        ok = (fast == slow);
        ++pairs_checked;
      }
  }
  std::ostringstream os;
  os << "common-join search matches enumeration on all graphs up to 6 vertices and "
     << random_graphs << " random 7..9-vertex graphs (" << pairs_checked << " pairs)";
  report(4, ok, os.str());
}

// 5. Square census and CFS verdicts.
void criterion_5() {
  bool ok = true;
  ok = ok && racg::enumerate_induced_squares(racg::build_gamma_n(3)).size() == 6;
  for (int n = 2; n <= 10; ++n) {
    const racg::Graph g = racg::build_gamma_n(n);
    const std::size_t expected =
        static_cast<std::size_t>((n - 1) + (n >= 2 ? 4 * (n - 2) : 0));
    ok = ok && racg::enumerate_induced_squares(g).size() == expected;
    ok = ok && racg::is_cfs(g, racg::ChainMode::diagonal).holds;
    ok = ok && racg::is_cfs(g, racg::ChainMode::share3).holds;
  }
  const racg::Graph glued = glued14();
  ok = ok && racg::is_cfs(glued, racg::ChainMode::diagonal).holds;
  ok = ok && racg::is_cfs(glued, racg::ChainMode::share3).holds;
  const racg::Graph c5 = racg::build_graph(
      {"p1", "p2", "p3", "p4", "p5"},
      {{"p1", "p2"}, {"p2", "p3"}, {"p3", "p4"}, {"p4", "p5"}, {"p5", "p1"}});
  const auto c5rep = racg::is_cfs(c5);
  ok = ok && !c5rep.holds && c5rep.square_count == 0;
  report(5, ok, "square census (6 squares at n=3, ladder counts) and CFS verdicts");
}

// 6. Witness pipeline end to end through the tool, and a conclusive
//    negative sweep on the n=8 ladder.
void criterion_6() {
  bool ok = true;
  const fs::path graph = scratch("glued14.json");
  const fs::path cert = scratch("cert.json");
  racg::write_graph_file(glued14(), graph.string());
  auto found = run_cli({"find", "witness", graph.string(), "--out", cert.string()});
  ok = ok && found.code == 0;
  const json cj = json::parse(slurp(cert), nullptr, false);
  ok = ok && !cj.is_discarded() && cj["cycle"].size() == 5;
  auto verified = run_cli({"verify", graph.string(), cert.string()});
  ok = ok && verified.code == 0;

  const auto sweep = racg::find_stable_cycle(racg::build_gamma_n(8), 5,
                                             std::numeric_limits<std::uint64_t>::max());
  ok = ok && !sweep.certificate.has_value() && sweep.exhausted;
  report(6, ok, "witness pipeline find/write/verify on the glued graph; exhaustive none on "
                "the n=8 ladder");
}

// 7. The divergence ladder with its flags.
void criterion_7() {
  bool ok = true;
  std::vector<std::pair<std::string, std::string>> k5_edges;
  std::vector<std::string> k5_names;
  for (int i = 1; i <= 5; ++i) k5_names.push_back("v" + std::to_string(i));
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5_edges.push_back({k5_names[i], k5_names[j]});
  const racg::Graph k5 = racg::build_graph(k5_names, k5_edges);
  const racg::Graph c4 = racg::build_graph({"p1", "p2", "p3", "p4"},
                                           {{"p1", "p2"}, {"p2", "p3"}, {"p3", "p4"}, {"p4", "p1"}});
  const racg::Graph c5 = racg::build_graph(
      {"p1", "p2", "p3", "p4", "p5"},
      {{"p1", "p2"}, {"p2", "p3"}, {"p3", "p4"}, {"p4", "p5"}, {"p5", "p1"}});
  const racg::Graph glued = glued14();

  const auto rk5 = racg::classify_divergence(k5);
  const auto rc4 = racg::classify_divergence(c4);
  const auto rglued = racg::classify_divergence(glued);
  const auto rc5 = racg::classify_divergence(c5);
  ok = ok && rk5.classification == racg::Classification::finite;
  ok = ok && rc4.classification == racg::Classification::linear;
  ok = ok && rglued.classification == racg::Classification::quadratic;
  ok = ok && rc5.classification == racg::Classification::unclassified;

  // Flags: quadratic alone rules out relative hyperbolicity; adding the
  // stability certificate turns on the remaining three.
  const auto bare = racg::derived_flags(rglued);
  ok = ok && bare.not_relatively_hyperbolic.value && !bare.stable_one_ended_subgroup.value;
  const auto res = racg::find_stable_cycle(glued);
  ok = ok && res.certificate.has_value();
  const auto full = racg::derived_flags(rglued, res.certificate ? &*res.certificate : nullptr);
  ok = ok && full.not_relatively_hyperbolic.value && full.stable_one_ended_subgroup.value &&
       full.morse_boundary_circle.value && full.not_qi_to_raag.value;
  report(7, ok, "divergence ladder: K5 finite, C4 linear, glued quadratic, C5 unclassified, "
                "with consequence flags");
}

// 8. The sampler's CSV is identical for 1 and 8 workers, and the density
//    extremes behave.
void criterion_8() {
  bool ok = true;
  const fs::path csv1 = scratch("w1.csv");
  const fs::path csv8 = scratch("w8.csv");
  auto r1 = run_cli({"random", "--n", "30", "--p", "0.3", "--trials", "100", "--seed", "7",
                     "--workers", "1", "--csv", csv1.string()});
  auto r8 = run_cli({"random", "--n", "30", "--p", "0.3", "--trials", "100", "--seed", "7",
                     "--workers", "8", "--csv", csv8.string()});
  ok = ok && r1.code == 0 && r8.code == 0;
  const std::string b1 = slurp(csv1);
  ok = ok && !b1.empty() && b1 == slurp(csv8);

  auto empty_graphs = run_cli({"random", "--n", "12", "--p", "0", "--trials", "20", "--seed",
                               "5", "--json"});
  auto complete_graphs = run_cli({"random", "--n", "12", "--p", "1", "--trials", "20", "--seed",
                                  "5", "--json"});
  ok = ok && empty_graphs.code == 0 && complete_graphs.code == 0;
  if (ok) {
    const json je = json::parse(empty_graphs.out, nullptr, false);
    const json jc = json::parse(complete_graphs.out, nullptr, false);
    ok = ok && !je.is_discarded() && je["classification_counts"]["multi_ended"] == 20;
    ok = ok && !jc.is_discarded() && jc["classification_counts"]["finite"] == 20;
  }
  report(8, ok, "seeded sampler: byte-identical csv for 1 vs 8 workers; p=0 all multi-ended, "
                "p=1 all finite");
}

// 9. The conjecture probe at n=50 finishes quickly with a usable interval.
void criterion_9() {
  const auto start = std::chrono::steady_clock::now();
  racg::ExperimentConfig cfg;
  cfg.n = 50;
  cfg.p = 0.3;
  cfg.trials = 200;
  cfg.seed = 11;
  const racg::ExperimentResult res = racg::run_experiment(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const racg::FractionCI& ci = res.stats.cfs_not_join;
  bool ok = secs < 600.0;
  ok = ok && ci.trials == 200;
  ok = ok && 0.0 <= ci.lo && ci.lo <= ci.fraction && ci.fraction <= ci.hi && ci.hi <= 1.0;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << "conjecture probe n=50 p=0.3 trials=200 in " << secs << "s, cfs-and-not-join "
     << ci.count << "/200";
  os.precision(3);
  os << " (CI " << ci.lo << ".." << ci.hi << ")";
  report(9, ok, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: racg_acceptance <path-to-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("all 9 criteria pass\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
