// racg: build, inspect, certify, and sample presentation graphs of
// right-angled Coxeter groups.
//
// Exit codes: 0 success or positive verdict, 1 negative verdict,
// 2 usage error, 3 data or internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "racg/racg.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw racg::Error("cannot write file: " + out_path);
  out << content;
}

void emit_json(const json& j, const std::string& out_path) {
  emit(j.dump(2) + "\n", out_path);
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& nm : names) {
    if (!out.empty()) out += ' ';
    out += nm;
  }
  return out;
}

void describe_witness(std::ostream& os, const racg::Graph& g, const racg::JoinWitness& w) {
  os << "join witness: [" << join_names(racg::names_of(g, w.side_a)) << "] * ["
     << join_names(racg::names_of(g, w.side_b)) << "]\n";
  os << "  non-adjacent in first side:  " << g.name(w.nonadjacent_pair_a.first) << " "
     << g.name(w.nonadjacent_pair_a.second) << "\n";
  os << "  non-adjacent in second side: " << g.name(w.nonadjacent_pair_b.first) << " "
     << g.name(w.nonadjacent_pair_b.second) << "\n";
}

void write_graph_result(const racg::Graph& g, const std::string& out_path, bool as_json) {
  if (!out_path.empty()) {
    racg::write_graph_file(g, out_path);
    std::cout << "wrote " << out_path << " (" << g.vertex_count() << " vertices, "
              << g.edge_count() << " edges, digest " << racg::graph_digest(g) << ")\n";
    return;
  }
  if (as_json)
    emit_json(racg::graph_to_json(g), "");
  else
    emit(racg::graph_to_text(g), "");
}

racg::WitnessCertificate load_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw racg::ParseError("cannot open certificate file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw racg::ParseError("malformed certificate JSON: " + path);
  return racg::certificate_from_json(j);
}

std::string format_fraction(const racg::FractionCI& ci) {
  std::ostringstream os;
  os << ci.count << "/" << ci.trials;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << " (" << ci.fraction << ", 95% CI " << ci.lo << ".." << ci.hi << ")";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"presentation graphs of right-angled Coxeter groups: construction, CFS and "
               "join analysis, divergence classification, stability witnesses, random probes"};
  app.require_subcommand(1);
  int rc = 0;

  // build
  auto* build = app.add_subcommand("build", "construct a presentation graph");
  build->require_subcommand(1);

  int bn_n = 1;
  std::string bn_out;
  bool bn_json = false;
  auto* build_gn = build->add_subcommand("gamma-n", "ladder on 2n vertices: levels {a_i, b_i} "
                                                    "with consecutive levels fully joined");
  build_gn->add_option("--n", bn_n, "number of levels")->required()->check(CLI::Range(1, 100000));
  build_gn->add_option("--out", bn_out, "write the graph here (.json for JSON, else text)");
  build_gn->add_flag("--json", bn_json, "print JSON instead of text when no --out is given");
  build_gn->callback([&] { write_graph_result(racg::build_gamma_n(bn_n), bn_out, bn_json); });

  int bg_n = 1;
  int bg_m = -1;
  std::vector<std::string> bg_points;
  std::string bg_out;
  bool bg_json = false;
  auto* build_g = build->add_subcommand("gamma", "ladder with an induced cycle glued along "
                                                 "verified points");
  build_g->add_option("--n", bg_n, "number of levels")->required()->check(CLI::Range(1, 100000));
  build_g->add_option("--m", bg_m, "cycle length (default points a1, a4, ... need n >= 3m-2)")
      ->check(CLI::Range(5, 100000));
  build_g->add_option("--points", bg_points, "explicit comma-separated cycle points")
      ->delimiter(',');
  build_g->add_option("--out", bg_out, "write the graph here (.json for JSON, else text)");
  build_g->add_flag("--json", bg_json, "print JSON instead of text when no --out is given");
  build_g->callback([&] {
    racg::GammaParams params;
    params.n = bg_n;
    if (bg_m > 0) params.m = bg_m;
    if (!bg_points.empty()) params.points = bg_points;
    try {
      write_graph_result(racg::build_gamma(params), bg_out, bg_json);
    } catch (const racg::CycleSpecError& e) {
      std::cerr << "error: " << e.what() << "\n";
      if (e.witness) describe_witness(std::cerr, racg::build_gamma_n(bg_n), *e.witness);
      rc = 3;
    }
  });

  // export
  auto* exp = app.add_subcommand("export", "derived renderings of a graph");
  exp->require_subcommand(1);

  std::string ep_graph, ep_out;
  bool ep_json = false;
  auto* exp_pres = exp->add_subcommand("presentation", "group presentation: one involution per "
                                                       "vertex, one commutator per edge");
  exp_pres->add_option("graph", ep_graph, "graph file")->required();
  exp_pres->add_option("--out", ep_out, "write here instead of stdout");
  exp_pres->add_flag("--json", ep_json, "JSON instead of text");
  exp_pres->callback([&] {
    const racg::Graph g = racg::read_graph_file(ep_graph);
    const racg::Presentation p = racg::racg_presentation(g);
    if (ep_json)
      emit_json(racg::presentation_json(p), ep_out);
    else
      emit(racg::presentation_text(p), ep_out);
  });

  std::string ed_graph, ed_out;
  auto* exp_dot = exp->add_subcommand("dot", "Graphviz rendering");
  exp_dot->add_option("graph", ed_graph, "graph file")->required();
  exp_dot->add_option("--out", ed_out, "write here instead of stdout");
  exp_dot->callback([&] { emit(racg::dot_export(racg::read_graph_file(ed_graph)), ed_out); });

  // check
  auto* check = app.add_subcommand("check", "boolean properties with evidence");
  check->require_subcommand(1);

  std::string cc_graph, cc_mode = "diagonal";
  bool cc_json = false;
  auto* check_cfs = check->add_subcommand("cfs", "is the graph constructed from squares?");
  check_cfs->add_option("graph", cc_graph, "graph file")->required();
  check_cfs->add_option("--mode", cc_mode, "square chaining notion (default diagonal)")
      ->check(CLI::IsMember({"share3", "diagonal"}));
  check_cfs->add_flag("--json", cc_json, "JSON report");
  check_cfs->callback([&] {
    const racg::Graph g = racg::read_graph_file(cc_graph);
    const racg::CfsReport rep = racg::is_cfs(g, racg::chain_mode_from(cc_mode));
    if (cc_json) {
      emit_json(racg::cfs_report_json(g, rep), "");
    } else if (rep.holds) {
      std::cout << "CFS (" << cc_mode << "): component " << *rep.witness_component << " of "
                << rep.component_count << " supports all " << (g.full_set() - rep.clique_factor).count()
                << " non-cone vertices (" << rep.square_count << " squares)\n";
    } else if (rep.square_count == 0) {
      std::cout << "not CFS (" << cc_mode << "): no induced squares\n";
    } else if (*rep.failure_reason == racg::CfsFailure::uncovered_vertex) {
      const racg::VertexSet missed = g.full_set() - rep.clique_factor - rep.covered;
      std::cout << "not CFS (" << cc_mode << "): vertex "
                << g.name(static_cast<int>(missed.find_first())) << " lies on no square\n";
    } else {
      std::cout << "not CFS (" << cc_mode << "): square support splits across "
                << rep.component_count << " chain components\n";
    }
    rc = rep.holds ? 0 : 1;
  });

  std::string cj_graph, cj_u, cj_v;
  bool cj_json = false, cj_oracle = false;
  int cj_cap = 12;
  auto* check_jp = check->add_subcommand("join-pair", "do the two vertices lie in a common "
                                                      "non-degenerate join subgraph?");
  check_jp->add_option("graph", cj_graph, "graph file")->required();
  check_jp->add_option("u", cj_u, "first vertex")->required();
  check_jp->add_option("v", cj_v, "second vertex")->required();
  check_jp->add_flag("--oracle", cj_oracle, "cross-check with the exponential enumeration");
  check_jp->add_option("--cap", cj_cap, "oracle vertex cap (default 12)");
  check_jp->add_flag("--json", cj_json, "JSON report");
  check_jp->callback([&] {
    const racg::Graph g = racg::read_graph_file(cj_graph);
    const auto w = racg::pair_in_common_join(g, cj_u, cj_v);
    std::optional<bool> oracle_verdict;
    if (cj_oracle) {
      oracle_verdict =
          racg::brute_force_common_join(g, g.require_vertex(cj_u), g.require_vertex(cj_v), cj_cap);
      if (*oracle_verdict != w.has_value())
        throw racg::Error("oracle disagrees with the witness search; please report this");
    }
    if (cj_json) {
      json j;
      j["u"] = cj_u;
      j["v"] = cj_v;
      j["in_common_join"] = w.has_value();
      if (w) j["witness"] = racg::join_witness_json(g, *w);
      if (oracle_verdict) j["oracle"] = *oracle_verdict;
      emit_json(j, "");
    } else if (w) {
      std::cout << cj_u << " and " << cj_v << " lie in a common join\n";
      describe_witness(std::cout, g, *w);
    } else {
      std::cout << "no non-degenerate join contains both " << cj_u << " and " << cj_v << "\n";
    }
    rc = w ? 0 : 1;
  });

  // find witness
  auto* find = app.add_subcommand("find", "searches");
  find->require_subcommand(1);

  std::string fw_graph, fw_out;
  int fw_min_len = 5;
  std::uint64_t fw_budget = racg::kDefaultWitnessBudget;
  bool fw_exhaustive = false, fw_json = false;
  int fw_cap = 10;
  auto* find_w = find->add_subcommand("witness", "induced cycle of length >= min-len whose "
                                                 "non-adjacent pairs all avoid common joins");
  find_w->add_option("graph", fw_graph, "graph file")->required();
  find_w->add_option("--min-len", fw_min_len, "minimum cycle length (default 5)");
  find_w->add_option("--budget", fw_budget, "path-extension budget (default 100000)");
  find_w->add_flag("--exhaustive", fw_exhaustive, "sweep the whole space (needs few vertices)");
  find_w->add_option("--cap", fw_cap, "vertex cap for --exhaustive (default 10)");
  find_w->add_option("--out", fw_out, "write the certificate JSON here");
  find_w->add_flag("--json", fw_json, "JSON result on stdout");
  find_w->callback([&] {
    const racg::Graph g = racg::read_graph_file(fw_graph);
    std::uint64_t budget = fw_budget;
    if (fw_exhaustive) {
      if (g.vertex_count() > fw_cap)
        throw racg::PreconditionError("exhaustive search capped at " + std::to_string(fw_cap) +
                                      " vertices (override with --cap)");
      budget = std::numeric_limits<std::uint64_t>::max();
    }
    const racg::WitnessSearchResult res = racg::find_stable_cycle(g, fw_min_len, budget);
    if (res.certificate && !fw_out.empty())
      emit_json(racg::certificate_json(*res.certificate), fw_out);
    if (fw_json) {
      json j;
      j["found"] = res.certificate.has_value();
      j["exhausted"] = res.exhausted;
      j["expansions"] = res.expansions;
      if (res.certificate) j["certificate"] = racg::certificate_json(*res.certificate);
      emit_json(j, "");
    } else if (res.certificate) {
      std::cout << "stable cycle: " << join_names(res.certificate->cycle) << " ("
                << res.certificate->cycle.size() << " vertices, "
                << res.certificate->checked_pairs.size() << " pairs checked";
      if (!fw_out.empty()) std::cout << ", certificate in " << fw_out;
      std::cout << ")\n";
    } else if (res.exhausted) {
      std::cout << "no stable cycle of length >= " << fw_min_len
                << " exists (search space swept, " << res.expansions << " expansions)\n";
    } else {
      std::cout << "no stable cycle found within budget (" << res.expansions
                << " expansions); result is inconclusive\n";
    }
    rc = res.certificate ? 0 : 1;
  });

  // verify
  std::string vf_graph, vf_cert;
  bool vf_json = false;
  auto* verify = app.add_subcommand("verify", "re-derive every claim of a certificate");
  verify->add_option("graph", vf_graph, "graph file")->required();
  verify->add_option("certificate", vf_cert, "certificate JSON file")->required();
  verify->add_flag("--json", vf_json, "JSON report");
  verify->callback([&] {
    const racg::Graph g = racg::read_graph_file(vf_graph);
    const racg::WitnessCertificate cert = load_certificate(vf_cert);
    const racg::VerificationReport rep = racg::verify_certificate(g, cert);
    if (vf_json) {
      emit_json(racg::verification_json(g, rep), "");
    } else if (rep.pass) {
      std::cout << "certificate verifies: cycle " << join_names(cert.cycle) << "\n";
    } else {
      std::cout << "certificate rejected: " << rep.reason;
      if (rep.failing_pair)
        std::cout << " (" << rep.failing_pair->first << ", " << rep.failing_pair->second << ")";
      std::cout << "\n";
      if (rep.join_witness) describe_witness(std::cout, g, *rep.join_witness);
    }
    rc = rep.pass ? 0 : 1;
  });

  // classify
  std::string cl_graph, cl_cert;
  bool cl_json = false;
  auto* classify = app.add_subcommand("classify", "divergence ladder: finite, multi-ended, "
                                                  "linear, quadratic, or unclassified");
  classify->add_option("graph", cl_graph, "graph file")->required();
  classify->add_option("--cert", cl_cert, "stability certificate to fold into the flags");
  classify->add_flag("--json", cl_json, "JSON report");
  classify->callback([&] {
    const racg::Graph g = racg::read_graph_file(cl_graph);
    const racg::DivergenceReport rep = racg::classify_divergence(g);
    std::optional<racg::WitnessCertificate> cert;
    if (!cl_cert.empty()) cert = load_certificate(cl_cert);
    const racg::FlagSet flags = racg::derived_flags(rep, cert ? &*cert : nullptr);
    if (cl_json) {
      json j = racg::divergence_report_json(g, rep);
      j["flags"] = racg::flag_set_json(flags);
      emit_json(j, "");
      return;
    }
    std::cout << "classification: " << racg::to_string(rep.classification) << "\n";
    if (rep.cone_set.any())
      std::cout << "clique factor: " << join_names(racg::names_of(g, rep.cone_set)) << "\n";
    if (!rep.components.empty()) std::cout << "components: " << rep.components.size() << "\n";
    if (rep.join_evidence && rep.join_evidence->is_nondegenerate_join) {
      const auto& split = *rep.join_evidence->witness_split;
      std::cout << "join: [" << join_names(racg::names_of(g, split.first)) << "] * ["
                << join_names(racg::names_of(g, split.second)) << "]\n";
    }
    if (rep.cfs_evidence)
      std::cout << "cfs: " << (rep.cfs_evidence->holds ? "yes" : "no") << " ("
                << rep.cfs_evidence->square_count << " squares, "
                << rep.cfs_evidence->component_count << " chain components)\n";
    auto flag_line = [&](const char* name, const racg::Flag& f) {
      if (f.value) std::cout << "flag " << name << ": " << f.citation << "\n";
    };
    flag_line("not_relatively_hyperbolic", flags.not_relatively_hyperbolic);
    flag_line("stable_one_ended_subgroup", flags.stable_one_ended_subgroup);
    flag_line("morse_boundary_circle", flags.morse_boundary_circle);
    flag_line("not_qi_to_raag", flags.not_qi_to_raag);
    for (const auto& c : rep.citations) std::cout << "because: " << c << "\n";
  });

  // random
  int rd_n = 10, rd_trials = 100, rd_workers = 0;
  double rd_p = -1.0;
  std::vector<double> rd_profile;
  std::uint64_t rd_seed = 0, rd_budget = 20000;
  std::string rd_csv, rd_mode = "diagonal";
  bool rd_timing = false, rd_json = false;
  auto* random_cmd = app.add_subcommand("random", "seeded G(n, p) probe of CFS, joins, "
                                                  "witnesses, and the divergence ladder");
  random_cmd->add_option("--n", rd_n, "vertices per draw")->required()->check(CLI::Range(1, 100000));
  random_cmd->add_option("--p", rd_p, "edge probability in [0, 1]");
  random_cmd->add_option("--profile", rd_profile, "density profile c,alpha for p = c * n^-alpha")
      ->delimiter(',')
      ->expected(2);
  random_cmd->add_option("--trials", rd_trials, "number of draws")->check(CLI::Range(1, 10000000));
  random_cmd->add_option("--seed", rd_seed, "base seed");
  random_cmd->add_option("--workers", rd_workers, "worker threads (0 = machine default)");
  random_cmd->add_option("--mode", rd_mode, "square chaining notion for the CFS column")
      ->check(CLI::IsMember({"share3", "diagonal"}));
  random_cmd->add_option("--budget", rd_budget, "witness search budget per trial");
  random_cmd->add_option("--csv", rd_csv, "write one row per trial here");
  random_cmd->add_flag("--timing", rd_timing, "fill the ms CSV column with measured wall time "
                                              "(breaks byte-reproducibility)");
  random_cmd->add_flag("--json", rd_json, "JSON stats on stdout");
  random_cmd->callback([&] {
    racg::ExperimentConfig cfg;
    cfg.n = rd_n;
    if (rd_p >= 0.0) cfg.p = rd_p;
    if (!rd_profile.empty()) cfg.profile = racg::DensityProfile{rd_profile[0], rd_profile[1]};
    cfg.trials = rd_trials;
    cfg.seed = rd_seed;
    cfg.workers = rd_workers;
    cfg.chain_mode = racg::chain_mode_from(rd_mode);
    cfg.witness_budget = rd_budget;
    const racg::ExperimentResult res = racg::run_experiment(cfg);
    if (!rd_csv.empty()) emit(racg::records_csv(res.records, rd_timing), rd_csv);
    if (rd_json) {
      emit_json(racg::experiment_stats_json(res.stats), "");
      return;
    }
    const auto& st = res.stats;
    std::cout << "n=" << st.n << " p=" << st.p << " trials=" << st.trials << " seed=" << st.seed
              << "\n";
    std::cout << "cfs:                 " << format_fraction(st.cfs) << "\n";
    std::cout << "nondegenerate join:  " << format_fraction(st.join) << "\n";
    std::cout << "cfs and not join:    " << format_fraction(st.cfs_not_join) << "\n";
    std::cout << "stability witness:   " << format_fraction(st.witness) << "\n";
    std::cout << "classification:";
    for (const auto& [name, count] : st.classification_counts) std::cout << " " << name << "=" << count;
    std::cout << "\n";
    std::cout << "total " << st.total_ms << " ms\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const racg::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const racg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
