#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "racg/certify.hpp"
#include "racg/errors.hpp"
#include "racg/graph.hpp"
#include "racg/squares.hpp"
#include "racg/vertex_set.hpp"

namespace racg {

// Counter-based generator: the stream is a pure function of (seed, stream),
// so trial t of an experiment draws identical bits no matter which worker
// runs it or in what order. Output scrambling is the splitmix64 finalizer.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull))) {}

  std::uint64_t next() {
    counter_ += 0x9e3779b97f4a7c15ull;
    return mix(key_ ^ counter_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// One draw from G(n, p): each of the n-choose-2 pairs appears independently
// with probability p, pairs visited in ascending order.
inline Graph sample_gnp(int n, double p, CounterRng& rng) {
  if (n < 1) throw PreconditionError("G(n, p) needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("edge probability must lie in [0, 1]");
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<VertexSet> rows(static_cast<std::size_t>(n), VertexSet(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_unit() < p) {
        rows[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
        rows[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
      }
  return Graph::from_rows(std::move(names), std::move(rows));
}

// Density profile p(n) = c * n^(-alpha). The evaluated probability must land
// strictly inside (0, 1); a constant p may take the closed endpoints.
struct DensityProfile {
  double c = 1.0;
  double alpha = 0.0;
};

struct ExperimentConfig {
  int n = 10;
  std::optional<double> p;                 // constant edge probability, in [0, 1]
  std::optional<DensityProfile> profile;   // exactly one of p / profile
  int trials = 100;
  std::uint64_t seed = 0;
  int workers = 0;                         // 0 picks a machine default
  ChainMode chain_mode = ChainMode::diagonal;
  std::uint64_t witness_budget = 20000;
};

inline double resolve_edge_probability(const ExperimentConfig& cfg) {
  if (cfg.p.has_value() == cfg.profile.has_value())
    throw PreconditionError("give exactly one of p or a density profile");
  if (cfg.p) {
    if (!(*cfg.p >= 0.0 && *cfg.p <= 1.0))
      throw PreconditionError("edge probability must lie in [0, 1]");
    return *cfg.p;
  }
  const double p = cfg.profile->c * std::pow(static_cast<double>(cfg.n), -cfg.profile->alpha);
  if (!(p > 0.0 && p < 1.0))
    throw PreconditionError("density profile evaluates to " + std::to_string(p) +
                            ", outside (0, 1)");
  return p;
}

struct TrialRecord {
  int trial = 0;
  std::string digest;
  bool is_join = false;  // non-degenerate join of the whole graph
  bool is_cfs = false;
  bool witness_found = false;
  std::optional<int> witness_len;
  Classification classification = Classification::unclassified;
  std::int64_t ms = 0;  // measured wall time; emitted to CSV only when timing is on
};

struct FractionCI {
  int count = 0;
  int trials = 0;
  double fraction = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval at 95% (z = 1.96).
inline FractionCI wilson_interval(int count, int trials) {
  FractionCI ci;
  ci.count = count;
  ci.trials = trials;
  if (trials <= 0) return ci;
  const double z = 1.96;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(count) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = phat + z2 / (2.0 * n);
  const double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  ci.fraction = phat;
  ci.lo = std::max(0.0, (center - spread) / denom);
  ci.hi = std::min(1.0, (center + spread) / denom);
  return ci;
}

struct ExperimentStats {
  int n = 0;
  double p = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  FractionCI cfs;
  FractionCI join;
  FractionCI witness;
  FractionCI cfs_not_join;  // the conjectured generic regime
  std::vector<std::pair<std::string, int>> classification_counts;  // by enum order
  std::int64_t total_ms = 0;  // real elapsed wall time of the whole run
};

struct ExperimentResult {
  ExperimentStats stats;
  std::vector<TrialRecord> records;  // indexed by trial
};

// Runs the trials across workers. Trial t is a pure function of (seed, t),
// and records land in a preallocated slot per trial, so stats and CSV output
// are identical for any worker count. graph_override, when given, replaces
// the G(n, p) draw (the RNG is still advanced deterministically per trial).
inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       const std::function<Graph(int)>& graph_override = {}) {
  if (cfg.n < 1) throw PreconditionError("experiment needs n >= 1");
  if (cfg.trials < 1) throw PreconditionError("experiment needs at least one trial");
  const double p = resolve_edge_probability(cfg);

  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.records.assign(static_cast<std::size_t>(cfg.trials), TrialRecord{});

  const auto run_trial = [&](int t) {
    const auto trial_start = std::chrono::steady_clock::now();
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
    const Graph g = graph_override ? graph_override(t) : sample_gnp(cfg.n, p, rng);
    TrialRecord rec;
    rec.trial = t;
    rec.digest = graph_digest(g);
    rec.is_join = join_decomposition(g).is_nondegenerate_join;
    rec.is_cfs = is_cfs(g, cfg.chain_mode).holds;
    const WitnessSearchResult ws = find_stable_cycle(g, 5, cfg.witness_budget);
    rec.witness_found = ws.certificate.has_value();
    if (ws.certificate) rec.witness_len = static_cast<int>(ws.certificate->cycle.size());
    rec.classification = classify_divergence(g).classification;
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - trial_start)
                 .count();
    result.records[static_cast<std::size_t>(t)] = std::move(rec);
  };

  int workers = cfg.workers;
  if (workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    workers = hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
  }
  workers = std::min(workers, cfg.trials);
  if (workers <= 1) {
    for (int t = 0; t < cfg.trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1)) run_trial(t);
      });
    for (auto& th : pool) th.join();
  }

  ExperimentStats& st = result.stats;
  st.n = cfg.n;
  st.p = p;
  st.trials = cfg.trials;
  st.seed = cfg.seed;
  int cfs_count = 0, join_count = 0, witness_count = 0, cfs_not_join_count = 0;
  std::vector<int> class_counts(5, 0);
  for (const auto& rec : result.records) {
    cfs_count += rec.is_cfs ? 1 : 0;
    join_count += rec.is_join ? 1 : 0;
    witness_count += rec.witness_found ? 1 : 0;
    cfs_not_join_count += (rec.is_cfs && !rec.is_join) ? 1 : 0;
    ++class_counts[static_cast<std::size_t>(rec.classification)];
  }
  st.cfs = wilson_interval(cfs_count, cfg.trials);
  st.join = wilson_interval(join_count, cfg.trials);
  st.witness = wilson_interval(witness_count, cfg.trials);
  st.cfs_not_join = wilson_interval(cfs_not_join_count, cfg.trials);
  for (Classification c : {Classification::finite, Classification::multi_ended,
                           Classification::linear, Classification::quadratic,
                           Classification::unclassified})
    st.classification_counts.emplace_back(std::string(to_string(c)),
                                          class_counts[static_cast<std::size_t>(c)]);
  st.total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return result;
}

// CSV with a fixed header. The ms column is 0 unless timing is requested,
// keeping default output byte-identical across runs and worker counts.
inline std::string records_csv(const std::vector<TrialRecord>& records, bool timing = false) {
  std::string out = "trial,digest,is_join,is_cfs,witness_found,witness_len,classification,ms\n";
  for (const auto& r : records) {
    out += std::to_string(r.trial);
    out += ',';
    out += r.digest;
    out += ',';
    out += r.is_join ? '1' : '0';
    out += ',';
    out += r.is_cfs ? '1' : '0';
    out += ',';
    out += r.witness_found ? '1' : '0';
    out += ',';
    if (r.witness_len) out += std::to_string(*r.witness_len);
    out += ',';
    out += to_string(r.classification);
    out += ',';
    out += std::to_string(timing ? r.ms : 0);
    out += '\n';
  }
  return out;
}

}  // namespace racg
