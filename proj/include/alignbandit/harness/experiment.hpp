#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "alignbandit/agents.hpp"
#include "alignbandit/core.hpp"
#include "alignbandit/environment.hpp"
#include "alignbandit/harness/config.hpp"
#include "alignbandit/random.hpp"

namespace alignbandit {

// Log-mode checkpoints: every step up to this count, then ~100 per decade.
inline constexpr std::uint64_t kDenseCheckpoints = 1024;
inline constexpr double kCheckpointsPerDecade = 100.0;

// Step counts (1-based, i.e. the number of actions taken) at which an episode
// records its state. Always includes the horizon. `extra` adds fixed points
// such as an agent's phase boundary.
inline std::vector<std::uint64_t> checkpoint_times(CheckpointMode mode, std::uint64_t horizon, std::uint64_t stride,
                                                   const std::vector<std::uint64_t>& extra = {}) {
  std::vector<std::uint64_t> times;
  const std::uint64_t dense_end = mode == CheckpointMode::Linear ? horizon : std::min(horizon, kDenseCheckpoints);
  for (std::uint64_t t = stride; t <= dense_end; t += stride) times.push_back(t);
  if (mode == CheckpointMode::Log) {
    for (int k = 1;; ++k) {
      const auto t = static_cast<std::uint64_t>(
          std::llround(static_cast<double>(kDenseCheckpoints) * std::pow(10.0, k / kCheckpointsPerDecade)));
      if (t >= horizon) break;
      times.push_back(t);
    }
  }
  for (auto t : extra) {
    if (t >= 1 && t <= horizon) times.push_back(t);
  }
  times.push_back(horizon);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

// ETE's last exploration step and first exploitation step, as step counts.
inline std::vector<std::uint64_t> phase_boundaries(const AgentSpec& spec) {
  if (spec.kind == AgentKind::ExploreThenExploit) return {*spec.tau, *spec.tau + 1};
  return {};
}

inline std::vector<std::uint64_t> checkpoint_times(const ExperimentConfig& cfg, const AgentSpec& spec) {
  return checkpoint_times(cfg.checkpoints, cfg.horizon, cfg.record_stride, phase_boundaries(spec));
}

// Episode seed for the k-th problem instance. Every agent faces the same
// instance for a given k.
inline std::uint64_t episode_seed(std::uint64_t base_seed, std::size_t seed_ordinal) {
  return mix64(mix64(base_seed) + static_cast<std::uint64_t>(seed_ordinal));
}

// One episode: sample the instance, then for t = 0..T-1 act, observe, update
// the belief and the regret ledger. Streams for the instance, observations and
// agent randomness are derived from `seed`.
inline RegretTrace run_episode(const ExperimentConfig& cfg, const AgentSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng instance_rng(derive_seed(seed, Stream::Instance));
  Rng observation_rng(derive_seed(seed, Stream::Observation));
  Rng agent_rng(derive_seed(seed, Stream::Agent));

  const ProblemInstance inst = sample_instance(instance_rng, cfg.arms);
  BeliefState belief(cfg.arms);
  RegretLedger ledger(inst, seed);
  const auto times = checkpoint_times(cfg, spec);
  std::size_t next = 0;
  for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
    const Action a = act(spec, belief, agent_rng);
    const Observation o = step(inst, a, observation_rng);
    const bool keep = next < times.size() && times[next] == t + 1;
    if (keep) ++next;
    ledger.record(a, o, keep);
    belief.apply(a, o);
  }
  return std::move(ledger).trace();
}

struct AggregatePoint {
  std::uint64_t t = 0;
  double mean_cum_regret = 0.0;
  double standard_error = 0.0;
  std::size_t n_seeds = 0;
};

struct AggregateCurve {
  std::string agent_id;
  std::vector<AggregatePoint> points;
};

// Mean and standard error (sample stddev / √n) of cum_regret at each shared
// checkpoint. Values are sorted before summation, so the result does not
// depend on seed order.
inline AggregateCurve aggregate(const std::string& agent_id, const std::vector<RegretTrace>& traces) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  const std::size_t n = traces.size();
  const std::size_t len = traces.front().records.size();
  for (const auto& tr : traces) {
    if (tr.records.size() != len) throw std::invalid_argument("aggregate: traces have different checkpoints");
  }
  AggregateCurve curve{agent_id, {}};
  curve.points.reserve(len);
  std::vector<double> values(n);
  for (std::size_t k = 0; k < len; ++k) {
    const std::uint64_t t = traces.front().records[k].t;
    for (std::size_t s = 0; s < n; ++s) {
      if (traces[s].records[k].t != t) throw std::invalid_argument("aggregate: traces have different checkpoints");
      values[s] = traces[s].records[k].cum_regret;
    }
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double se = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
    curve.points.push_back({t, mean, se, n});
  }
  return curve;
}

// Shortest round-trip decimal form.
inline std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

inline constexpr const char* kTraceHeader =
    "agent_id,seed,t,action_kind,action_index,observation,instant_regret,cum_regret";
inline constexpr const char* kAggregateHeader = "agent_id,t,mean_cum_regret,stderr,n_seeds";

inline std::string trace_csv(const std::string& agent, const RegretTrace& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  const std::string prefix = agent + ',' + std::to_string(trace.seed) + ',';
  for (const auto& r : trace.records) {
    out += prefix;
    out += std::to_string(r.t);
    out += ',';
    out += to_string(r.action.kind);
    out += ',';
    out += std::to_string(r.action.index);
    out += ',';
    out += std::to_string(static_cast<int>(r.observation));
    out += ',';
    out += format_double(r.instant_regret);
    out += ',';
    out += format_double(r.cum_regret);
    out += '\n';
  }
  return out;
}

inline std::string aggregate_csv(const std::vector<AggregateCurve>& curves) {
  std::string out = kAggregateHeader;
  out += '\n';
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out += c.agent_id + ',' + std::to_string(p.t) + ',' + format_double(p.mean_cum_regret) + ',' +
             format_double(p.standard_error) + ',' + std::to_string(p.n_seeds) + '\n';
    }
  }
  return out;
}

// Writes to a sibling temporary file, then renames over the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct EpisodeResult {
  std::size_t agent_ordinal = 0;
  std::size_t seed_ordinal = 0;
  RegretTrace trace;
};

struct ExperimentResult {
  std::vector<std::string> agent_ids;
  std::vector<std::vector<RegretTrace>> traces;  // [agent][seed]
  std::vector<AggregateCurve> curves;            // one per agent
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path aggregate_file;
};

struct RunOptions {
  unsigned threads = 0;      // 0: hardware concurrency
  bool write_files = true;
  std::function<void(const EpisodeResult&, std::size_t done, std::size_t total)> on_episode;
};

inline std::filesystem::path trace_path(const std::filesystem::path& dir, const std::string& agent, std::size_t seed_ordinal) {
  return dir / "traces" / (agent + "_seed" + std::to_string(seed_ordinal) + ".csv");
}

// Runs seeds × agents independent episodes on a worker pool, joins, then
// aggregates per agent and writes traces/<agent>_seed<k>.csv and
// aggregate.csv under cfg.output_dir.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
  cfg.validate();
  ExperimentResult result;
  for (const auto& a : cfg.agents) result.agent_ids.push_back(agent_id(a));
  for (std::size_t i = 0; i < result.agent_ids.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (result.agent_ids[i] == result.agent_ids[j]) {
        throw std::invalid_argument("config: duplicate agent " + result.agent_ids[i]);
      }
    }
  }

  if (opts.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir / "traces", ec);
    if (ec) throw std::runtime_error("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
    // Fail before hours of simulation rather than after.
    write_file_atomic(cfg.output_dir / ".write_probe", "");
    std::filesystem::remove(cfg.output_dir / ".write_probe", ec);
  }

  const std::size_t total = cfg.agents.size() * cfg.seeds;
  std::vector<EpisodeResult> episodes(total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex report_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      try {
        EpisodeResult& ep = episodes[idx];
        ep.agent_ordinal = idx / cfg.seeds;
        ep.seed_ordinal = idx % cfg.seeds;
        ep.trace = run_episode(cfg, cfg.agents[ep.agent_ordinal], episode_seed(cfg.base_seed, ep.seed_ordinal));
        const std::size_t finished = done.fetch_add(1) + 1;
        if (opts.on_episode) {
          std::lock_guard lock(report_mutex);
          opts.on_episode(ep, finished, total);
        }
      } catch (...) {
        std::lock_guard lock(report_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.traces.assign(cfg.agents.size(), std::vector<RegretTrace>(cfg.seeds));
  for (auto& ep : episodes) result.traces[ep.agent_ordinal][ep.seed_ordinal] = std::move(ep.trace);
  for (std::size_t a = 0; a < cfg.agents.size(); ++a) {
    result.curves.push_back(aggregate(result.agent_ids[a], result.traces[a]));
  }

  if (opts.write_files) {
    for (std::size_t a = 0; a < cfg.agents.size(); ++a) {
      for (std::size_t s = 0; s < cfg.seeds; ++s) {
        const auto path = trace_path(cfg.output_dir, result.agent_ids[a], s);
        write_file_atomic(path, trace_csv(result.agent_ids[a], result.traces[a][s]));
        result.trace_files.push_back(path);
      }
    }
    result.aggregate_file = cfg.output_dir / "aggregate.csv";
    write_file_atomic(result.aggregate_file, aggregate_csv(result.curves));
  }
  return result;
}

}  // namespace alignbandit
