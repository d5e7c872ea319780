#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "alignbandit/alignbandit.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& output_dir, unsigned threads) {
  auto cfg = alignbandit::load_config(config_path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;

  alignbandit::RunOptions opts;
  opts.threads = threads;
  opts.on_episode = [](const alignbandit::EpisodeResult& ep, std::size_t done, std::size_t total) {
    std::fprintf(stderr, "[%zu/%zu] agent %zu seed %zu: final regret %.3f, %llu queries\n", done, total,
                 ep.agent_ordinal, ep.seed_ordinal, ep.trace.final_regret,
                 static_cast<unsigned long long>(ep.trace.queries));
  };
  const auto result = alignbandit::run_experiment(cfg, opts);
  for (const auto& curve : result.curves) {
    const auto& last = curve.points.back();
    std::cout << curve.agent_id << ": mean final regret " << last.mean_cum_regret << " +/- " << last.standard_error
              << " (t=" << last.t << ", " << last.n_seeds << " seeds)\n";
  }
  std::cout << "wrote " << result.trace_files.size() << " trace files and " << result.aggregate_file.string() << "\n";
  return 0;
}

int verify_command() {
  const auto report = alignbandit::verify();
  std::cout << alignbandit::to_json(report).dump(2) << "\n";
  return report.passed() ? 0 : 1;
}

int slope_command(const std::string& input, std::uint64_t tmin, std::uint64_t tmax) {
  const auto curves = alignbandit::read_curves_csv(input);
  if (curves.empty()) throw std::runtime_error(input + ": no data rows");
  std::cout << "curve,slope\n";
  for (const auto& c : curves) {
    std::cout << c.agent_id << "," << alignbandit::format_double(alignbandit::loglog_slope(c, tmin, tmax)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beta-Bernoulli bandit alignment experiments"};
  app.require_subcommand(1);

  std::string output_dir;
  unsigned threads = 0;
  app.add_option("--output-dir", output_dir, "Directory for trace and aggregate CSVs (overrides the config)");
  app.add_option("--threads", threads, "Worker threads; 0 uses all cores")->default_val(0);

  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  std::string config_path;
  run->add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  run->add_option("--output-dir", output_dir, "Directory for trace and aggregate CSVs (overrides the config)");
  run->add_option("--threads", threads, "Worker threads; 0 uses all cores");

  auto* verify = app.add_subcommand("verify", "Run the oracle checks and print a JSON report");

  auto* slope = app.add_subcommand("slope", "Log-log slope of cumulative regret over a window");
  std::string input;
  std::uint64_t tmin = 0;
  std::uint64_t tmax = 0;
  slope->add_option("--input", input, "Aggregate or trace CSV")->required()->check(CLI::ExistingFile);
  slope->add_option("--tmin", tmin, "First step of the window")->required();
  slope->add_option("--tmax", tmax, "Last step of the window")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, output_dir, threads);
    if (*verify) return verify_command();
    if (*slope) return slope_command(input, tmin, tmax);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
