// Command-line front end: run experiments, print ground truth, time the
// acquisition paths.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "drlse/config.hpp"
#include "drlse/harness.hpp"

namespace fs = std::filesystem;
using namespace drlse;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int cmd_run(const std::string& config_path, const std::string& seed_range, const std::string& out_dir,
            bool no_timing) {
  ExperimentConfig cfg = load_config(config_path);
  if (!seed_range.empty()) cfg.seeds = parse_seed_list(seed_range);
  if (no_timing) cfg.record_timing = false;
  const Experiment ex(cfg);
  fs::create_directories(out_dir);

  std::vector<RunRecord> runs;
  for (std::uint64_t seed : cfg.seeds) {
    runs.push_back(ex.run(seed));
    const RunRecord& r = runs.back();
    auto out = open_output(fs::path(out_dir) / ("run_seed" + std::to_string(seed) + ".csv"));
    write_run_csv(out, r);
    std::fprintf(stderr, "seed %llu: %zu iterations, final F = %.4f%s\n",
                 static_cast<unsigned long long>(seed), r.rows.size(),
                 f_score_at(r, cfg.iterations), r.exhausted ? " (all classified)" : "");
  }
  auto agg = open_output(fs::path(out_dir) / "aggregate.csv");
  write_aggregate_csv(agg, aggregate(runs, cfg.iterations));
  return 0;
}

int cmd_truth(const std::string& config_path) {
  const Experiment ex(load_config(config_path));
  const auto& h = ex.ground_truth();
  std::printf("|X| = %zu, |Omega| = %zu, |H| = %zu\n", ex.domain().design_size(),
              ex.domain().env_size(), h.size());
  std::printf("x_index,x\n");
  for (std::size_t x : h) std::printf("%zu,%.17g\n", x, ex.domain().design_point(x)[0]);
  return 0;
}

int cmd_timing(const std::string& config_path, std::size_t iterations, bool skip_naive,
               std::uint64_t seed) {
  const Experiment ex(load_config(config_path));
  const auto paths = default_timing_paths(!skip_naive);
  const auto timings = timing_ablation(ex, seed, paths, iterations);
  write_timing_csv(std::cout, timings);
  return 0;
}

int cmd_list() {
  for (Problem p : all_problems()) {
    const BenchmarkSpec s = BenchmarkSpec::defaults(p);
    std::printf("%-16s x in [%g, %g], w in [%g, %g]\n", std::string(to_string(p)).c_str(), s.x.lower,
                s.x.upper, s.w.lower, s.w.upper);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributionally robust level-set estimation with Gaussian processes"};
  app.require_subcommand(1);

  std::string config_path, seed_range, out_dir = "out";
  bool no_timing = false;
  auto* run = app.add_subcommand("run", "Run the active-learning loop for each seed");
  run->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed-range", seed_range, "Seeds as a..b or a comma list (overrides the config)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--no-timing", no_timing, "Write 0 for acquisition wall-clock (reproducible output)");

  auto* truth = app.add_subcommand("truth", "Print the ground-truth set H");
  truth->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);

  std::size_t timing_iterations = 50;
  bool skip_naive = false;
  std::uint64_t timing_seed = 0;
  auto* timing = app.add_subcommand("timing", "Time a_t over all candidates for each computation path");
  timing->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  timing->add_option("--iterations", timing_iterations, "Loop iterations to time");
  timing->add_option("--seed", timing_seed, "Run seed");
  timing->add_flag("--skip-naive", skip_naive, "Leave out the Monte-Carlo path");

  app.add_subcommand("list-problems", "List the benchmark problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, seed_range, out_dir, no_timing);
    if (truth->parsed()) return cmd_truth(config_path);
    if (timing->parsed()) return cmd_timing(config_path, timing_iterations, skip_naive, timing_seed);
    return cmd_list();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
