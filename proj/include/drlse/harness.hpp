#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "drlse/acquisition.hpp"
#include "drlse/ambiguity.hpp"
#include "drlse/bands.hpp"
#include "drlse/gp.hpp"
#include "drlse/problems.hpp"

namespace drlse {

struct AmbiguitySpec {
  Metric metric = Metric::L1;
  double epsilon = 0.65;
  ReferenceKind reference = ReferenceKind::Uniform;
};

struct ExperimentConfig {
  BenchmarkSpec problem = BenchmarkSpec::defaults(Problem::Booth);
  SirParams sir;
  KernelSpec kernel{1300.0 * 1300.0, 4.0, 1e-4};
  AccuracyParams accuracy{100.0, 0.62, 0.0, BetaSchedule::fixed(2.0)};
  AmbiguitySpec ambiguity;
  AcquisitionConfig acquisition;
  std::size_t iterations = 300;
  std::vector<std::uint64_t> seeds{0};
  std::size_t initial_points = 1;
  /// When false, acq_seconds is written as 0 so output is byte-reproducible.
  bool record_timing = true;
  Execution execution = Execution::Parallel;

  void validate() const;
};

struct RunRow {
  std::size_t t;
  std::size_t x_index;
  std::size_t w_index;
  double y;
  std::size_t h_size;
  std::size_t l_size;
  std::size_t u_size;
  double f_score;  ///< 0 when h_size == 0
  double acq_seconds;
};

struct RunRecord {
  std::uint64_t seed = 0;
  double initial_f_score = 0.0;  ///< after the initial design, before any selection
  std::vector<RunRow> rows;
  bool exhausted = false;  ///< stopped because every design point was classified
};

/// {x : worst-case mass of 1[f(x, .) > h] exceeds alpha}, from exact values f
/// laid out by joint index.
std::vector<std::size_t> ground_truth_H(std::span<const double> values, std::size_t env_size,
                                        const AmbiguitySet& set, double threshold, double alpha);

/// Harmonic mean of precision and recall; 0 when the estimate is empty.
/// Both sets must be sorted ascending.
double f_score(std::span<const std::size_t> truth, std::span<const std::size_t> estimate);

/// A configured problem instance: grid, exact values, ambiguity set, ground
/// truth and the GP prior. Shared across seeds.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const GridDomain& domain() const { return model_.domain(); }
  std::span<const double> values() const { return values_; }
  const AmbiguitySet& ambiguity() const { return *set_; }
  const std::vector<std::size_t>& ground_truth() const { return truth_; }

  const GpModel& model() const { return model_; }

  RunRecord run(std::uint64_t seed) const;

 private:
  ExperimentConfig config_;
  std::vector<double> values_;
  std::unique_ptr<AmbiguitySet> set_;
  std::vector<std::size_t> truth_;
  GpModel model_;
};

std::vector<RunRecord> monte_carlo(const Experiment& experiment);

struct CurvePoint {
  std::size_t t;
  double f_mean;
  double f_sd;
  std::size_t n_seeds;
};

/// Mean and sample standard deviation of the F-score at t = 1..iterations.
/// Runs that stopped early contribute their last value.
std::vector<CurvePoint> aggregate(std::span<const RunRecord> runs, std::size_t iterations);

/// F-score of one run at iteration t, carrying the last row forward.
double f_score_at(const RunRecord& run, std::size_t t);

struct PathTiming {
  ComputationPath path;
  std::vector<double> seconds;  ///< one entry per iteration
  double mean() const;
  double sd() const;
};

/// Drives the loop with the configured acquisition for `iterations` steps and,
/// at every step, times a_t over all candidates once per path.
std::vector<PathTiming> timing_ablation(const Experiment& experiment, std::uint64_t seed,
                                        std::span<const ComputationPath> paths,
                                        std::size_t iterations);

/// Naive(1000), Exact, ExactPruned and Approx at 1e-4, 1e-8, 1e-12.
std::vector<ComputationPath> default_timing_paths(bool include_naive = true);

std::string path_label(const ComputationPath& path);

void write_run_csv(std::ostream& out, const RunRecord& run);
void write_aggregate_csv(std::ostream& out, std::span<const CurvePoint> curve);
void write_timing_csv(std::ostream& out, std::span<const PathTiming> timings);

}  // namespace drlse
