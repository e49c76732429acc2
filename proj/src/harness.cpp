#include "drlse/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "drlse/rng.hpp"

namespace drlse {

void ExperimentConfig::validate() const {
  problem.validate();
  if (problem.problem == Problem::Sir) sir.validate();
  kernel.validate();
  accuracy.validate();
  acquisition.validate();
  if (!(ambiguity.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  if (initial_points < 1) throw std::invalid_argument("initial_points must be >= 1");
}

std::vector<std::size_t> ground_truth_H(std::span<const double> values, std::size_t env_size,
                                        const AmbiguitySet& set, double threshold, double alpha) {
  if (env_size == 0 || values.size() % env_size != 0 || set.size() != env_size) {
    throw std::invalid_argument("ground_truth_H: sizes do not match");
  }
  std::vector<std::size_t> out;
  std::vector<std::uint8_t> costs(env_size);
  for (std::size_t x = 0; x < values.size() / env_size; ++x) {
    for (std::size_t w = 0; w < env_size; ++w) costs[w] = values[x * env_size + w] > threshold;
    if (worst_case_mass(set, costs) > alpha) out.push_back(x);
  }
  return out;
}

double f_score(std::span<const std::size_t> truth, std::span<const std::size_t> estimate) {
  if (estimate.empty() || truth.empty()) return 0.0;
  std::size_t both = 0;
  auto a = truth.begin();
  auto b = estimate.begin();
  while (a != truth.end() && b != estimate.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++both;
      ++a;
      ++b;
    }
  }
  if (both == 0) return 0.0;
  const double pre = static_cast<double>(both) / static_cast<double>(estimate.size());
  const double rec = static_cast<double>(both) / static_cast<double>(truth.size());
  return 2.0 * pre * rec / (pre + rec);
}

namespace {

const ExperimentConfig& validated(const ExperimentConfig& config) {
  config.validate();
  return config;
}

bool needs_covariance(Strategy s) {
  return s == Strategy::MILE || s == Strategy::Proposed1 || s == Strategy::Proposed2;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// One seeded pass through the active-learning loop.
class Loop {
 public:
  Loop(const Experiment& ex, std::uint64_t seed)
      : ex_(ex),
        cfg_(ex.config()),
        noise_(make_stream(seed, Stream::Noise)),
        selection_(make_stream(seed, Stream::Selection)),
        noise_sd_(std::sqrt(cfg_.kernel.noise_variance)) {
    Rng init = make_stream(seed, Stream::InitialDesign);
    for (std::size_t i = 0; i < cfg_.initial_points; ++i) observe(init.index(ex_.domain().size()));
    refit(0);
  }

  const GpPosterior& posterior() const { return *gp_; }
  const ClassificationState& state() const { return state_; }
  double beta_sqrt() const { return beta_sqrt_; }

  AcquisitionContext context() const {
    return {*gp_, ex_.ambiguity(), state_, cfg_.accuracy, beta_sqrt_};
  }

  /// Selects, observes and refits. Returns the chosen joint index.
  std::size_t step(std::size_t t) {
    std::size_t chosen;
    try {
      chosen = select_next(context(), cfg_.acquisition, selection_, cfg_.execution);
    } catch (const NumericalError& e) {
      throw NumericalError("iteration " + std::to_string(t) + ": " + e.what());
    }
    observe(chosen);
    refit(t);
    return chosen;
  }

  double last_y() const { return log_.back().y; }

 private:
  void observe(std::size_t j) {
    log_.push_back({j, ex_.values()[j] + noise_sd_ * noise_.normal()});
  }

  void refit(std::size_t t) {
    try {
      gp_ = std::make_unique<GpPosterior>(
          ex_.model().fit(log_, {needs_covariance(cfg_.acquisition.strategy)}));
    } catch (const NumericalError& e) {
      throw NumericalError("iteration " + std::to_string(t) + ": " + e.what());
    }
    beta_sqrt_ = cfg_.accuracy.beta.beta_sqrt(log_.size(), ex_.domain().size());
    state_ = classify_posterior(*gp_, ex_.ambiguity(), cfg_.accuracy, beta_sqrt_);
  }

  const Experiment& ex_;
  const ExperimentConfig& cfg_;
  Rng noise_;
  Rng selection_;
  double noise_sd_;
  ObservationLog log_;
  std::unique_ptr<GpPosterior> gp_;
  ClassificationState state_;
  double beta_sqrt_ = 0.0;
};

}  // namespace

Experiment::Experiment(ExperimentConfig config)
    : config_(validated(config)), model_(config_.problem.grid(), config_.kernel) {
  values_ = evaluate_grid(config_.problem, config_.sir);
  std::vector<double> env;
  for (const Point& w : model_.domain().env_points()) env.push_back(w[0]);
  set_ = std::make_unique<AmbiguitySet>(config_.ambiguity.metric, config_.ambiguity.epsilon,
                                        reference_pmf(config_.ambiguity.reference, env));
  truth_ = ground_truth_H(values_, model_.domain().env_size(), *set_, config_.accuracy.threshold,
                          config_.accuracy.alpha);
}

RunRecord Experiment::run(std::uint64_t seed) const {
  RunRecord record;
  record.seed = seed;
  Loop loop(*this, seed);
  record.initial_f_score = f_score(truth_, loop.state().high);
  const std::size_t m = domain().env_size();
  for (std::size_t t = 1; t <= config_.iterations; ++t) {
    if (loop.state().unclassified.empty()) break;
    const auto start = Clock::now();
    const std::size_t chosen = loop.step(t);
    const double elapsed = config_.record_timing ? seconds_since(start) : 0.0;
    const ClassificationState& st = loop.state();
    record.rows.push_back({t, chosen / m, chosen % m, loop.last_y(), st.high.size(), st.low.size(),
                           st.unclassified.size(), f_score(truth_, st.high), elapsed});
  }
  record.exhausted = loop.state().unclassified.empty();
  return record;
}

std::vector<RunRecord> monte_carlo(const Experiment& experiment) {
  std::vector<RunRecord> runs;
  for (std::uint64_t seed : experiment.config().seeds) runs.push_back(experiment.run(seed));
  return runs;
}

double f_score_at(const RunRecord& run, std::size_t t) {
  if (t == 0 || run.rows.empty()) return run.initial_f_score;
  const std::size_t i = std::min(t, run.rows.size()) - 1;
  return run.rows[i].f_score;
}

std::vector<CurvePoint> aggregate(std::span<const RunRecord> runs, std::size_t iterations) {
  std::vector<CurvePoint> curve;
  const double n = static_cast<double>(runs.size());
  for (std::size_t t = 1; t <= iterations; ++t) {
    double sum = 0.0;
    for (const RunRecord& r : runs) sum += f_score_at(r, t);
    const double mean = runs.empty() ? 0.0 : sum / n;
    double ss = 0.0;
    for (const RunRecord& r : runs) ss += (f_score_at(r, t) - mean) * (f_score_at(r, t) - mean);
    const double sd = runs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    curve.push_back({t, mean, sd, runs.size()});
  }
  return curve;
}

double PathTiming::mean() const {
  if (seconds.empty()) return 0.0;
  double s = 0.0;
  for (double v : seconds) s += v;
  return s / static_cast<double>(seconds.size());
}

double PathTiming::sd() const {
  if (seconds.size() < 2) return 0.0;
  const double mu = mean();
  double ss = 0.0;
  for (double v : seconds) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(seconds.size() - 1));
}

std::vector<PathTiming> timing_ablation(const Experiment& experiment, std::uint64_t seed,
                                        std::span<const ComputationPath> paths,
                                        std::size_t iterations) {
  if (!needs_covariance(experiment.config().acquisition.strategy)) {
    throw std::invalid_argument("timing_ablation needs a lookahead-based acquisition");
  }
  std::vector<PathTiming> out;
  for (const ComputationPath& p : paths) {
    p.validate();
    out.push_back({p, {}});
  }
  Loop loop(experiment, seed);
  Rng sampling = make_stream(seed, Stream::NaiveSampling);
  for (std::size_t t = 1; t <= iterations; ++t) {
    if (loop.state().unclassified.empty()) break;
    const AcquisitionContext ctx = loop.context();
    for (PathTiming& pt : out) {
      const std::uint64_t sample_seed = sampling.next();
      const auto start = Clock::now();
      const auto scores = a_t_scores(ctx, pt.path, experiment.config().execution, sample_seed);
      pt.seconds.push_back(seconds_since(start));
      if (scores.size() != ctx.gp.size()) throw std::logic_error("timing_ablation: score size");
    }
    loop.step(t);
  }
  return out;
}

std::vector<ComputationPath> default_timing_paths(bool include_naive) {
  std::vector<ComputationPath> paths;
  if (include_naive) paths.push_back(ComputationPath::naive(1000));
  paths.push_back(ComputationPath::exact());
  paths.push_back(ComputationPath::exact_pruned());
  for (double z : {1e-4, 1e-8, 1e-12}) paths.push_back(ComputationPath::approx(z));
  return paths;
}

std::string path_label(const ComputationPath& path) {
  char buf[64];
  switch (path.kind) {
    case ComputationPath::Kind::Naive:
      std::snprintf(buf, sizeof buf, "naive(M=%zu)", path.samples);
      return buf;
    case ComputationPath::Kind::Approx:
      std::snprintf(buf, sizeof buf, "approx(%g)", path.zeta_per_region);
      return buf;
    default:
      return std::string(to_string(path.kind));
  }
}

namespace {
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void write_run_csv(std::ostream& out, const RunRecord& run) {
  out << "t,x_index,w_index,y,H_size,L_size,U_size,f_score,acq_seconds\n";
  for (const RunRow& r : run.rows) {
    out << r.t << ',' << r.x_index << ',' << r.w_index << ',' << fmt_double(r.y) << ','
        << r.h_size << ',' << r.l_size << ',' << r.u_size << ',' << fmt_double(r.f_score) << ','
        << fmt_double(r.acq_seconds) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "t,f_mean,f_sd,n_seeds\n";
  for (const CurvePoint& c : curve) {
    out << c.t << ',' << fmt_double(c.f_mean) << ',' << fmt_double(c.f_sd) << ',' << c.n_seeds
        << '\n';
  }
}

void write_timing_csv(std::ostream& out, std::span<const PathTiming> timings) {
  out << "path,mean_seconds,sd_seconds,iterations\n";
  for (const PathTiming& p : timings) {
    out << path_label(p.path) << ',' << fmt_double(p.mean()) << ',' << fmt_double(p.sd()) << ','
        << p.seconds.size() << '\n';
  }
}

}  // namespace drlse
