#include "drlse/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "drlse/normal.hpp"

namespace drlse {

Strategy parse_strategy(std::string_view name) {
  if (name == "random") return Strategy::Random;
  if (name == "us") return Strategy::US;
  if (name == "straddle-f") return Strategy::StraddleF;
  if (name == "straddle-us") return Strategy::StraddleUS;
  if (name == "straddle-random") return Strategy::StraddleRandom;
  if (name == "mile") return Strategy::MILE;
  if (name == "proposed1") return Strategy::Proposed1;
  if (name == "proposed2") return Strategy::Proposed2;
  throw std::invalid_argument("unknown acquisition: " + std::string(name));
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Random: return "random";
    case Strategy::US: return "us";
    case Strategy::StraddleF: return "straddle-f";
    case Strategy::StraddleUS: return "straddle-us";
    case Strategy::StraddleRandom: return "straddle-random";
    case Strategy::MILE: return "mile";
    case Strategy::Proposed1: return "proposed1";
    case Strategy::Proposed2: return "proposed2";
  }
  return "?";
}

void AcquisitionConfig::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(gamma_tilde > 0.0)) throw std::invalid_argument("gamma_tilde must be > 0");
  path.validate();
}

namespace {

// Runs body(worker, i) for every candidate, either serially or as an OpenMP
// loop. Each thread builds its own worker (scratch buffers).
template <class MakeWorker, class Body>
std::vector<double> score_candidates(std::size_t n, Execution exec, MakeWorker make_worker,
                                     Body body) {
  std::vector<double> out(n);
  if (exec == Execution::Serial) {
    auto worker = make_worker();
    for (std::size_t i = 0; i < n; ++i) out[i] = body(worker, i);
    return out;
  }
#pragma omp parallel
  {
    auto worker = make_worker();
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      out[static_cast<std::size_t>(i)] = body(worker, static_cast<std::size_t>(i));
    }
  }
  return out;
}

double sum_expectations(LookaheadEvaluator& ev, std::span<const std::size_t> unclassified) {
  double total = 0.0;
  for (std::size_t x : unclassified) total += ev.expectation(x);
  return total;
}

// Expected count of pairs with l_t(x, w | candidate, y*) > h.
double mile_gain(const GpPosterior& gp, std::span<const double> column,
                 std::span<const std::size_t> design_set, std::size_t candidate, double threshold,
                 double beta_sqrt) {
  const std::size_t m = gp.env_size();
  const double s2 = gp.variance(candidate) + gp.noise_variance();
  const double inv_s = 1.0 / std::sqrt(s2);
  const auto mu = gp.means();
  const auto var = gp.variances();
  double total = 0.0;
  for (std::size_t x : design_set) {
    for (std::size_t p = x * m; p < (x + 1) * m; ++p) {
      const double k = column[p];
      const double a = mu[p] - beta_sqrt * std::sqrt(std::max(0.0, var[p] - k * k / s2));
      if (k == 0.0) {
        total += a > threshold ? 1.0 : 0.0;
      } else {
        total += normal_cdf((a - threshold) / (std::abs(k) * inv_s));
      }
    }
  }
  return total;
}

double classified_count(const GpPosterior& gp, std::span<const std::size_t> design_set,
                        double threshold, double eta, double beta_sqrt) {
  const std::size_t m = gp.env_size();
  double count = 0.0;
  for (std::size_t x : design_set) {
    for (std::size_t p = x * m; p < (x + 1) * m; ++p) {
      if (gp.mean(p) - beta_sqrt * gp.stddev(p) > threshold - eta) count += 1.0;
    }
  }
  return count;
}

std::vector<std::size_t> all_design_points(std::size_t n) {
  std::vector<std::size_t> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = i;
  return xs;
}

struct ColumnWorker {
  const GpPosterior* gp;
  std::vector<double> storage;

  std::span<const double> column(std::size_t c) {
    if (gp->has_full_covariance()) return gp->covariance_column(c);
    storage.resize(gp->size());
    gp->covariance_column(c, storage);
    return storage;
  }
};

}  // namespace

double a_t(const AcquisitionContext& ctx, std::size_t candidate, ComputationPath path,
           std::uint64_t sample_seed) {
  LookaheadEvaluator ev(ctx.gp, ctx.set, ctx.lookahead(), path);
  ev.prepare(candidate, mix_seed(sample_seed, candidate));
  return sum_expectations(ev, ctx.state.unclassified);
}

std::vector<double> a_t_scores(const AcquisitionContext& ctx, ComputationPath path, Execution exec,
                               std::uint64_t sample_seed) {
  return score_candidates(
      ctx.gp.size(), exec,
      [&] { return LookaheadEvaluator(ctx.gp, ctx.set, ctx.lookahead(), path); },
      [&](LookaheadEvaluator& ev, std::size_t c) {
        ev.prepare(c, mix_seed(sample_seed, c));
        return sum_expectations(ev, ctx.state.unclassified);
      });
}

double mile_score(const GpPosterior& gp, std::span<const std::size_t> design_set,
                  std::size_t candidate, double threshold, double eta, double beta_sqrt) {
  ColumnWorker cw{&gp, {}};
  return mile_gain(gp, cw.column(candidate), design_set, candidate, threshold, beta_sqrt) -
         classified_count(gp, design_set, threshold, eta, beta_sqrt);
}

double rmile_score(const GpPosterior& gp, std::span<const std::size_t> design_set,
                   std::size_t candidate, double threshold, double eta, double beta_sqrt,
                   double gamma_tilde) {
  return std::max(mile_score(gp, design_set, candidate, threshold, eta, beta_sqrt),
                  gamma_tilde * gp.stddev(candidate));
}

std::vector<double> acquisition_scores(const AcquisitionContext& ctx,
                                       const AcquisitionConfig& config, Execution exec,
                                       std::uint64_t sample_seed) {
  const GpPosterior& gp = ctx.gp;
  const double h = ctx.accuracy.threshold;
  const double beta = ctx.beta_sqrt;
  const std::size_t n = gp.size();

  switch (config.strategy) {
    case Strategy::US: {
      auto v = gp.variances();
      return {v.begin(), v.end()};
    }
    case Strategy::StraddleF: {
      std::vector<double> out(n);
      for (std::size_t p = 0; p < n; ++p) {
        const Interval q = f_interval(gp, p, beta);
        out[p] = std::min(q.upper - h, h - q.lower);
      }
      return out;
    }
    case Strategy::MILE: {
      // Plain level-set baseline: every grid pair, no accuracy margin.
      const auto everything = all_design_points(gp.design_size());
      const double count = classified_count(gp, everything, h, 0.0, beta);
      return score_candidates(
          n, exec, [&] { return ColumnWorker{&gp, {}}; },
          [&](ColumnWorker& cw, std::size_t c) {
            const double mile = mile_gain(gp, cw.column(c), everything, c, h, beta) - count;
            return std::max(mile, config.gamma_tilde * gp.stddev(c));
          });
    }
    case Strategy::Proposed1:
      return score_candidates(
          n, exec, [&] { return LookaheadEvaluator(gp, ctx.set, ctx.lookahead(), config.path); },
          [&](LookaheadEvaluator& ev, std::size_t c) {
            ev.prepare(c, mix_seed(sample_seed, c));
            const double a = sum_expectations(ev, ctx.state.unclassified);
            return std::max(a, config.gamma * gp.stddev(c));
          });
    case Strategy::Proposed2: {
      const auto& u = ctx.state.unclassified;
      const double count = classified_count(gp, u, h, ctx.accuracy.eta, beta);
      return score_candidates(
          n, exec, [&] { return LookaheadEvaluator(gp, ctx.set, ctx.lookahead(), config.path); },
          [&](LookaheadEvaluator& ev, std::size_t c) {
            ev.prepare(c, mix_seed(sample_seed, c));
            const double a = sum_expectations(ev, u);
            const double mile = mile_gain(gp, ev.column(), u, c, h, beta) - count;
            const double rmile = std::max(mile, config.gamma_tilde * gp.stddev(c));
            return std::max(a, config.gamma * rmile);
          });
    }
    case Strategy::Random:
    case Strategy::StraddleUS:
    case Strategy::StraddleRandom:
      break;
  }
  throw std::invalid_argument("acquisition_scores: strategy has no per-candidate score");
}

std::size_t argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax over an empty set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t select_next(const AcquisitionContext& ctx, const AcquisitionConfig& config, Rng& rng,
                        Execution exec) {
  const GpPosterior& gp = ctx.gp;
  if (gp.size() == 0) throw std::invalid_argument("select_next: empty domain");
  const std::size_t m = gp.env_size();

  switch (config.strategy) {
    case Strategy::Random:
      return rng.index(gp.size());
    case Strategy::StraddleUS:
    case Strategy::StraddleRandom: {
      const auto& st = ctx.state;
      std::vector<double> straddle(st.lower.size());
      for (std::size_t x = 0; x < straddle.size(); ++x) {
        straddle[x] = std::min(st.upper[x] - ctx.accuracy.alpha, ctx.accuracy.alpha - st.lower[x]);
      }
      const std::size_t x = argmax_lowest(straddle);
      if (config.strategy == Strategy::StraddleRandom) return x * m + rng.index(m);
      return x * m + argmax_lowest(gp.variances().subspan(x * m, m));
    }
    default:
      break;
  }
  const std::uint64_t seed =
      config.path.kind == ComputationPath::Kind::Naive ? rng.next() : std::uint64_t{0};
  return argmax_lowest(acquisition_scores(ctx, config, exec, seed));
}

}  // namespace drlse
