#include "drlse/bands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace drlse {

BetaSchedule BetaSchedule::fixed(double beta_sqrt) {
  if (!(beta_sqrt >= 0.0)) throw std::invalid_argument("beta_sqrt must be >= 0");
  return BetaSchedule(true, beta_sqrt);
}

BetaSchedule BetaSchedule::theoretical(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  return BetaSchedule(false, delta);
}

double BetaSchedule::beta_sqrt(std::size_t t, std::size_t grid_size) const {
  if (fixed_) return value_;
  const double tt = static_cast<double>(std::max<std::size_t>(t, 1));
  const double beta = 2.0 * std::log(static_cast<double>(grid_size) * std::numbers::pi *
                                     std::numbers::pi * tt * tt / (3.0 * value_));
  return std::sqrt(std::max(0.0, beta));
}

void AccuracyParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
  if (!std::isfinite(threshold)) throw std::invalid_argument("threshold must be finite");
}

double eta_for_tolerance(double xi, double delta, std::size_t grid_size, double sigma0_min) {
  if (!(xi > 0.0) || !(delta > 0.0 && delta < 1.0) || grid_size == 0 || !(sigma0_min > 0.0)) {
    throw std::invalid_argument("eta_for_tolerance: invalid arguments");
  }
  return std::min(xi * sigma0_min / 2.0,
                  xi * xi * delta * sigma0_min / (8.0 * static_cast<double>(grid_size)));
}

Interval f_interval(const GpPosterior& gp, std::size_t point, double beta_sqrt) {
  const double mu = gp.mean(point);
  const double width = beta_sqrt * gp.stddev(point);
  return {mu - width, mu + width};
}

IndicatorBand indicator_band(double lower, double upper, double threshold, double eta) {
  if (lower > threshold - eta) return IndicatorBand::Unit;
  if (upper > threshold) return IndicatorBand::Unknown;
  return IndicatorBand::Zero;
}

Interval drptr_bounds(std::span<const IndicatorBand> bands, const AmbiguitySet& set) {
  std::vector<std::uint8_t> lower_costs(bands.size());
  std::vector<std::uint8_t> upper_costs(bands.size());
  for (std::size_t j = 0; j < bands.size(); ++j) {
    lower_costs[j] = bands[j] == IndicatorBand::Unit;
    upper_costs[j] = bands[j] != IndicatorBand::Zero;
  }
  return {worst_case_mass(set, lower_costs), worst_case_mass(set, upper_costs)};
}

ClassificationState classify(std::vector<double> lower, std::vector<double> upper, double alpha) {
  if (lower.size() != upper.size()) throw std::invalid_argument("classify: bound lengths differ");
  ClassificationState state;
  state.labels.resize(lower.size());
  for (std::size_t x = 0; x < lower.size(); ++x) {
    if (lower[x] > upper[x]) throw std::invalid_argument("classify: lower bound exceeds upper bound");
    if (lower[x] > alpha) {
      state.labels[x] = ClassificationState::Label::High;
      state.high.push_back(x);
    } else if (upper[x] <= alpha) {
      state.labels[x] = ClassificationState::Label::Low;
      state.low.push_back(x);
    } else {
      state.labels[x] = ClassificationState::Label::Unclassified;
      state.unclassified.push_back(x);
    }
  }
  state.lower = std::move(lower);
  state.upper = std::move(upper);
  return state;
}

ClassificationState classify_posterior(const GpPosterior& gp, const AmbiguitySet& set,
                                       const AccuracyParams& params, double beta_sqrt) {
  const std::size_t nx = gp.design_size();
  const std::size_t nw = gp.env_size();
  if (set.size() != nw) throw std::invalid_argument("classify_posterior: |Omega| mismatch");
  std::vector<double> lower(nx), upper(nx);
  std::vector<IndicatorBand> bands(nw);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t w = 0; w < nw; ++w) {
      bands[w] = indicator_band(f_interval(gp, x * nw + w, beta_sqrt), params);
    }
    const Interval b = drptr_bounds(bands, set);
    lower[x] = b.lower;
    upper[x] = b.upper;
  }
  return classify(std::move(lower), std::move(upper), params.alpha);
}

}  // namespace drlse
