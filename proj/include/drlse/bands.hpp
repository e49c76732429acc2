#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "drlse/ambiguity.hpp"
#include "drlse/gp.hpp"

namespace drlse {

/// Confidence scale sqrt(beta_t): either a constant or the uniform-bound
/// schedule beta_t = 2 log(|X x Omega| pi^2 t^2 / (3 delta)).
class BetaSchedule {
 public:
  static BetaSchedule fixed(double beta_sqrt);
  static BetaSchedule theoretical(double delta);

  bool is_fixed() const { return fixed_; }
  double value() const { return value_; }

  /// t counts completed observations; t = 0 is evaluated as t = 1.
  double beta_sqrt(std::size_t t, std::size_t grid_size) const;

 private:
  BetaSchedule(bool fixed, double value) : fixed_(fixed), value_(value) {}
  bool fixed_;
  double value_;  // beta_sqrt when fixed, delta otherwise
};

struct AccuracyParams {
  double threshold = 0.0;  ///< h
  double alpha = 0.5;
  double eta = 0.0;
  BetaSchedule beta = BetaSchedule::fixed(2.0);

  void validate() const;
};

/// Accuracy margin that makes the misclassification loss at most xi with
/// probability 1 - delta: min(xi s/2, xi^2 delta s / (8 |X x Omega|)), s = sigma_{0,min}.
double eta_for_tolerance(double xi, double delta, std::size_t grid_size, double sigma0_min);

enum class IndicatorBand : std::uint8_t { Zero, Unknown, Unit };

struct Interval {
  double lower;
  double upper;
};

/// [mu - beta_sqrt sigma, mu + beta_sqrt sigma].
Interval f_interval(const GpPosterior& gp, std::size_t point, double beta_sqrt);

IndicatorBand indicator_band(double lower, double upper, double threshold, double eta);

inline IndicatorBand indicator_band(Interval q, const AccuracyParams& params) {
  return indicator_band(q.lower, q.upper, params.threshold, params.eta);
}

/// Worst-case masses of the lower (Unit) and upper (Unit or Unknown) indicator bounds.
Interval drptr_bounds(std::span<const IndicatorBand> bands, const AmbiguitySet& set);

struct ClassificationState {
  enum class Label : std::uint8_t { High, Low, Unclassified };

  std::vector<double> lower;  ///< l^F per design point
  std::vector<double> upper;  ///< u^F per design point
  std::vector<Label> labels;
  std::vector<std::size_t> high;
  std::vector<std::size_t> low;
  std::vector<std::size_t> unclassified;
};

/// High iff lower > alpha, Low iff upper <= alpha, otherwise Unclassified.
ClassificationState classify(std::vector<double> lower, std::vector<double> upper, double alpha);

/// Bands, DRPTR bounds and classification for every design point of a posterior.
ClassificationState classify_posterior(const GpPosterior& gp, const AmbiguitySet& set,
                                       const AccuracyParams& params, double beta_sqrt);

}  // namespace drlse
