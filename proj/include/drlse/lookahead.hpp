#pragma once

// Expected classification gain of a single hypothetical observation.
//
// For a target design point x and a candidate (x*, w*), every lookahead lower
// bound l_t(x, w_j | x*, w*, y*) is affine in y*, so the indicator vector
// (1[l_t(x, w_j | ...) > h])_j is piecewise constant in y* with at most |Omega|
// breakpoints. The expectation of 1[l^F(x; 0 | x*, w*, y*) > alpha] under the
// predictive law y* ~ N(mu_t(x*, w*), sigma_t^2(x*, w*) + sigma^2) is then a
// finite sum over the |Omega| + 1 regions between breakpoints, one
// worst-case-mass evaluation per region.
//
// Internally lines are kept in standardized units z = (y* - mu) / s, where the
// region masses are plain normal-CDF differences.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "drlse/ambiguity.hpp"
#include "drlse/gp.hpp"

namespace drlse {

struct LookaheadParams {
  double threshold = 0.0;  ///< h
  double alpha = 0.5;
  double beta_sqrt = 0.0;
};

/// How the expectation is evaluated.
///   Naive        Monte-Carlo average over `samples` draws of y*.
///   Exact        one worst-case-mass evaluation per region.
///   ExactPruned  Exact, skipping regions whose nominal mass is already <= alpha.
///   Approx       ExactPruned restricted to regions of mass >= zeta_per_region.
struct ComputationPath {
  enum class Kind { Naive, Exact, ExactPruned, Approx };

  Kind kind = Kind::Approx;
  std::size_t samples = 1000;
  double zeta_per_region = 0.005;

  static ComputationPath naive(std::size_t samples) { return {Kind::Naive, samples, 0.0}; }
  static ComputationPath exact() { return {Kind::Exact, 0, 0.0}; }
  static ComputationPath exact_pruned() { return {Kind::ExactPruned, 0, 0.0}; }
  static ComputationPath approx(double zeta_per_region) {
    return {Kind::Approx, 0, zeta_per_region};
  }

  void validate() const;
};

ComputationPath::Kind parse_path_kind(std::string_view name);
std::string_view to_string(ComputationPath::Kind kind);

/// (lower, upper] interval of y* with a point strictly inside it.
struct Region {
  double lower;
  double upper;
  double representative;
};

struct RegionPartition {
  std::vector<double> breakpoints;  ///< finite breakpoints, ascending
  std::vector<Region> regions;      ///< breakpoints.size() + 1 regions
  /// Indicator vector 1[l_t(x, w_j | ., y*) > h] valid throughout each region.
  std::vector<std::vector<std::uint8_t>> costs;
};

/// Splits the y* axis at the finite breakpoints of `lines`. Unbounded regions
/// get representative endpoint -/+ predictive_sd; constant lines contribute the
/// same indicator to every region.
RegionPartition region_partition(std::span<const LookaheadLine> lines, double predictive_sd);

/// True when the region's nominal mass is <= alpha; its indicator is then 0.
bool prune_region(std::span<const std::uint8_t> costs, std::span<const double> reference,
                  double alpha);

/// Standardized tail cutoff: regions lying beyond +-z have mass < zeta.
double tail_cutoff(double zeta_per_region);

/// Per-thread evaluator for E[1[l^F(x; 0 | candidate, y*) > alpha]].
///
/// `prepare` binds a candidate; `expectation` then evaluates any target design
/// point against it. Holds scratch buffers, so one instance per thread.
class LookaheadEvaluator {
 public:
  LookaheadEvaluator(const GpPosterior& gp, const AmbiguitySet& set, LookaheadParams params,
                     ComputationPath path);

  /// Binds a candidate joint index. For the Naive path `sample_seed` fixes the
  /// draws of y*, shared by every target of this candidate.
  void prepare(std::size_t candidate, std::uint64_t sample_seed = 0);

  double expectation(std::size_t target_x);

  /// Standardized line l = a + b z for environment index w of the last target.
  double line_intercept(std::size_t w) const { return a_[w]; }
  double line_slope(std::size_t w) const { return b_[w]; }
  double predictive_sd() const { return predictive_sd_; }
  std::span<const double> column() const { return column_; }

 private:
  void compute_lines(std::size_t target_x);
  double exact(bool prune);
  double approx();
  double naive();
  bool region_indicator();

  const GpPosterior& gp_;
  const AmbiguitySet& set_;
  LookaheadParams params_;
  ComputationPath path_;
  double z_cut_ = 0.0;

  std::size_t candidate_ = 0;
  double predictive_sd_ = 0.0;
  std::span<const double> column_;
  std::vector<double> column_storage_;
  std::vector<double> samples_;

  std::vector<double> a_, b_, z_;
  std::vector<std::uint8_t> base_;  // indicator of constant lines, or tail-resolved lines
  std::vector<std::size_t> order_;
  std::vector<std::uint8_t> costs_;
};

double exact_expectation(const GpPosterior& gp, std::size_t target_x, std::size_t candidate,
                         const AmbiguitySet& set, const LookaheadParams& params);

double pruned_expectation(const GpPosterior& gp, std::size_t target_x, std::size_t candidate,
                          const AmbiguitySet& set, const LookaheadParams& params);

double approx_expectation(const GpPosterior& gp, std::size_t target_x, std::size_t candidate,
                          const AmbiguitySet& set, const LookaheadParams& params,
                          double zeta_per_region);

}  // namespace drlse
