#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "drlse/ambiguity.hpp"
#include "drlse/bands.hpp"
#include "drlse/gp.hpp"
#include "drlse/lookahead.hpp"
#include "drlse/rng.hpp"

namespace drlse {

enum class Strategy {
  Random,
  US,
  StraddleF,
  StraddleUS,
  StraddleRandom,
  MILE,
  Proposed1,
  Proposed2,
};

Strategy parse_strategy(std::string_view name);
std::string_view to_string(Strategy s);

struct AcquisitionConfig {
  Strategy strategy = Strategy::Proposed2;
  double gamma = 0.01;        ///< weight of the fallback term in max(a_t, gamma b_t)
  double gamma_tilde = 0.001; ///< variance floor inside RMILE
  ComputationPath path = ComputationPath::approx(0.005);

  void validate() const;
};

/// Candidate scoring runs either as a plain loop (the reference) or as an
/// OpenMP loop over candidates. Both produce bit-identical scores.
enum class Execution { Serial, Parallel };

/// Read-only view of one iteration's state.
struct AcquisitionContext {
  const GpPosterior& gp;
  const AmbiguitySet& set;
  const ClassificationState& state;
  AccuracyParams accuracy;
  double beta_sqrt;

  LookaheadParams lookahead() const { return {accuracy.threshold, accuracy.alpha, beta_sqrt}; }
};

/// a_t(candidate): sum over unclassified x of the lookahead expectation.
double a_t(const AcquisitionContext& ctx, std::size_t candidate, ComputationPath path,
           std::uint64_t sample_seed = 0);

/// a_t for every grid point. For the Naive path, candidate c draws its samples
/// from mix_seed(sample_seed, c).
std::vector<double> a_t_scores(const AcquisitionContext& ctx, ComputationPath path,
                               Execution exec = Execution::Parallel, std::uint64_t sample_seed = 0);

/// MILE_t(candidate) over the pairs design_set x Omega:
///   sum P(l_t(x, w | candidate, y*) > h) - |{(x, w) : l_t(x, w) > h - eta}|.
double mile_score(const GpPosterior& gp, std::span<const std::size_t> design_set,
                  std::size_t candidate, double threshold, double eta, double beta_sqrt);

/// max(MILE_t, gamma_tilde sigma_t(candidate)).
double rmile_score(const GpPosterior& gp, std::span<const std::size_t> design_set,
                   std::size_t candidate, double threshold, double eta, double beta_sqrt,
                   double gamma_tilde);

/// Acquisition values for the score-based strategies (US, StraddleF, MILE,
/// Proposed1, Proposed2). Random and the two-stage straddle rules have no
/// per-candidate score and are rejected.
std::vector<double> acquisition_scores(const AcquisitionContext& ctx,
                                       const AcquisitionConfig& config,
                                       Execution exec = Execution::Parallel,
                                       std::uint64_t sample_seed = 0);

/// Index of the largest value; ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);

/// Next joint index to evaluate. `rng` is consumed only by the randomized rules
/// and by the Naive path (one draw for its sample seed).
std::size_t select_next(const AcquisitionContext& ctx, const AcquisitionConfig& config, Rng& rng,
                        Execution exec = Execution::Parallel);

}  // namespace drlse
