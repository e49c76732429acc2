#include "drlse/lookahead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "drlse/normal.hpp"
#include "drlse/rng.hpp"

namespace drlse {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void ComputationPath::validate() const {
  if (kind == Kind::Naive && samples < 1) throw std::invalid_argument("naive path needs samples >= 1");
  if (kind == Kind::Approx && !(zeta_per_region >= 0.0 && zeta_per_region < 1.0)) {
    throw std::invalid_argument("zeta_per_region must lie in [0, 1)");
  }
}

ComputationPath::Kind parse_path_kind(std::string_view name) {
  if (name == "naive") return ComputationPath::Kind::Naive;
  if (name == "exact") return ComputationPath::Kind::Exact;
  if (name == "exact-pruned") return ComputationPath::Kind::ExactPruned;
  if (name == "approx") return ComputationPath::Kind::Approx;
  throw std::invalid_argument("unknown computation path: " + std::string(name));
}

std::string_view to_string(ComputationPath::Kind kind) {
  switch (kind) {
    case ComputationPath::Kind::Naive: return "naive";
    case ComputationPath::Kind::Exact: return "exact";
    case ComputationPath::Kind::ExactPruned: return "exact-pruned";
    case ComputationPath::Kind::Approx: return "approx";
  }
  return "?";
}

RegionPartition region_partition(std::span<const LookaheadLine> lines, double predictive_sd) {
  RegionPartition part;
  const std::size_t m = lines.size();
  std::vector<std::size_t> finite;
  for (std::size_t j = 0; j < m; ++j) {
    if (lines[j].orientation != LookaheadLine::Orientation::Constant) finite.push_back(j);
  }
  std::stable_sort(finite.begin(), finite.end(), [&](std::size_t a, std::size_t b) {
    return lines[a].breakpoint < lines[b].breakpoint;
  });
  for (std::size_t j : finite) part.breakpoints.push_back(lines[j].breakpoint);

  const std::size_t k = finite.size();
  for (std::size_t s = 0; s <= k; ++s) {
    Region r;
    r.lower = s == 0 ? -kInf : part.breakpoints[s - 1];
    r.upper = s == k ? kInf : part.breakpoints[s];
    if (k == 0) {
      r.representative = 0.0;
    } else if (s == 0) {
      r.representative = r.upper - predictive_sd;
    } else if (s == k) {
      r.representative = r.lower + predictive_sd;
    } else {
      r.representative = 0.5 * (r.lower + r.upper);
    }
    part.regions.push_back(r);

    std::vector<std::uint8_t> c(m);
    for (std::size_t j = 0; j < m; ++j) {
      // Constant lines store -inf (always on) or +inf (always off) as breakpoint.
      c[j] = lines[j].breakpoint == -kInf;
    }
    for (std::size_t q = 0; q < k; ++q) {
      const std::size_t j = finite[q];
      const bool region_above = q < s;
      c[j] = (lines[j].orientation == LookaheadLine::Orientation::Above) == region_above;
    }
    part.costs.push_back(std::move(c));
  }
  return part;
}

bool prune_region(std::span<const std::uint8_t> costs, std::span<const double> reference,
                  double alpha) {
  return nominal_mass(costs, reference) <= alpha;
}

double tail_cutoff(double zeta_per_region) {
  if (zeta_per_region <= 0.0) return kInf;
  // Smallest z (to bisection precision) with Phi(-z) <= zeta / 2.
  const double target = 0.5 * zeta_per_region;
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(-mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

LookaheadEvaluator::LookaheadEvaluator(const GpPosterior& gp, const AmbiguitySet& set,
                                       LookaheadParams params, ComputationPath path)
    : gp_(gp), set_(set), params_(params), path_(path) {
  path_.validate();
  if (set.size() != gp.env_size()) throw std::invalid_argument("LookaheadEvaluator: |Omega| mismatch");
  const std::size_t m = gp.env_size();
  a_.resize(m);
  b_.resize(m);
  z_.resize(m);
  base_.resize(m);
  order_.resize(m);
  costs_.resize(m);
  if (path_.kind == ComputationPath::Kind::Approx) z_cut_ = tail_cutoff(path_.zeta_per_region);
  if (path_.kind == ComputationPath::Kind::Naive) samples_.resize(path_.samples);
  if (!gp.has_full_covariance()) column_storage_.resize(gp.size());
}

void LookaheadEvaluator::prepare(std::size_t candidate, std::uint64_t sample_seed) {
  if (candidate >= gp_.size()) throw std::out_of_range("LookaheadEvaluator: candidate outside grid");
  candidate_ = candidate;
  predictive_sd_ = std::sqrt(gp_.variance(candidate) + gp_.noise_variance());
  if (gp_.has_full_covariance()) {
    column_ = gp_.covariance_column(candidate);
  } else {
    gp_.covariance_column(candidate, column_storage_);
    column_ = column_storage_;
  }
  if (path_.kind == ComputationPath::Kind::Naive) {
    Rng rng(sample_seed);
    for (double& z : samples_) z = rng.normal();
  }
}

void LookaheadEvaluator::compute_lines(std::size_t target_x) {
  const std::size_t m = gp_.env_size();
  const std::size_t offset = target_x * m;
  const double s2 = predictive_sd_ * predictive_sd_;
  const double inv_s = 1.0 / predictive_sd_;
  const double beta = params_.beta_sqrt;
  const double* mu = gp_.means().data() + offset;
  const double* var = gp_.variances().data() + offset;
  const double* k = column_.data() + offset;
  for (std::size_t w = 0; w < m; ++w) {
    const double v = std::max(0.0, var[w] - k[w] * k[w] / s2);
    a_[w] = mu[w] - beta * std::sqrt(v);
    b_[w] = k[w] * inv_s;
  }
}

bool LookaheadEvaluator::region_indicator() {
  return worst_case_mass(set_, costs_) > params_.alpha;
}

double LookaheadEvaluator::expectation(std::size_t target_x) {
  if (target_x >= gp_.design_size()) throw std::out_of_range("expectation: target outside X");
  compute_lines(target_x);
  switch (path_.kind) {
    case ComputationPath::Kind::Naive: return naive();
    case ComputationPath::Kind::Exact: return exact(false);
    case ComputationPath::Kind::ExactPruned: return exact(true);
    case ComputationPath::Kind::Approx: return approx();
  }
  return 0.0;
}

double LookaheadEvaluator::exact(bool prune) {
  const std::size_t m = gp_.env_size();
  const double h = params_.threshold;
  const auto reference = set_.reference().probs();
  std::size_t k = 0;
  for (std::size_t w = 0; w < m; ++w) {
    const double z = (h - a_[w]) / b_[w];
    if (b_[w] != 0.0 && std::isfinite(z)) {
      z_[w] = z;
      order_[k++] = w;
      base_[w] = 0;
    } else {
      base_[w] = a_[w] > h;
    }
  }
  std::sort(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k),
            [&](std::size_t p, std::size_t q) { return z_[p] < z_[q] || (z_[p] == z_[q] && p < q); });

  double total = 0.0;
  for (std::size_t s = 0; s <= k; ++s) {
    const double lo = s == 0 ? -kInf : z_[order_[s - 1]];
    const double hi = s == k ? kInf : z_[order_[s]];
    if (!(hi > lo)) continue;  // collapsed by duplicate breakpoints
    const double mass = normal_interval_mass(lo, hi);
    for (std::size_t w = 0; w < m; ++w) costs_[w] = base_[w];
    for (std::size_t q = 0; q < k; ++q) {
      const std::size_t w = order_[q];
      costs_[w] = (b_[w] > 0.0) == (q < s);
    }
    if (prune && prune_region(costs_, reference, params_.alpha)) continue;
    if (region_indicator()) total += mass;
  }
  return total;
}

double LookaheadEvaluator::approx() {
  const std::size_t m = gp_.env_size();
  const double h = params_.threshold;
  const double cutoff = path_.zeta_per_region;
  const auto reference = set_.reference().probs();

  // Breakpoints beyond +-z_cut bound regions of mass < cutoff; those regions
  // are dropped without evaluating their mass, and the lines themselves take a
  // fixed value across every surviving region.
  double lo_edge = -kInf;
  double hi_edge = kInf;
  std::size_t k = 0;
  for (std::size_t w = 0; w < m; ++w) {
    const double z = (h - a_[w]) / b_[w];
    if (b_[w] == 0.0 || !std::isfinite(z)) {
      base_[w] = a_[w] > h;
    } else if (z < -z_cut_) {
      base_[w] = b_[w] > 0.0;
      lo_edge = std::max(lo_edge, z);
    } else if (z > z_cut_) {
      base_[w] = b_[w] < 0.0;
      hi_edge = std::min(hi_edge, z);
    } else {
      z_[w] = z;
      order_[k++] = w;
    }
  }
  std::sort(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k),
            [&](std::size_t p, std::size_t q) { return z_[p] < z_[q] || (z_[p] == z_[q] && p < q); });

  double total = 0.0;
  for (std::size_t s = 0; s <= k; ++s) {
    const double lo = s == 0 ? lo_edge : z_[order_[s - 1]];
    const double hi = s == k ? hi_edge : z_[order_[s]];
    if (!(hi > lo)) continue;
    const double mass = normal_interval_mass(lo, hi);
    if (mass < cutoff) continue;
    for (std::size_t w = 0; w < m; ++w) costs_[w] = base_[w];
    for (std::size_t q = 0; q < k; ++q) {
      const std::size_t w = order_[q];
      costs_[w] = (b_[w] > 0.0) == (q < s);
    }
    if (prune_region(costs_, reference, params_.alpha)) continue;
    if (region_indicator()) total += mass;
  }
  return total;
}

double LookaheadEvaluator::naive() {
  const std::size_t m = gp_.env_size();
  const double h = params_.threshold;
  std::size_t hits = 0;
  for (double z : samples_) {
    for (std::size_t w = 0; w < m; ++w) costs_[w] = a_[w] + b_[w] * z > h;
    if (worst_case_mass(set_, costs_) > params_.alpha) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples_.size());
}

namespace {
double evaluate_one(const GpPosterior& gp, std::size_t target_x, std::size_t candidate,
                    const AmbiguitySet& set, const LookaheadParams& params, ComputationPath path) {
  LookaheadEvaluator ev(gp, set, params, path);
  ev.prepare(candidate);
  return ev.expectation(target_x);
}
}  // namespace

double exact_expectation(const GpPosterior& gp, std::size_t target_x, std::size_t candidate,
                         const AmbiguitySet& set, const LookaheadParams& params) {
  return evaluate_one(gp, target_x, candidate, set, params, ComputationPath::exact());
}

double pruned_expectation(const GpPosterior& gp, std::size_t target_x, std::size_t candidate,
                          const AmbiguitySet& set, const LookaheadParams& params) {
  return evaluate_one(gp, target_x, candidate, set, params, ComputationPath::exact_pruned());
}

double approx_expectation(const GpPosterior& gp, std::size_t target_x, std::size_t candidate,
                          const AmbiguitySet& set, const LookaheadParams& params,
                          double zeta_per_region) {
  return evaluate_one(gp, target_x, candidate, set, params, ComputationPath::approx(zeta_per_region));
}

}  // namespace drlse
