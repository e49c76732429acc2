#pragma once

// Random small GP states shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "drlse/ambiguity.hpp"
#include "drlse/gp.hpp"
#include "drlse/rng.hpp"

namespace testing_support {

inline double uniform(drlse::Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

inline std::size_t between(drlse::Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.index(hi - lo + 1);
}

/// Strictly increasing 1-D points with random gaps.
inline std::vector<drlse::Point> random_axis(drlse::Rng& rng, std::size_t n, double gap_lo, double gap_hi) {
  std::vector<drlse::Point> pts;
  double v = uniform(rng, -1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({v});
    v += uniform(rng, gap_lo, gap_hi);
  }
  return pts;
}

inline drlse::ReferenceDistribution random_reference(drlse::Rng& rng, std::size_t m) {
  std::vector<double> p(m);
  double total = 0.0;
  for (double& v : p) {
    v = uniform(rng, 0.05, 1.0);
    total += v;
  }
  for (double& v : p) v /= total;
  return drlse::ReferenceDistribution(std::move(p));
}

struct Instance {
  drlse::GridDomain domain;
  drlse::KernelSpec kernel;
  drlse::ObservationLog log;
  drlse::GpPosterior gp;
  drlse::AmbiguitySet set;
  double threshold;
  double alpha;
  double beta_sqrt;
};

/// |X| in [2, max_x], |Omega| in [2, max_w], 1..8 noisy observations of a smooth
/// function, h near the median posterior mean so that lookahead lines cross it.
inline Instance random_instance(drlse::Rng& rng, std::size_t max_x, std::size_t max_w,
                                drlse::Metric metric) {
  const std::size_t nx = between(rng, 2, max_x);
  const std::size_t nw = between(rng, 2, max_w);
  drlse::GridDomain domain(random_axis(rng, nx, 0.2, 0.8), random_axis(rng, nw, 0.2, 0.8));
  drlse::KernelSpec kernel{uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 3.0), uniform(rng, 0.01, 0.2)};
  drlse::ObservationLog log;
  const std::size_t n_obs = between(rng, 1, 8);
  const double phase = uniform(rng, 0.0, 6.0);
  for (std::size_t i = 0; i < n_obs; ++i) {
    const std::size_t j = rng.index(domain.size());
    const double x = domain.design_point(domain.design_of(j))[0];
    const double w = domain.env_point(domain.env_of(j))[0];
    log.push_back({j, std::sin(2.0 * x + phase) + 0.5 * std::cos(3.0 * w) + 0.1 * rng.normal()});
  }
  drlse::GpPosterior gp = drlse::fit(domain, kernel, log);
  std::vector<double> means(gp.means().begin(), gp.means().end());
  std::nth_element(means.begin(), means.begin() + static_cast<std::ptrdiff_t>(means.size() / 2), means.end());
  const double threshold = means[means.size() / 2] + uniform(rng, -0.3, 0.3);
  const double radius = metric == drlse::Metric::L1 ? uniform(rng, 0.05, 0.8) : uniform(rng, 0.05, 0.4);
  drlse::AmbiguitySet set(metric, radius, random_reference(rng, nw));
  return Instance{std::move(domain), kernel, std::move(log), std::move(gp), std::move(set),
                  threshold, uniform(rng, 0.2, 0.8), uniform(rng, 0.5, 2.0)};
}

}  // namespace testing_support
