#include "drlse/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace drlse {

Metric parse_metric(std::string_view name) {
  if (name == "l1" || name == "L1") return Metric::L1;
  if (name == "l2" || name == "L2") return Metric::L2;
  throw std::invalid_argument("unknown metric: " + std::string(name));
}

std::string_view to_string(Metric m) { return m == Metric::L1 ? "l1" : "l2"; }

ReferenceDistribution::ReferenceDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("ReferenceDistribution: empty pmf");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::invalid_argument("ReferenceDistribution: negative or NaN mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ReferenceDistribution: masses must sum to 1");
  }
}

AmbiguitySet::AmbiguitySet(Metric metric, double radius, ReferenceDistribution reference)
    : metric_(metric), radius_(radius), reference_(std::move(reference)) {
  if (!(radius_ > 0.0)) throw std::invalid_argument("AmbiguitySet: radius must be > 0");
}

double nominal_mass(std::span<const std::uint8_t> costs, std::span<const double> reference) {
  double m = 0.0;
  for (std::size_t j = 0; j < costs.size(); ++j) {
    if (costs[j]) m += reference[j];
  }
  return m;
}

namespace {

void check_length(const AmbiguitySet& set, std::size_t n) {
  if (n != set.size()) throw std::invalid_argument("worst_case_mass: cost length differs from |Omega|");
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// L1: move radius/2 of mass from the most expensive entries onto the cheapest one.
double l1_general(std::span<const double> costs, std::span<const double> pstar, double radius) {
  const std::size_t n = costs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
  std::vector<double> p(pstar.begin(), pstar.end());
  const std::size_t cheapest = order.front();
  double budget = std::min(radius / 2.0, 1.0 - p[cheapest]);
  p[cheapest] += budget;
  for (std::size_t i = n; i-- > 1 && budget > 0.0;) {
    const std::size_t k = order[i];
    const double moved = std::min(budget, p[k]);
    p[k] -= moved;
    budget -= moved;
  }
  return dot(costs, p);
}

// L2: the minimizer lies on the path p(t) = Proj_simplex(p* - t c). Its distance
// to p* is nondecreasing in t, so bisect for the largest t still inside the ball.
double l2_general(std::span<const double> costs, std::span<const double> pstar, double radius) {
  const std::size_t n = costs.size();
  const double cmin = *std::min_element(costs.begin(), costs.end());
  std::vector<double> shifted(n), p(n);

  auto point_at = [&](double t) {
    for (std::size_t i = 0; i < n; ++i) shifted[i] = pstar[i] - t * costs[i];
    project_to_simplex(shifted, p);
  };
  auto at_cheapest_face = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] > 0.0 && costs[i] > cmin) return false;
    }
    return true;
  };

  double lo = 0.0;
  double hi = 1.0;
  for (int doubling = 0;; ++doubling) {
    point_at(hi);
    if (l2_distance(p, pstar) > radius) break;
    // Beyond this t the path only redistributes mass among minimal-cost entries.
    if (at_cheapest_face() || doubling == 200) return std::min(dot(costs, p), dot(costs, pstar));
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    point_at(mid);
    if (l2_distance(p, pstar) <= radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  point_at(lo);
  return std::min(dot(costs, p), dot(costs, pstar));
}

}  // namespace

void project_to_simplex(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  std::vector<double> sorted(in.begin(), in.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(in[i] - tau, 0.0);
}

double worst_case_mass(const AmbiguitySet& set, std::span<const std::uint8_t> costs) {
  check_length(set, costs.size());
  bool all_ones = true;
  bool all_zeros = true;
  for (std::uint8_t c : costs) {
    if (c > 1) throw std::invalid_argument("worst_case_mass: costs must be 0 or 1");
    all_ones = all_ones && c == 1;
    all_zeros = all_zeros && c == 0;
  }
  if (all_ones) return 1.0;
  if (all_zeros) return 0.0;

  if (set.metric() == Metric::L1) {
    return std::max(0.0, nominal_mass(costs, set.reference().probs()) - set.radius() / 2.0);
  }
  std::vector<double> real(costs.begin(), costs.end());
  return l2_general(real, set.reference().probs(), set.radius());
}

double worst_case_mass_general(const AmbiguitySet& set, std::span<const double> costs) {
  check_length(set, costs.size());
  bool binary = true;
  for (double c : costs) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("worst_case_mass: costs must lie in [0, 1]");
    binary = binary && (c == 0.0 || c == 1.0);
  }
  if (binary) {
    std::vector<std::uint8_t> bits(costs.size());
    std::transform(costs.begin(), costs.end(), bits.begin(),
                   [](double c) { return static_cast<std::uint8_t>(c == 1.0); });
    return worst_case_mass(set, bits);
  }
  if (std::all_of(costs.begin(), costs.end(), [&](double c) { return c == costs.front(); })) {
    return costs.front();
  }
  if (set.metric() == Metric::L1) return l1_general(costs, set.reference().probs(), set.radius());
  return l2_general(costs, set.reference().probs(), set.radius());
}

}  // namespace drlse
