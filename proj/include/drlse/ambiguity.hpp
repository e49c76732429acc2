#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace drlse {

enum class Metric { L1, L2 };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric m);

/// Reference pmf p* over the environment points.
class ReferenceDistribution {
 public:
  explicit ReferenceDistribution(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Closed ball { p in simplex : d(p, p*) <= radius }.
class AmbiguitySet {
 public:
  AmbiguitySet(Metric metric, double radius, ReferenceDistribution reference);

  Metric metric() const { return metric_; }
  double radius() const { return radius_; }
  const ReferenceDistribution& reference() const { return reference_; }
  std::size_t size() const { return reference_.size(); }

 private:
  Metric metric_;
  double radius_;
  ReferenceDistribution reference_;
};

/// sum_j costs[j] * p*[j] over the entries with cost 1. This is the nominal
/// mass; it also upper-bounds the worst case since p* is feasible.
double nominal_mass(std::span<const std::uint8_t> costs, std::span<const double> reference);

/// min over the ambiguity set of sum_j costs[j] p[j] for costs in {0, 1}.
double worst_case_mass(const AmbiguitySet& set, std::span<const std::uint8_t> costs);

/// Same program with real costs in [0, 1].
double worst_case_mass_general(const AmbiguitySet& set, std::span<const double> costs);

/// Euclidean projection onto the probability simplex (sort-based).
void project_to_simplex(std::span<const double> in, std::span<double> out);

}  // namespace drlse
