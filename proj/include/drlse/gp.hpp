#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace drlse {

using Point = std::vector<double>;

/// Finite product grid X x Omega. Joint index of (x, w) is x * |Omega| + w.
class GridDomain {
 public:
  GridDomain(std::vector<Point> design_points, std::vector<Point> env_points);

  /// Scalar design and environment axes cut uniformly, endpoints included.
  static GridDomain uniform_2d(double lower1, double upper1, std::size_t n1,
                               double lower2, double upper2, std::size_t n2);

  std::size_t design_size() const { return design_.size(); }
  std::size_t env_size() const { return env_.size(); }
  std::size_t size() const { return design_.size() * env_.size(); }

  std::size_t joint(std::size_t x, std::size_t w) const { return x * env_.size() + w; }
  std::size_t design_of(std::size_t joint) const { return joint / env_.size(); }
  std::size_t env_of(std::size_t joint) const { return joint % env_.size(); }

  const Point& design_point(std::size_t x) const { return design_[x]; }
  const Point& env_point(std::size_t w) const { return env_[w]; }
  const std::vector<Point>& design_points() const { return design_; }
  const std::vector<Point>& env_points() const { return env_; }

  /// Squared Euclidean distance between two joint points in the concatenated (x, w) space.
  double squared_distance(std::size_t a, std::size_t b) const;

 private:
  std::vector<Point> design_;
  std::vector<Point> env_;
};

/// Gaussian kernel sigma_f^2 exp(-d^2 / L) with additive observation noise sigma^2.
struct KernelSpec {
  double signal_variance = 1.0;
  double length_scale = 1.0;
  double noise_variance = 1.0;

  void validate() const;
  double operator()(double squared_distance) const;
};

struct Observation {
  std::size_t index;  ///< joint grid index
  double y;
};

using ObservationLog = std::vector<Observation>;

/// Raised when the noisy Gram matrix cannot be factorized.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitOptions {
  /// Materialize the full posterior covariance over the grid. Required for
  /// fast lookahead queries; without it covariances are computed per call.
  bool full_covariance = true;
};

/// Variance values in [-tol, 0) are treated as round-off and clamped to 0.
inline constexpr double kVarianceTolerance = 1e-9;

/// Affine dependence of a lookahead lower confidence bound on the
/// hypothetical observation y*:  l(y*) = intercept + slope * y*.
struct LookaheadLine {
  enum class Orientation { Above, Below, Constant };

  double intercept = 0.0;
  double slope = 0.0;
  /// y* solving l(y*) = h; +-infinity for constant lines.
  double breakpoint = 0.0;
  /// Above: indicator l(y*) > h holds for y* above the breakpoint.
  Orientation orientation = Orientation::Constant;

  double operator()(double y) const { return intercept + slope * y; }
};

/// Posterior of f over every grid point after conditioning on a log.
/// Immutable once built; safe for concurrent readers.
class GpPosterior {
 public:
  std::size_t size() const { return static_cast<std::size_t>(mean_.size()); }
  std::size_t design_size() const { return design_size_; }
  std::size_t env_size() const { return env_size_; }
  std::size_t observation_count() const { return observation_count_; }
  double noise_variance() const { return kernel_.noise_variance; }
  const KernelSpec& kernel() const { return kernel_; }

  double mean(std::size_t j) const { return mean_[j]; }
  double variance(std::size_t j) const { return variance_[j]; }
  double stddev(std::size_t j) const;
  std::span<const double> means() const { return {mean_.data(), size()}; }
  std::span<const double> variances() const { return {variance_.data(), size()}; }

  /// Posterior covariance k_t(a, b).
  double covariance(std::size_t a, std::size_t b) const;

  bool has_full_covariance() const { return static_cast<bool>(covariance_); }

  /// k_t(., b) over the whole grid. Only available with full covariance.
  std::span<const double> covariance_column(std::size_t b) const;

  /// Writes k_t(., b) into out (length size()), with or without full covariance.
  void covariance_column(std::size_t b, std::span<double> out) const;

  /// sigma_t^2(target | candidate): variance after adding one noisy
  /// observation at candidate. Does not depend on the observed value.
  double lookahead_variance(std::size_t target, std::size_t candidate) const;

  /// Lower confidence bound of target after a hypothetical observation y* at
  /// candidate, as an affine function of y*.
  LookaheadLine lookahead_line(std::size_t target, std::size_t candidate, double beta_sqrt,
                               double threshold) const;

 private:
  friend class GpModel;

  std::shared_ptr<const GridDomain> domain_;
  KernelSpec kernel_;
  std::size_t design_size_ = 0;
  std::size_t env_size_ = 0;
  std::size_t observation_count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::VectorXd variance_;
  /// L^{-1} K(observed, grid), n x N.
  Eigen::MatrixXd whitened_cross_;
  std::shared_ptr<const Eigen::MatrixXd> covariance_;
};

/// Zero-mean GP prior over a fixed grid. Caches the prior grid covariance so
/// repeated refits only pay for the data-dependent part.
class GpModel {
 public:
  GpModel(GridDomain domain, KernelSpec kernel);

  const GridDomain& domain() const { return *domain_; }
  const KernelSpec& kernel() const { return kernel_; }

  GpPosterior fit(const ObservationLog& log, FitOptions options = {}) const;

 private:
  std::shared_ptr<const GridDomain> domain_;
  KernelSpec kernel_;
  std::shared_ptr<const Eigen::MatrixXd> prior_;
};

GpPosterior fit(const GridDomain& domain, const KernelSpec& kernel, const ObservationLog& log,
                FitOptions options = {});

}  // namespace drlse
