#include "drlse/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>

namespace drlse {

GridDomain::GridDomain(std::vector<Point> design_points, std::vector<Point> env_points)
    : design_(std::move(design_points)), env_(std::move(env_points)) {
  if (design_.empty() || env_.empty()) {
    throw std::invalid_argument("GridDomain: design and environment sets must be nonempty");
  }
  auto check = [](const std::vector<Point>& pts, const char* what) {
    const std::size_t dim = pts.front().size();
    for (const auto& p : pts) {
      if (p.size() != dim) {
        throw std::invalid_argument(std::string("GridDomain: inconsistent ") + what + " dimension");
      }
    }
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument(std::string("GridDomain: duplicate ") + what + " point");
    }
  };
  check(design_, "design");
  check(env_, "environment");
}

namespace {
std::vector<Point> uniform_axis(double lower, double upper, std::size_t n) {
  if (!(lower < upper) || n < 2) {
    throw std::invalid_argument("uniform axis needs lower < upper and at least 2 points");
  }
  std::vector<Point> pts(n);
  const double step = (upper - lower) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) pts[i] = {lower + step * static_cast<double>(i)};
  pts.back() = {upper};
  return pts;
}
}  // namespace

GridDomain GridDomain::uniform_2d(double lower1, double upper1, std::size_t n1, double lower2,
                                  double upper2, std::size_t n2) {
  return GridDomain(uniform_axis(lower1, upper1, n1), uniform_axis(lower2, upper2, n2));
}

double GridDomain::squared_distance(std::size_t a, std::size_t b) const {
  const Point& xa = design_[design_of(a)];
  const Point& xb = design_[design_of(b)];
  const Point& wa = env_[env_of(a)];
  const Point& wb = env_[env_of(b)];
  double d = 0.0;
  for (std::size_t i = 0; i < xa.size(); ++i) d += (xa[i] - xb[i]) * (xa[i] - xb[i]);
  for (std::size_t i = 0; i < wa.size(); ++i) d += (wa[i] - wb[i]) * (wa[i] - wb[i]);
  return d;
}

void KernelSpec::validate() const {
  if (!(signal_variance > 0.0) || !(length_scale > 0.0) || !(noise_variance > 0.0)) {
    throw std::invalid_argument("KernelSpec: signal variance, length scale and noise variance must be > 0");
  }
}

double KernelSpec::operator()(double squared_distance) const {
  return signal_variance * std::exp(-squared_distance / length_scale);
}

namespace {

double clamp_variance(double v) {
  // Anything below -tol is left negative on purpose so callers notice.
  return (v < 0.0 && v >= -kVarianceTolerance) ? 0.0 : v;
}

}  // namespace

double GpPosterior::stddev(std::size_t j) const { return std::sqrt(std::max(0.0, variance_[j])); }

double GpPosterior::covariance(std::size_t a, std::size_t b) const {
  if (covariance_) return (*covariance_)(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  const double prior = kernel_(domain_->squared_distance(a, b));
  if (observation_count_ == 0) return prior;
  return prior - whitened_cross_.col(static_cast<Eigen::Index>(a))
                     .dot(whitened_cross_.col(static_cast<Eigen::Index>(b)));
}

std::span<const double> GpPosterior::covariance_column(std::size_t b) const {
  if (!covariance_) throw std::logic_error("GpPosterior: full covariance was not materialized");
  return {covariance_->col(static_cast<Eigen::Index>(b)).data(), size()};
}

void GpPosterior::covariance_column(std::size_t b, std::span<double> out) const {
  if (out.size() != size()) throw std::invalid_argument("covariance_column: output length mismatch");
  if (covariance_) {
    auto col = covariance_column(b);
    std::copy(col.begin(), col.end(), out.begin());
    return;
  }
  for (std::size_t a = 0; a < size(); ++a) out[a] = covariance(a, b);
}

double GpPosterior::lookahead_variance(std::size_t target, std::size_t candidate) const {
  const double k = covariance(target, candidate);
  const double denom = variance_[candidate] + kernel_.noise_variance;
  return std::max(0.0, variance_[target] - k * k / denom);
}

LookaheadLine GpPosterior::lookahead_line(std::size_t target, std::size_t candidate,
                                          double beta_sqrt, double threshold) const {
  const double k = covariance(target, candidate);
  const double denom = variance_[candidate] + kernel_.noise_variance;
  const double var = std::max(0.0, variance_[target] - k * k / denom);

  LookaheadLine line;
  line.slope = k / denom;
  line.intercept = mean_[target] - line.slope * mean_[candidate] - beta_sqrt * std::sqrt(var);
  const double bp = (threshold - line.intercept) / line.slope;
  if (line.slope != 0.0 && std::isfinite(bp)) {
    line.breakpoint = bp;
    line.orientation =
        line.slope > 0.0 ? LookaheadLine::Orientation::Above : LookaheadLine::Orientation::Below;
  } else {
    line.orientation = LookaheadLine::Orientation::Constant;
    line.breakpoint = line.intercept > threshold ? -std::numeric_limits<double>::infinity()
                                                 : std::numeric_limits<double>::infinity();
  }
  return line;
}

GpModel::GpModel(GridDomain domain, KernelSpec kernel)
    : domain_(std::make_shared<const GridDomain>(std::move(domain))), kernel_(kernel) {
  kernel_.validate();
  const auto n = static_cast<Eigen::Index>(domain_->size());
  auto prior = std::make_shared<Eigen::MatrixXd>(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = b; a < n; ++a) {
      const double v = kernel_(domain_->squared_distance(static_cast<std::size_t>(a),
                                                         static_cast<std::size_t>(b)));
      (*prior)(a, b) = v;
      (*prior)(b, a) = v;
    }
  }
  prior_ = std::move(prior);
}

GpPosterior GpModel::fit(const ObservationLog& log, FitOptions options) const {
  const std::size_t grid = domain_->size();
  for (const auto& obs : log) {
    if (obs.index >= grid) throw std::out_of_range("fit: observation index outside the grid");
  }

  GpPosterior post;
  post.domain_ = domain_;
  post.kernel_ = kernel_;
  post.design_size_ = domain_->design_size();
  post.env_size_ = domain_->env_size();
  post.observation_count_ = log.size();

  const auto N = static_cast<Eigen::Index>(grid);
  const auto n = static_cast<Eigen::Index>(log.size());

  if (n == 0) {
    post.mean_ = Eigen::VectorXd::Zero(N);
    post.variance_ = prior_->diagonal();
    if (options.full_covariance) post.covariance_ = prior_;
    return post;
  }

  Eigen::MatrixXd gram(n, n);
  Eigen::MatrixXd cross(n, N);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto oi = static_cast<Eigen::Index>(log[static_cast<std::size_t>(i)].index);
    y[i] = log[static_cast<std::size_t>(i)].y;
    for (Eigen::Index j = 0; j < n; ++j) {
      gram(i, j) = (*prior_)(oi, static_cast<Eigen::Index>(log[static_cast<std::size_t>(j)].index));
    }
    gram(i, i) += kernel_.noise_variance;
    cross.row(i) = prior_->row(oi);
  }

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "GP fit: Cholesky factorization of K + sigma^2 I failed (n = " << n
        << ", min diagonal = " << gram.diagonal().minCoeff()
        << ", condition bound ~ " << (gram.diagonal().sum() / kernel_.noise_variance) << ")";
    throw NumericalError(msg.str());
  }

  const auto L = llt.matrixL();
  post.whitened_cross_ = L.solve(cross);
  const Eigen::VectorXd white_y = L.solve(y);
  post.mean_ = post.whitened_cross_.transpose() * white_y;
  post.variance_ = prior_->diagonal() - post.whitened_cross_.colwise().squaredNorm().transpose();
  for (Eigen::Index j = 0; j < N; ++j) post.variance_[j] = clamp_variance(post.variance_[j]);

  if (options.full_covariance) {
    auto cov = std::make_shared<Eigen::MatrixXd>(*prior_);
    cov->selfadjointView<Eigen::Lower>().rankUpdate(post.whitened_cross_.transpose(), -1.0);
    cov->triangularView<Eigen::StrictlyUpper>() = cov->transpose();
    for (Eigen::Index j = 0; j < N; ++j) (*cov)(j, j) = post.variance_[j];
    post.covariance_ = std::move(cov);
  }
  return post;
}

GpPosterior fit(const GridDomain& domain, const KernelSpec& kernel, const ObservationLog& log,
                FitOptions options) {
  return GpModel(domain, kernel).fit(log, options);
}

}  // namespace drlse
