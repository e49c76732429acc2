#include "drlse/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace drlse {

namespace {

constexpr std::array kProblems{Problem::Booth, Problem::Matyas, Problem::McCormick,
                               Problem::StyblinskiTang, Problem::Sir};

bool inside(double v, Range r) {
  const double slack = 1e-12 * std::max(1.0, std::abs(r.upper - r.lower));
  return v >= r.lower - slack && v <= r.upper + slack;
}

double styblinski_term(double v) { return (v * v * v * v - 16.0 * v * v + 5.0 * v) / 2.0; }

}  // namespace

Problem parse_problem(std::string_view name) {
  if (name == "booth") return Problem::Booth;
  if (name == "matyas") return Problem::Matyas;
  if (name == "mccormick") return Problem::McCormick;
  if (name == "styblinski-tang") return Problem::StyblinskiTang;
  if (name == "sir") return Problem::Sir;
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::Booth: return "booth";
    case Problem::Matyas: return "matyas";
    case Problem::McCormick: return "mccormick";
    case Problem::StyblinskiTang: return "styblinski-tang";
    case Problem::Sir: return "sir";
  }
  return "?";
}

std::span<const Problem> all_problems() { return kProblems; }

BenchmarkSpec BenchmarkSpec::defaults(Problem p) {
  BenchmarkSpec spec;
  spec.problem = p;
  switch (p) {
    case Problem::Booth:
    case Problem::Matyas:
    case Problem::StyblinskiTang:
      spec.x = {-10.0, 10.0};
      spec.w = {-10.0, 10.0};
      break;
    case Problem::McCormick:
      spec.x = {-1.5, 4.0};
      spec.w = {-3.0, 4.0};
      break;
    case Problem::Sir:
      spec.x = {-1.0, 1.0};
      spec.w = {-1.0, 1.0};
      break;
  }
  return spec;
}

void BenchmarkSpec::validate() const {
  if (!(x.lower < x.upper) || !(w.lower < w.upper)) {
    throw std::invalid_argument("benchmark range needs lower < upper");
  }
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("benchmark grid needs >= 2 points per axis");
  if (problem == Problem::Sir && (x.lower < -1.0 || x.upper > 1.0 || w.lower < -1.0 || w.upper > 1.0)) {
    throw std::invalid_argument("sir inputs live in [-1, 1]");
  }
}

GridDomain BenchmarkSpec::grid() const {
  validate();
  return GridDomain::uniform_2d(x.lower, x.upper, n1, w.lower, w.upper, n2);
}

void SirParams::validate() const {
  if (!(initial_infected >= 1.0 && population >= initial_infected)) {
    throw std::invalid_argument("sir: need population >= initial_infected >= 1");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("sir: dt must be > 0");
  if (horizon < 1) throw std::invalid_argument("sir: horizon must be >= 1");
  if (infection.lower < 0.0 || infection.upper < 0.0 || recovery.lower < 0.0 || recovery.upper < 0.0) {
    throw std::invalid_argument("sir: rates must be nonnegative");
  }
}

double SirParams::infection_rate(double x) const {
  return infection.lower + 0.5 * (x + 1.0) * (infection.upper - infection.lower);
}

double SirParams::recovery_rate(double w) const {
  return recovery.lower + 0.5 * (w + 1.0) * (recovery.upper - recovery.lower);
}

std::vector<SirState> sir_trajectory(const SirParams& params, double infection_rate,
                                     double recovery_rate) {
  params.validate();
  std::vector<SirState> out;
  out.reserve(params.horizon + 1);
  SirState s{params.population - params.initial_infected, params.initial_infected, 0.0};
  out.push_back(s);
  for (std::size_t step = 0; step < params.horizon; ++step) {
    const double infections = infection_rate * s.susceptible * s.infected / params.population * params.dt;
    const double recoveries = recovery_rate * s.infected * params.dt;
    s.susceptible -= infections;
    s.infected += infections - recoveries;
    s.recovered += recoveries;
    if (!std::isfinite(s.susceptible) || !std::isfinite(s.infected)) {
      throw std::runtime_error("sir: trajectory diverged at step " + std::to_string(step) +
                               "; reduce dt");
    }
    out.push_back(s);
  }
  return out;
}

double sir_peak_infected(const SirParams& params, double infection_rate, double recovery_rate) {
  double peak = 0.0;
  for (const SirState& s : sir_trajectory(params, infection_rate, recovery_rate)) {
    peak = std::max(peak, s.infected);
  }
  return peak;
}

double sir_risk(const SirParams& params, double x, double w) {
  if (!inside(x, {-1.0, 1.0}) || !inside(w, {-1.0, 1.0})) {
    throw std::out_of_range("sir_risk: inputs must lie in [-1, 1]");
  }
  return sir_peak_infected(params, params.infection_rate(x), params.recovery_rate(w)) - 150.0 * x;
}

double evaluate(const BenchmarkSpec& spec, double x, double w, const SirParams& sir) {
  if (!inside(x, spec.x) || !inside(w, spec.w)) {
    throw std::out_of_range("evaluate: (" + std::to_string(x) + ", " + std::to_string(w) +
                            ") outside the problem box");
  }
  switch (spec.problem) {
    case Problem::Booth: {
      const double a = x + 2.0 * w - 7.0;
      const double b = 2.0 * x + w - 5.0;
      return a * a + b * b;
    }
    case Problem::Matyas:
      return 0.26 * (x * x + w * w) - 0.48 * x * w;
    case Problem::McCormick:
      return std::sin(x + w) + (x - w) * (x - w) - 1.5 * x + 2.5 * w + 1.0;
    case Problem::StyblinskiTang:
      return styblinski_term(x) + styblinski_term(w) - 4000.0;
    case Problem::Sir:
      return sir_risk(sir, x, w);
  }
  return 0.0;
}

std::vector<double> evaluate_grid(const BenchmarkSpec& spec, const SirParams& sir) {
  const GridDomain grid = spec.grid();
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out[j] = evaluate(spec, grid.design_point(grid.design_of(j))[0],
                      grid.env_point(grid.env_of(j))[0], sir);
  }
  return out;
}

ReferenceKind parse_reference(std::string_view name) {
  if (name == "uniform") return ReferenceKind::Uniform;
  if (name == "normal") return ReferenceKind::Normal;
  if (name == "sir-normal") return ReferenceKind::SirNormal;
  throw std::invalid_argument("unknown reference distribution: " + std::string(name));
}

std::string_view to_string(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::Uniform: return "uniform";
    case ReferenceKind::Normal: return "normal";
    case ReferenceKind::SirNormal: return "sir-normal";
  }
  return "?";
}

ReferenceDistribution reference_pmf(ReferenceKind kind, std::span<const double> env_points) {
  if (env_points.empty()) throw std::invalid_argument("reference_pmf: no environment points");
  const std::size_t m = env_points.size();
  std::vector<double> p(m, 1.0);
  if (kind != ReferenceKind::Uniform) {
    const double scale = kind == ReferenceKind::Normal ? 20.0 : 0.1;
    for (std::size_t j = 0; j < m; ++j) p[j] = std::exp(-env_points[j] * env_points[j] / scale);
  }
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return ReferenceDistribution(std::move(p));
}

}  // namespace drlse
