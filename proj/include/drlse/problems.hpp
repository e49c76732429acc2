#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "drlse/ambiguity.hpp"
#include "drlse/gp.hpp"

namespace drlse {

enum class Problem { Booth, Matyas, McCormick, StyblinskiTang, Sir };

Problem parse_problem(std::string_view name);
std::string_view to_string(Problem p);
std::span<const Problem> all_problems();

struct Range {
  double lower;
  double upper;
};

struct BenchmarkSpec {
  Problem problem = Problem::Booth;
  Range x{-10.0, 10.0};
  Range w{-10.0, 10.0};
  std::size_t n1 = 50;  ///< grid points along x
  std::size_t n2 = 50;  ///< grid points along w

  /// Usual input box of each problem with a 50 x 50 grid.
  static BenchmarkSpec defaults(Problem p);

  void validate() const;
  GridDomain grid() const;
};

/// Deterministic SIR simulator. x and w live in [-1, 1] and are mapped
/// affinely onto the raw infection and recovery rates.
struct SirParams {
  double population = 1000.0;
  double initial_infected = 10.0;
  double dt = 0.1;
  std::size_t horizon = 1000;  ///< integration steps
  Range infection{0.1, 0.5};   ///< raw rate at x = -1 and x = 1
  Range recovery{0.1, 0.5};    ///< raw rate at w = -1 and w = 1

  void validate() const;
  double infection_rate(double x) const;
  double recovery_rate(double w) const;
};

struct SirState {
  double susceptible;
  double infected;
  double recovered;
};

/// Forward-Euler trajectory for raw rates, horizon + 1 states including the start.
std::vector<SirState> sir_trajectory(const SirParams& params, double infection_rate,
                                     double recovery_rate);

/// Largest infected count along the trajectory.
double sir_peak_infected(const SirParams& params, double infection_rate, double recovery_rate);

/// Economic risk max_t I(t) - 150 x.
double sir_risk(const SirParams& params, double x, double w);

/// f(x, w). Throws std::out_of_range outside the problem's input box.
double evaluate(const BenchmarkSpec& spec, double x, double w, const SirParams& sir = {});

/// f at every joint index of spec.grid().
std::vector<double> evaluate_grid(const BenchmarkSpec& spec, const SirParams& sir = {});

enum class ReferenceKind { Uniform, Normal, SirNormal };

ReferenceKind parse_reference(std::string_view name);
std::string_view to_string(ReferenceKind k);

/// Uniform: 1/|Omega|. Normal: proportional to exp(-w^2 / 20). SirNormal:
/// proportional to exp(-w^2 / 0.1).
ReferenceDistribution reference_pmf(ReferenceKind kind, std::span<const double> env_points);

}  // namespace drlse
