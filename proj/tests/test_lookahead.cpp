#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "drlse/lookahead.hpp"
#include "oracle/oracle.hpp"
#include "support.hpp"

using namespace drlse;
using testing_support::Instance;
using testing_support::random_instance;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LookaheadLine make_line(double intercept, double slope, double h) {
  LookaheadLine l;
  l.intercept = intercept;
  l.slope = slope;
  if (slope == 0.0) {
    l.orientation = LookaheadLine::Orientation::Constant;
    l.breakpoint = intercept > h ? -kInf : kInf;
  } else {
    l.breakpoint = (h - intercept) / slope;
    l.orientation = slope > 0 ? LookaheadLine::Orientation::Above : LookaheadLine::Orientation::Below;
  }
  return l;
}

LookaheadParams params_of(const Instance& in) { return {in.threshold, in.alpha, in.beta_sqrt}; }

}  // namespace

TEST_SUITE("lookahead") {

TEST_CASE("region partition: constant lines only") {
  const std::vector<LookaheadLine> lines{make_line(2.0, 0.0, 1.0), make_line(0.0, 0.0, 1.0)};
  const auto part = region_partition(lines, 1.0);
  REQUIRE(part.regions.size() == 1);
  CHECK(part.regions[0].lower == -kInf);
  CHECK(part.regions[0].upper == kInf);
  CHECK(part.costs[0] == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("region partition: two breakpoints") {
  // Breakpoints at y = 1 (rising) and y = 3 (falling); one constant line.
  const std::vector<LookaheadLine> two{make_line(-1.0, 1.0, 0.0), make_line(3.0, -1.0, 0.0),
                                       make_line(5.0, 0.0, 0.0)};
  const auto p2 = region_partition(two, 1.0);
  REQUIRE(p2.regions.size() == 3);
  CHECK(p2.breakpoints == std::vector<double>{1.0, 3.0});
  CHECK(p2.regions[0].representative == doctest::Approx(0.0));
  CHECK(p2.regions[1].representative == doctest::Approx(2.0));
  CHECK(p2.regions[2].representative == doctest::Approx(4.0));
  CHECK(p2.costs[0] == std::vector<std::uint8_t>{0, 1, 1});
  CHECK(p2.costs[1] == std::vector<std::uint8_t>{1, 1, 1});
  CHECK(p2.costs[2] == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("region partition: costs hold throughout each region") {
  Rng rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t m = testing_support::between(rng, 1, 8);
    const double h = rng.normal();
    std::vector<LookaheadLine> lines;
    for (std::size_t j = 0; j < m; ++j) {
      lines.push_back(make_line(rng.normal(), rng.index(4) == 0 ? 0.0 : rng.normal(), h));
    }
    const auto part = region_partition(lines, 0.7);
    for (std::size_t s = 0; s < part.regions.size(); ++s) {
      const Region& r = part.regions[s];
      if (!(r.upper > r.lower)) continue;
      std::vector<double> probes{r.representative};
      for (int i = 0; i < 5; ++i) {
        const double lo = std::isfinite(r.lower) ? r.lower
                          : std::isfinite(r.upper) ? r.upper - 10.0
                                                   : -10.0;
        const double hi = std::isfinite(r.upper) ? r.upper : lo + 20.0;
        probes.push_back(lo + (hi - lo) * (0.01 + 0.98 * rng.uniform()));
      }
      for (double y : probes) {
        for (std::size_t j = 0; j < m; ++j) CHECK(part.costs[s][j] == (lines[j](y) > h ? 1 : 0));
      }
    }
  }
}

TEST_CASE("pruning rule is inclusive") {
  const std::vector<double> ref{0.25, 0.25, 0.5};
  CHECK(prune_region(std::vector<std::uint8_t>{0, 0, 0}, ref, 0.5));
  CHECK(prune_region(std::vector<std::uint8_t>{0, 0, 1}, ref, 0.5));
  CHECK_FALSE(prune_region(std::vector<std::uint8_t>{1, 0, 1}, ref, 0.5));
}

TEST_CASE("degenerate expectations are 0 or 1") {
  const GridDomain d = GridDomain::uniform_2d(0, 1, 2, 0, 1, 3);
  const GpPosterior prior = fit(d, {1.0, 1.0, 0.1}, {});
  const AmbiguitySet set(Metric::L1, 0.2, ReferenceDistribution({0.2, 0.3, 0.5}));
  // Threshold far below / above everything reachable.
  CHECK(exact_expectation(prior, 0, 4, set, {-1e6, 0.5, 1.0}) == doctest::Approx(1.0));
  CHECK(exact_expectation(prior, 0, 4, set, {1e6, 0.5, 1.0}) == 0.0);
  CHECK(approx_expectation(prior, 1, 0, set, {-1e6, 0.5, 1.0}, 0.005) == doctest::Approx(1.0));
}

TEST_CASE("exact agrees with Monte Carlo; pruning is lossless; approximation is bounded") {
  Rng rng(42);
  for (int rep = 0; rep < 12; ++rep) {
    const Metric metric = rep % 3 == 2 ? Metric::L2 : Metric::L1;
    const Instance in = random_instance(rng, 6, 6, metric);
    const std::size_t m = in.gp.env_size();
    const LookaheadParams p = params_of(in);
    LookaheadEvaluator exact(in.gp, in.set, p, ComputationPath::exact());
    LookaheadEvaluator pruned(in.gp, in.set, p, ComputationPath::exact_pruned());
    LookaheadEvaluator approx(in.gp, in.set, p, ComputationPath::approx(1e-3));
    LookaheadEvaluator zero(in.gp, in.set, p, ComputationPath::approx(0.0));
    for (std::size_t c = 0; c < in.gp.size(); ++c) {
      exact.prepare(c);
      pruned.prepare(c);
      approx.prepare(c);
      zero.prepare(c);
      for (std::size_t x = 0; x < in.gp.design_size(); ++x) {
        const double e = exact.expectation(x);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0 + 1e-12);
        CHECK(pruned.expectation(x) == doctest::Approx(e).epsilon(1e-12).scale(1.0));
        CHECK(zero.expectation(x) == doctest::Approx(e).epsilon(1e-12).scale(1.0));
        const double a = approx.expectation(x);
        CHECK(a <= e + 1e-12);
        CHECK(e - a <= 1e-3 * static_cast<double>(m + 1) + 1e-12);
      }
      if (c % 4 == 0) {
        const std::size_t x = rng.index(in.gp.design_size());
        const auto mc = oracle::naive_expectation(in.gp, x, c, in.set, in.threshold, in.alpha,
                                                  in.beta_sqrt, 4000, rng);
        const double e = exact_expectation(in.gp, x, c, in.set, p);
        const double se = std::sqrt(std::max(e * (1.0 - e), 1e-12) / 4000.0);
        CHECK(std::abs(mc.mean - e) <= 5.0 * se);
      }
    }
  }
}

TEST_CASE("cutoff close to one keeps only a dominant region") {
  Rng rng(43);
  const Instance in = random_instance(rng, 5, 5, Metric::L1);
  const LookaheadParams p = params_of(in);
  for (std::size_t c = 0; c < in.gp.size(); ++c) {
    for (std::size_t x = 0; x < in.gp.design_size(); ++x) {
      const double a = approx_expectation(in.gp, x, c, in.set, p, 1.0 - 1e-12);
      CHECK((a == 0.0 || a >= 1.0 - 1e-12));
    }
  }
}

TEST_CASE("naive path is reproducible per seed") {
  Rng rng(44);
  const Instance in = random_instance(rng, 4, 4, Metric::L1);
  LookaheadEvaluator a(in.gp, in.set, params_of(in), ComputationPath::naive(500));
  LookaheadEvaluator b(in.gp, in.set, params_of(in), ComputationPath::naive(500));
  a.prepare(3, 99);
  b.prepare(3, 99);
  CHECK(a.expectation(1) == b.expectation(1));
}

TEST_CASE("path parsing and validation") {
  CHECK(parse_path_kind("exact-pruned") == ComputationPath::Kind::ExactPruned);
  CHECK_THROWS(parse_path_kind("fast"));
  CHECK_THROWS(ComputationPath::naive(0).validate());
  CHECK_THROWS(ComputationPath::approx(1.0).validate());
  CHECK(tail_cutoff(0.0) == kInf);
  CHECK(tail_cutoff(0.01) == doctest::Approx(2.5758).epsilon(1e-4));
}

}  // TEST_SUITE
