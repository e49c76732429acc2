#include <cmath>
#include <vector>

#include "doctest.h"
#include "drlse/ambiguity.hpp"
#include "oracle/oracle.hpp"
#include "support.hpp"

using namespace drlse;
using testing_support::random_reference;
using testing_support::uniform;

namespace {
ReferenceDistribution uniform_ref(std::size_t m) { return ReferenceDistribution(std::vector<double>(m, 1.0 / m)); }

std::vector<std::uint8_t> bits(std::size_t mask, std::size_t m) {
  std::vector<std::uint8_t> c(m);
  for (std::size_t j = 0; j < m; ++j) c[j] = (mask >> j) & 1u;
  return c;
}
}  // namespace

TEST_SUITE("ambiguity") {

TEST_CASE("reference and set validation") {
  CHECK_THROWS(ReferenceDistribution({}));
  CHECK_THROWS(ReferenceDistribution({0.5, 0.6}));
  CHECK_THROWS(ReferenceDistribution({-0.1, 1.1}));
  CHECK_NOTHROW(ReferenceDistribution({0.0, 1.0}));
  CHECK_THROWS(AmbiguitySet(Metric::L1, 0.0, uniform_ref(2)));
  CHECK(parse_metric("l2") == Metric::L2);
  CHECK_THROWS(parse_metric("kl"));
}

TEST_CASE("cost validation") {
  const AmbiguitySet set(Metric::L1, 0.2, uniform_ref(3));
  const std::vector<std::uint8_t> short_costs{1, 0};
  const std::vector<std::uint8_t> bad{1, 2, 0};
  CHECK_THROWS_AS(worst_case_mass(set, short_costs), std::invalid_argument);
  CHECK_THROWS_AS(worst_case_mass(set, bad), std::invalid_argument);
  const std::vector<double> out_of_range{0.5, 1.5, 0.0};
  CHECK_THROWS_AS(worst_case_mass_general(set, out_of_range), std::invalid_argument);
}

TEST_CASE("worked examples") {
  for (Metric metric : {Metric::L1, Metric::L2}) {
    const AmbiguitySet set(metric, 0.3, uniform_ref(4));
    CHECK(worst_case_mass(set, std::vector<std::uint8_t>{1, 1, 1, 1}) == 1.0);
    CHECK(worst_case_mass(set, std::vector<std::uint8_t>{0, 0, 0, 0}) == 0.0);
    CHECK(worst_case_mass_general(set, std::vector<double>{0.3, 0.3, 0.3, 0.3}) == doctest::Approx(0.3));
  }
  const AmbiguitySet set(Metric::L1, 0.2, uniform_ref(4));
  CHECK(worst_case_mass(set, std::vector<std::uint8_t>{1, 1, 0, 0}) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(oracle::mesh_min_mass(set, std::vector<double>{1, 1, 0, 0}, 100) == doctest::Approx(0.4).epsilon(1e-2));
}

TEST_CASE("binary and general routes agree on binary costs") {
  Rng rng(21);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t m = testing_support::between(rng, 2, 7);
    const Metric metric = rep % 2 ? Metric::L2 : Metric::L1;
    const AmbiguitySet set(metric, uniform(rng, 0.01, 1.2), random_reference(rng, m));
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      const auto c = bits(mask, m);
      const std::vector<double> cd(c.begin(), c.end());
      CHECK(worst_case_mass(set, c) == worst_case_mass_general(set, cd));
    }
  }
}

TEST_CASE("monotone in radius and costs, bounded by the nominal mass") {
  Rng rng(22);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t m = testing_support::between(rng, 2, 6);
    const Metric metric = rep % 2 ? Metric::L2 : Metric::L1;
    const ReferenceDistribution ref = random_reference(rng, m);
    const double e1 = uniform(rng, 0.01, 0.6);
    const double e2 = e1 + uniform(rng, 0.0, 0.6);
    const AmbiguitySet small(metric, e1, ref), large(metric, e2, ref);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      const auto c = bits(mask, m);
      const double v = worst_case_mass(small, c);
      CHECK(v >= worst_case_mass(large, c) - 1e-9);
      CHECK(v <= nominal_mass(c, ref.probs()) + 1e-12);
      for (std::size_t j = 0; j < m; ++j) {
        if (c[j]) continue;
        auto more = c;
        more[j] = 1;
        CHECK(v <= worst_case_mass(small, more) + 1e-9);
      }
    }
  }
}

TEST_CASE("L1 radius >= 2 covers the simplex") {
  Rng rng(23);
  const AmbiguitySet set(Metric::L1, 2.0, random_reference(rng, 5));
  for (std::size_t mask = 0; mask + 1 < 32; ++mask) CHECK(worst_case_mass(set, bits(mask, 5)) == 0.0);
  CHECK(worst_case_mass(set, bits(31, 5)) == 1.0);
}

TEST_CASE("L2 matches the dual oracle to 1e-7") {
  Rng rng(24);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = testing_support::between(rng, 2, 10);
    const AmbiguitySet set(Metric::L2, uniform(rng, 0.01, 1.0), random_reference(rng, m));
    std::vector<double> c(m);
    for (double& v : c) v = rep % 2 ? uniform(rng, 0.0, 1.0) : static_cast<double>(rng.index(2));
    const double want = oracle::l2_dual_min(set.reference().probs(), set.radius(), c);
    CHECK(worst_case_mass_general(set, c) == doctest::Approx(want).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("L1 general costs match the mesh oracle for |Omega| = 3") {
  Rng rng(25);
  for (int rep = 0; rep < 20; ++rep) {
    const AmbiguitySet set(Metric::L1, uniform(rng, 0.05, 0.8), random_reference(rng, 3));
    std::vector<double> c{uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, 0, 1)};
    const double mesh = oracle::mesh_min_mass(set, c, 400);
    const double got = worst_case_mass_general(set, c);
    CHECK(got <= mesh + 1e-12);
    CHECK(got >= mesh - 3.0 * 3.0 / 400.0);
    CHECK(got == doctest::Approx(oracle::l1_greedy_min(set.reference().probs(), set.radius(), c)).epsilon(1e-12));
  }
}

TEST_CASE("simplex projection") {
  std::vector<double> out(3);
  project_to_simplex(std::vector<double>{0.2, 0.3, 0.5}, out);
  CHECK(out[0] == doctest::Approx(0.2));
  CHECK(out[2] == doctest::Approx(0.5));
  project_to_simplex(std::vector<double>{3.0, 0.0, -1.0}, out);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(out[1] == 0.0);
  project_to_simplex(std::vector<double>{0.5, 0.5, 0.5}, out);
  CHECK(out[1] == doctest::Approx(1.0 / 3));
}

}  // TEST_SUITE
