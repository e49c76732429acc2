#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "drlse/config.hpp"
#include "drlse/harness.hpp"

using namespace drlse;

namespace {

ExperimentConfig tiny(Strategy s, std::size_t n = 6, std::size_t iterations = 8) {
  ExperimentConfig c;
  c.problem.n1 = n;
  c.problem.n2 = n;
  c.acquisition.strategy = s;
  c.acquisition.path = ComputationPath::exact();
  c.iterations = iterations;
  c.record_timing = false;
  return c;
}

std::string csv(const RunRecord& r) {
  std::ostringstream os;
  write_run_csv(os, r);
  return os.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("F-score examples") {
  const std::vector<std::size_t> truth{1, 2, 3, 4};
  CHECK(f_score(truth, std::vector<std::size_t>{1, 2, 3, 4}) == 1.0);
  CHECK(f_score(truth, std::vector<std::size_t>{}) == 0.0);
  CHECK(f_score(truth, std::vector<std::size_t>{5, 6}) == 0.0);
  // precision 1/2, recall 1/4
  CHECK(f_score(truth, std::vector<std::size_t>{1, 9}) == doctest::Approx(1.0 / 3.0));
  CHECK(f_score(std::vector<std::size_t>{}, std::vector<std::size_t>{1}) == 0.0);
}

TEST_CASE("ground truth from exact values") {
  const AmbiguitySet set(Metric::L1, 0.4, ReferenceDistribution({0.5, 0.5}));
  // x=0 exceeds h everywhere, x=1 at one w only (worst case 0.3), x=2 nowhere.
  const std::vector<double> v{5, 5, 5, 0, 0, 0};
  CHECK(ground_truth_H(v, 2, set, 1.0, 0.2) == std::vector<std::size_t>{0, 1});
  CHECK(ground_truth_H(v, 2, set, 1.0, 0.3) == std::vector<std::size_t>{0});
  CHECK_THROWS(ground_truth_H(v, 4, set, 1.0, 0.3));
}

TEST_CASE("one iteration writes one row") {
  const Experiment ex(tiny(Strategy::US, 5, 1));
  const RunRecord r = ex.run(0);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].t == 1);
  CHECK(r.rows[0].h_size + r.rows[0].l_size + r.rows[0].u_size == 5);
  CHECK(r.rows[0].acq_seconds == 0.0);
}

TEST_CASE("runs are deterministic per seed") {
  for (Strategy s : {Strategy::Random, Strategy::US, Strategy::StraddleRandom, Strategy::MILE,
                     Strategy::Proposed1, Strategy::Proposed2}) {
    const Experiment ex(tiny(s));
    CHECK(csv(ex.run(3)) == csv(ex.run(3)));
  }
  const Experiment ex(tiny(Strategy::Random, 6, 12));
  CHECK(csv(ex.run(1)) != csv(ex.run(2)));
}

TEST_CASE("serial and parallel runs agree") {
  ExperimentConfig c = tiny(Strategy::Proposed2);
  const Experiment par(c);
  c.execution = Execution::Serial;
  const Experiment ser(c);
  CHECK(csv(par.run(5)) == csv(ser.run(5)));
}

TEST_CASE("exact and pruned paths give the same run") {
  ExperimentConfig c = tiny(Strategy::Proposed1, 6, 10);
  const Experiment a(c);
  c.acquisition.path = ComputationPath::exact_pruned();
  const Experiment b(c);
  CHECK(csv(a.run(4)) == csv(b.run(4)));
}

TEST_CASE("positive eta lets a small grid finish") {
  ExperimentConfig c = tiny(Strategy::US, 3, 200);
  c.accuracy.eta = 130.0;
  const Experiment ex(c);
  const RunRecord r = ex.run(0);
  CHECK(r.exhausted);
  CHECK(r.rows.size() < 200);
  CHECK(r.rows.back().u_size == 0);
}

TEST_CASE("aggregate carries the last value forward") {
  RunRecord a;
  a.initial_f_score = 0.1;
  a.rows.push_back({1, 0, 0, 0.0, 0, 0, 0, 0.5, 0.0});
  RunRecord b = a;
  b.rows.push_back({2, 0, 0, 0.0, 0, 0, 0, 1.0, 0.0});
  const std::vector<RunRecord> runs{a, b};
  const auto curve = aggregate(runs, 3);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].f_mean == 0.5);
  CHECK(curve[0].f_sd == 0.0);
  CHECK(curve[2].f_mean == 0.75);
  CHECK(curve[2].f_sd == doctest::Approx(std::sqrt(0.125)));
  CHECK(f_score_at(a, 0) == 0.1);
  CHECK(f_score_at(RunRecord{}, 7) == 0.0);
}

TEST_CASE("CSV headers") {
  std::ostringstream run, agg, timing;
  write_run_csv(run, RunRecord{});
  write_aggregate_csv(agg, std::vector<CurvePoint>{{1, 0.5, 0.0, 2}});
  write_timing_csv(timing, std::vector<PathTiming>{{ComputationPath::approx(1e-8), {1.0, 3.0}}});
  CHECK(run.str() == "t,x_index,w_index,y,H_size,L_size,U_size,f_score,acq_seconds\n");
  CHECK(agg.str() == "t,f_mean,f_sd,n_seeds\n1,0.5,0,2\n");
  CHECK(timing.str() == "path,mean_seconds,sd_seconds,iterations\napprox(1e-08),2,1.4142135623730951,2\n");
}

TEST_CASE("timing ablation records one entry per path and iteration") {
  ExperimentConfig c = tiny(Strategy::Proposed1, 5, 3);
  const Experiment ex(c);
  const auto t = timing_ablation(ex, 0, default_timing_paths(false), 3);
  CHECK(t.size() == 5);
  for (const PathTiming& p : t) CHECK(p.seconds.size() <= 3);
  const Experiment us(tiny(Strategy::US));
  CHECK_THROWS(timing_ablation(us, 0, default_timing_paths(false), 1));
}

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse_config(R"(# Booth, small grid
problem = booth
grid-n1 = 7
grid-n2 = 9
metric = l2
reference = normal
epsilon = 0.3
h = 120
alpha = 0.5
delta = 0.05
acquisition = mile
computation-path = approx
zeta-per-region = 1e-8
seeds = 2..4
record-timing = false
execution = serial
)");
  CHECK(c.problem.n1 == 7);
  CHECK(c.problem.n2 == 9);
  CHECK(c.ambiguity.metric == Metric::L2);
  CHECK(c.ambiguity.reference == ReferenceKind::Normal);
  CHECK(c.accuracy.threshold == 120.0);
  CHECK(c.acquisition.strategy == Strategy::MILE);
  CHECK(c.acquisition.path.kind == ComputationPath::Kind::Approx);
  CHECK(c.acquisition.path.zeta_per_region == 1e-8);
  CHECK(c.seeds == std::vector<std::uint64_t>{2, 3, 4});
  CHECK_FALSE(c.record_timing);
  CHECK(c.execution == Execution::Serial);
  CHECK(c.problem.x.lower == -10.0);

  const ExperimentConfig mc = parse_config("problem = mccormick\n");
  CHECK(mc.problem.x.lower == -1.5);
  CHECK(mc.problem.w.upper == 4.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS(parse_config("colour = red\n"));
  CHECK_THROWS(parse_config("h = 1\nh = 2\n"));
  CHECK_THROWS(parse_config("h = ten\n"));
  CHECK_THROWS(parse_config("h 10\n"));
  CHECK_THROWS(parse_config("beta-sqrt = 2\ndelta = 0.1\n"));
  CHECK_THROWS(parse_config("alpha = 1.5\n"));
  CHECK_THROWS(parse_config("grid-n1 = -3\n"));
  CHECK_THROWS(parse_config("execution = gpu\n"));
  CHECK_THROWS(load_config("/nonexistent/drlse.cfg"));
  CHECK(parse_seed_list("5, 7,9") == std::vector<std::uint64_t>{5, 7, 9});
  CHECK_THROWS(parse_seed_list("4..2"));
}

}  // TEST_SUITE
