// Serial reference vs OpenMP scoring on a Booth state after a few iterations.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "drlse/harness.hpp"

namespace {

using namespace drlse;

struct State {
  GpPosterior gp;
  ClassificationState cls;
  const Experiment* ex;
};

const Experiment& experiment(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<Experiment>> cache;
  auto& slot = cache[n];
  if (!slot) {
    ExperimentConfig c;
    c.problem.n1 = n;
    c.problem.n2 = n;
    c.ambiguity.reference = ReferenceKind::Normal;
    c.accuracy.alpha = 0.5;
    slot = std::make_unique<Experiment>(c);
  }
  return *slot;
}

// Posterior after a fixed spread of observations, so that U is nonempty.
State make_state(std::size_t n) {
  const Experiment& ex = experiment(n);
  ObservationLog log;
  const std::size_t size = ex.domain().size();
  for (std::size_t i = 0; i < 12; ++i) {
    const std::size_t j = (i * 7919) % size;
    log.push_back({j, ex.values()[j]});
  }
  GpPosterior gp = ex.model().fit(log, {true});
  const auto& acc = ex.config().accuracy;
  ClassificationState cls = classify_posterior(gp, ex.ambiguity(), acc, 2.0);
  return {std::move(gp), std::move(cls), &ex};
}

void run_scores(benchmark::State& st, Execution exec, ComputationPath path) {
  const State s = make_state(static_cast<std::size_t>(st.range(0)));
  const AcquisitionContext ctx{s.gp, s.ex->ambiguity(), s.cls, s.ex->config().accuracy, 2.0};
  for (auto _ : st) {
    auto scores = a_t_scores(ctx, path, exec, 1);
    benchmark::DoNotOptimize(scores.data());
  }
  st.counters["candidates"] = static_cast<double>(s.gp.size());
  st.counters["unclassified"] = static_cast<double>(s.cls.unclassified.size());
}

void BM_ApproxSerial(benchmark::State& st) { run_scores(st, Execution::Serial, ComputationPath::approx(1e-8)); }
void BM_ApproxParallel(benchmark::State& st) { run_scores(st, Execution::Parallel, ComputationPath::approx(1e-8)); }
void BM_ExactSerial(benchmark::State& st) { run_scores(st, Execution::Serial, ComputationPath::exact()); }
void BM_ExactParallel(benchmark::State& st) { run_scores(st, Execution::Parallel, ComputationPath::exact()); }

}  // namespace

BENCHMARK(BM_ApproxSerial)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApproxParallel)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactSerial)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactParallel)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
