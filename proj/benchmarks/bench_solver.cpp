#include <benchmark/benchmark.h>

#include "rcsg/improvement.hpp"
#include "rcsg/model.hpp"
#include "rcsg/reductions.hpp"
#include "rcsg/solver.hpp"

namespace {

using namespace rcsg;

// The two-box chain; p2 controls how close to the critical point the Kleene
// iteration runs.
Rcsg chain(Rational p2) {
  Rcsg model;
  Component c;
  c.name = "A1";
  c.entries = {"en"};
  c.nodes.push_back(make_node("en", VertexKind::Probabilistic));
  c.nodes.push_back(make_node("ex", VertexKind::Exit));
  c.boxes.push_back({"b1", "A1"});
  c.boxes.push_back({"b2", "A1"});
  add_prob_edge(c, "en", Rational(1) - p2, port_id("b1", "en"));
  add_prob_edge(c, "en", p2, "ex");
  add_prob_edge(c, port_id("b1", "ex"), Rational(1), port_id("b2", "en"));
  add_prob_edge(c, port_id("b2", "ex"), Rational(1), "ex");
  model.components.push_back(std::move(c));
  return model;
}

void BM_value_iteration_chain(benchmark::State& state) {
  // denominator 20: p2 = state.range / 20
  EquationSystem sys = build_system(chain(Rational(state.range(0), 20)));
  for (auto _ : state) {
    SolveResult res = value_iterate(sys, {1e-9, 1'000'000});
    benchmark::DoNotOptimize(res.values.data());
    state.counters["iters"] = static_cast<double>(res.iterations);
  }
}
BENCHMARK(BM_value_iteration_chain)->Arg(6)->Arg(9)->Arg(14);

void BM_matrix_game(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  GameMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    m.rows.push_back("r" + std::to_string(i));
    m.cols.push_back("c" + std::to_string(i));
  }
  m.entries.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i)
    m.entries[i] = static_cast<double>((i * 2654435761u) % 1000) / 1000.0;
  for (auto _ : state) {
    GameSolution sol = solve_matrix_game(m);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(BM_matrix_game)->Arg(2)->Arg(4)->Arg(8);

void BM_sqrt_gadget(benchmark::State& state) {
  for (auto _ : state) {
    auto [spec, model] = sqrt_sum_gadget(state.range(0));
    SolveResult res = value_iterate(build_system(model), {1e-12, 1'000'000});
    benchmark::DoNotOptimize(res.values.data());
  }
}
BENCHMARK(BM_sqrt_gadget)->Arg(2)->Arg(17)->Arg(1000003);

}  // namespace

BENCHMARK_MAIN();
