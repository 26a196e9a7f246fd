#include <stdexcept>
#include "rcsg/qualitative.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "testutil.hpp"

using namespace rcsg;
using namespace rcsg::test;

TEST_CASE("only the stuck self-loop has value zero") {
  ZeroSetResult z = zero_set(reference_model());
  CHECK(z.zero_vertices == std::vector<std::string>{"u5"});
}

TEST_CASE("a vertex wired to the exit is not in the zero set") {
  Rcsg m;
  Component c;
  c.name = "f";
  c.entries = {"a"};
  c.nodes.push_back(make_node("a", VertexKind::Probabilistic));
  c.nodes.push_back(make_node("t", VertexKind::Exit));
  add_prob_edge(c, "a", Rational(1), "t");
  m.components.push_back(c);
  CHECK(zero_set(m).zero_vertices.empty());
}

TEST_CASE("the zero set ignores the probability values") {
  Rcsg m = reference_model();
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    Rcsg reweighted = reweight_probabilities(m, rng);
    CHECK(zero_set(reweighted).zero_vertices == std::vector<std::string>{"u5"});
  }
}

TEST_CASE("zero set agrees with near-zero numeric values") {
  std::mt19937_64 rng(42);
  int done = 0;
  while (done < 10) {
    Rcsg m = random_model(rng);
    if (!converges_cleanly(m)) continue;
    ++done;
    EquationSystem sys = build_system(m);
    SolveResult res = value_iterate(sys, {1e-12, 20'000});
    std::set<std::string> zs;
    for (const auto& v : zero_set(m).zero_vertices) zs.insert(v);
    for (int v = 0; v < sys.size(); ++v) {
      bool numerically_zero = res.values[static_cast<std::size_t>(v)] < 1e-9;
      CHECK(zs.count(sys.vertex_ids[static_cast<std::size_t>(v)]) ==
            (numerically_zero ? 1u : 0u));
    }
  }
}

TEST_CASE("exit vertices report numerically one with an exact bound") {
  AlmostSureReport report = almost_sure_report(reference_model(), 1e-6, {1e-10, 100'000});
  bool found_exit = false;
  for (const auto& row : report.rows) {
    if (row.vertex == "t") {
      found_exit = true;
      CHECK(row.verdict == Verdict::Numerically1);
      CHECK(row.lower == 1.0);
      CHECK(row.upper == 1.0);
    }
    if (row.vertex == "u5") {
      CHECK(row.verdict == Verdict::ValueLessThan1);
      CHECK(row.upper == 0.0);
    }
    if (row.vertex == "s") CHECK(row.verdict == Verdict::ValueLessThan1);
  }
  CHECK(found_exit);
}

TEST_CASE("the two-box chain flips verdict at one half") {
  SUBCASE("supercritical entry is numerically one") {
    AlmostSureReport report =
        almost_sure_report(two_box_rmc(Rational(3, 4)), 1e-6, {1e-12, 1'000'000});
    for (const auto& row : report.rows)
      if (row.vertex == "en") CHECK(row.verdict == Verdict::Numerically1);
  }
  SUBCASE("subcritical entry is certified below one") {
    AlmostSureReport report =
        almost_sure_report(two_box_rmc(Rational(1, 4)), 1e-6, {1e-12, 1'000'000});
    for (const auto& row : report.rows)
      if (row.vertex == "en") {
        CHECK(row.verdict == Verdict::ValueLessThan1);
        CHECK(row.upper == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
      }
  }
}
