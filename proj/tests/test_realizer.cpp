#include <doctest.h>

#include <cmath>
#include <random>

#include "distorder/audit.hpp"
#include "distorder/configuration.hpp"
#include "distorder/construction.hpp"
#include "distorder/errors.hpp"
#include "distorder/lemmas.hpp"
#include "distorder/search.hpp"
#include "distorder/suites.hpp"

using namespace distorder;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p[k++] = x;
  return p;
}

Configuration line_config(std::vector<double> p, std::vector<double> q) {
  Configuration c;
  c.dim = 1;
  for (double x : p) c.P.push_back(pt({x}));
  for (double x : q) c.Q.push_back(pt({x}));
  return c;
}

Configuration random_config(int d, int n, int m, std::mt19937_64& rng) {
  Configuration c;
  c.dim = d;
  for (int i = 0; i < n; ++i) c.P.push_back(random_point(d, rng));
  for (int j = 0; j < m; ++j) c.Q.push_back(random_point(d, rng));
  return c;
}

}  // namespace

TEST_CASE("induced order examples") {
  CHECK(induced_order(line_config({0, 3}, {1, 8, -2.2})) == RankTable::from_rows({{0, 5, 2}, {1, 3, 4}}));
  try {
    induced_order(line_config({0, 3}, {1, 5, -2}));
    FAIL("expected a degeneracy error");
  } catch (const DegeneracyError& e) {
    CHECK(std::string(e.what()).find("(0,2)~(1,0)") != std::string::npos);
  }
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const RankTable r = induced_order(random_config(2, 3, 4, rng));
    CHECK(is_bijective(3, 4, r.data()));
  }
}

TEST_CASE("induced order is invariant under similarities") {
  CHECK(similarity_invariance_suite(1000, 17).passed());
}

TEST_CASE("search realizes small targets") {
  SearchParams params;
  const RankTable row_major = RankTable::from_rows({{0, 1}, {2, 3}});
  const SearchResult r = search_realization(row_major, 1, params);
  REQUIRE(r.status == SearchStatus::realized);
  CHECK(induced_order(r.best) == row_major);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const RankTable target = induced_order(random_config(2, 3, 3, rng));
    params.seed = static_cast<std::uint64_t>(t);
    const SearchResult s = search_realization(target, 2, params);
    REQUIRE(s.status == SearchStatus::realized);
    CHECK(induced_order(s.best) == target);
    CHECK(s.min_margin > 0.5 * s.final_margin);
  }
}

TEST_CASE("search exhausts on the identity construction at d = 1") {
  SearchParams params;
  params.restarts = 256;
  const RankTable target = construct_unrealizable(ConstructionChoice::identity(1));
  const SearchResult r = search_realization(target, 1, params);
  CHECK(r.status == SearchStatus::exhausted);
  CHECK(r.restarts_run == 256);
  CHECK(r.min_margin < 0);
}

TEST_CASE("search is deterministic per seed") {
  SearchParams params;
  params.seed = 42;
  params.restarts = 8;
  const RankTable target = random_table(3, 3, 5);
  const SearchResult a = search_realization(target, 2, params);
  const SearchResult b = search_realization(target, 2, params);
  CHECK(a.status == b.status);
  CHECK(a.best == b.best);
  CHECK(a.restart == b.restart);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("circumcenter lemma hypothesis and conclusion") {
  const std::vector<Point> xs = {pt({-1}), pt({1})};
  const std::vector<Point> ys = {pt({-2}), pt({2})};
  CHECK(lemma_hypothesis_holds(xs, ys));
  CHECK_FALSE(lemma_hypothesis_holds(xs, std::vector<Point>{pt({2}), pt({-2})}));
  const LemmaConclusion c = lemma_conclusion_check(xs, ys);
  CHECK(c.circumcenter[0] == doctest::Approx(0.0));
  CHECK(c.barycentric[0] == doctest::Approx(0.5));
  CHECK(c.barycentric[1] == doctest::Approx(0.5));
  CHECK(c.interior);
  CHECK_THROWS_AS(lemma_conclusion_check(xs, std::vector<Point>{pt({1}), pt({3})}), PreconditionError);
  for (int d = 1; d <= 3; ++d) CHECK(circumcenter_lemma_suite(d, 200, 7 + static_cast<std::uint64_t>(d)).passed());
}

TEST_CASE("three lemma instances") {
  std::mt19937_64 rng(11);
  int hypotheses = 0;
  for (int t = 0; t < 1000; ++t) {
    const Configuration c = random_config(2, 3, 4, rng);
    const auto inst = three_lemma_instances(c);
    for (const auto& i : inst) hypotheses += i.hypothesis.holds;
  }
  // Random orders rarely satisfy the cyclic hypothesis.
  CHECK(hypotheses < 3000 / 5);

  // Instance (a) with Q_{d+1} placed in the cones of P.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const LemmaPair pair = random_lemma_pair(2, s);
    Configuration c;
    c.dim = 2;
    c.P = pair.xs;
    c.Q = pair.ys;
    c.Q.push_back(pt({5.0, 7.0}));
    const auto inst = three_lemma_instances(c);
    CHECK(inst[0].hypothesis.holds);
    CHECK(inst[0].conclusion.interior);
  }
  Configuration bad = random_config(2, 2, 4, rng);
  CHECK_THROWS_AS(three_lemma_instances(bad), ShapeError);
}

TEST_CASE("observation check") {
  const auto ok = observation_check(construct_unrealizable(ConstructionChoice::identity(1)));
  CHECK(ok.size() == 5);
  for (const auto& v : ok) CHECK(v.holds);
  const auto other = observation_check(RankTable::from_rows({{1, 4, 5}, {3, 0, 2}}));
  for (const auto& v : other) {
    if (v.comparison.lesser == Cell{1, 0} && v.comparison.greater == Cell{1, 2}) CHECK_FALSE(v.holds);
  }
  int failures = 0;
  for (const auto& v : observation_check(RankTable::from_rows({{0, 1, 2}, {3, 4, 5}})))
    failures += (!v.holds && v.comparison.group == 2);
  CHECK(failures >= 2);
}

TEST_CASE("sphere steps") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const Configuration c = random_config(2, 3, 4, rng);
    const SphereSteps s = sphere_steps(c);
    CHECK(s.q_last_on_s0_residual < 1e-10);
    CHECK(s.h.signed_distance(c.Q[0]) >= 0.0);
  }
  Configuration flat = random_config(3, 4, 5, rng);
  flat.Q[2] = flat.Q[1];  // Q' = {q_1, q_2, q_3} affinely dependent
  CHECK_THROWS_AS(sphere_steps(flat), DegeneracyError);
}

TEST_CASE("halfspace lemma") {
  const std::vector<Point> xs = {pt({-1}), pt({1})};
  // L_0 = {0.5} with positive side toward O, L_1 = {-0.5} likewise.
  const std::vector<Hyperplane> ls = {Hyperplane{pt({-1}), -0.5}, Hyperplane{pt({1}), -0.5}};
  const HalfspaceReport r = halfspace_lemma_check(xs, pt({0}), ls, 1000, 1);
  CHECK(r.preconditions_ok);
  CHECK(r.samples == 1000);
  CHECK(r.violations == 0);
  CHECK(r.worst_min_coordinate >= 0.25 - 1e-12);

  const std::vector<Hyperplane> on_l0 = {Hyperplane{pt({-1}), 0.0}, Hyperplane{pt({1}), -0.5}};
  const HalfspaceReport bad = halfspace_lemma_check(xs, pt({0}), on_l0, 100, 1);
  CHECK_FALSE(bad.preconditions_ok);
  bool names_l0 = false;
  for (const auto& f : bad.failed_preconditions) names_l0 = names_l0 || f.find("L_0") != std::string::npos;
  CHECK(names_l0);

  CHECK(halfspace_suite(2, 20, 500, 3).passed());
  CHECK(halfspace_suite(3, 20, 500, 4).passed());
}

TEST_CASE("audit of random configurations") {
  std::mt19937_64 rng(21);
  for (int d = 1; d <= 3; ++d) {
    for (int t = 0; t < 30; ++t) {
      const AuditTrace trace = audit(random_config(d, d + 1, d + 2, rng), {.halfspace_samples = 100});
      REQUIRE(trace.steps.size() == audit_step_names().size());
      for (std::size_t k = 0; k < trace.steps.size(); ++k) CHECK(trace.steps[k].name == audit_step_names()[k]);
      CHECK(trace.step("degeneracy").status == StepStatus::pass);
      CHECK(trace.step("definition-check").status == StepStatus::fail);
      CHECK(trace.step("definition-check").margin < 0);
      CHECK(trace.step("final-contradiction").status != StepStatus::not_evaluated);
    }
  }
  const AuditTrace strict = audit(random_config(2, 3, 4, rng), {.diagnostic = false});
  CHECK(strict.step("observation-1").status == StepStatus::not_evaluated);
  CHECK(strict.step("final-contradiction").status == StepStatus::not_evaluated);
}

TEST_CASE("audit of a near-realization pinpoints the broken chain") {
  SearchParams params;
  params.restarts = 64;
  const RankTable target = construct_unrealizable(ConstructionChoice::identity(1));
  const SearchResult r = search_realization(target, 1, params);
  REQUIRE(r.status == SearchStatus::exhausted);
  const AuditTrace trace = audit(r.best);
  const AuditStep& def = trace.step("definition-check");
  CHECK(def.status == StepStatus::fail);
  CHECK(std::isfinite(def.margin));
  CHECK(def.margin < 0);
  bool names_violation = false;
  for (const auto& n : def.notes) names_violation = names_violation || n.find("violated") != std::string::npos;
  CHECK(names_violation);
}

TEST_CASE("audit guards") {
  Configuration c = line_config({0, 3}, {1, 8, -2.2});
  c.Q[1] = c.Q[0];
  const AuditTrace halted = audit(c);
  CHECK(halted.halted);
  CHECK(halted.step("degeneracy").status == StepStatus::fail);
  CHECK(halted.step("definition-check").status == StepStatus::not_evaluated);
  CHECK_THROWS_AS(audit(line_config({0, 3, 5}, {1, 8, -2.2})), ShapeError);
}

TEST_CASE("no random configuration satisfies the chain predicate") {
  CHECK(chain_predicate_suite(2, 20000, 5).passed());
  CHECK(chain_predicate_suite(1, 20000, 6, ChainReading::full_row).passed());
}
