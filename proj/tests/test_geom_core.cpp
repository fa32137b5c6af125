#include <doctest.h>

#include <random>

#include "distorder/errors.hpp"
#include "distorder/geometry.hpp"
#include "distorder/suites.hpp"

using namespace distorder;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p[k++] = x;
  return p;
}

}  // namespace

TEST_CASE("squared distance") {
  CHECK(squared_distance(pt({0, 0}), pt({3, 4})) == 25.0);
  CHECK(squared_distance(pt({1.5, -2}), pt({1.5, -2})) == 0.0);
  CHECK(squared_distance(pt({1}), pt({-2})) == 9.0);
}

TEST_CASE("bisector and side") {
  const Hyperplane h = bisector(pt({0}), pt({2}));
  CHECK(h.normal[0] == doctest::Approx(1.0));
  CHECK(h.offset == doctest::Approx(1.0));
  CHECK(side(h, pt({5}), 1e-12) == Side::positive);
  CHECK(side(h, pt({1}), 1e-12) == Side::on);
  CHECK(side(h, pt({-1}), 1e-12) == Side::negative);

  const Hyperplane h2 = bisector(pt({0, 0}), pt({2, 0}));
  CHECK(h2.normal.isApprox(pt({1, 0})));
  CHECK(h2.offset == doctest::Approx(1.0));
  CHECK(side(h2, pt({2, 0}), 1e-12) == Side::positive);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Point x = random_point(3, rng);
    const Point y = random_point(3, rng);
    const Hyperplane b = bisector(x, y);
    CHECK(std::abs(b.signed_distance((x + y) / 2)) < 1e-12);
    CHECK(std::abs(b.normal.norm() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(bisector(pt({1, 1}), pt({1, 1})), DegeneracyError);
}

TEST_CASE("circumcenter") {
  CHECK(circumcenter(Simplex({pt({0}), pt({2})}))[0] == doctest::Approx(1.0));
  const Point o = circumcenter(Simplex({pt({0, 0}), pt({1, 0}), pt({0, 1})}));
  CHECK(o[0] == doctest::Approx(0.5));
  CHECK(o[1] == doctest::Approx(0.5));
  std::mt19937_64 rng(9);
  std::vector<Point> v;
  for (int i = 0; i < 4; ++i) v.push_back(random_point(3, rng));
  const Simplex s(v);
  const Point c = circumcenter(s);
  const double r0 = (v[0] - c).norm();
  for (const auto& x : v) CHECK(std::abs((x - c).norm() - r0) / r0 < 1e-10);
  CHECK_THROWS_AS(Simplex({pt({0, 0}), pt({1, 1}), pt({2, 2})}), DegeneracyError);
  CHECK_THROWS_AS(Simplex({pt({0, 0}), pt({1, 1})}), ShapeError);
}

TEST_CASE("barycentric coordinates") {
  const Simplex tri({pt({0, 0}), pt({1, 0}), pt({0, 1})});
  const Eigen::VectorXd b = barycentric(tri, pt({0.3, 0.3}));
  CHECK(b[0] == doctest::Approx(0.4));
  CHECK(b[1] == doctest::Approx(0.3));
  CHECK(b[2] == doctest::Approx(0.3));
  CHECK(strictly_inside(b, 1e-9));
  const Eigen::VectorXd v0 = barycentric(tri, pt({0, 0}));
  CHECK(v0[0] == doctest::Approx(1.0));
  CHECK(std::abs(v0[1]) < 1e-15);
  CHECK(std::abs(v0[2]) < 1e-15);
  CHECK_FALSE(inside_closed(barycentric(tri, pt({1, 1})), 1e-9));
}

TEST_CASE("distance permutation") {
  const std::vector<Point> line = {pt({-1}), pt({1})};
  CHECK(distance_permutation(pt({-0.5}), line) == std::vector<int>{0, 1});
  const std::vector<Point> tri = {pt({0, 0}), pt({1, 0}), pt({0, 1})};
  CHECK(distance_permutation(pt({0.9, 0.1}), tri) == std::vector<int>{1, 0, 2});
  CHECK_THROWS_AS(distance_permutation(pt({0.0}), line), DegeneracyError);
}

TEST_CASE("edge vectors and dual cones") {
  const std::vector<Point> tri = {pt({0, 0}), pt({1, 0}), pt({0, 1})};
  const auto v = edge_vectors(tri);
  CHECK(v[0].isApprox(pt({-1, 0})));
  CHECK(v[1].isApprox(pt({1, -1})));
  CHECK(v[2].isApprox(pt({0, 1})));
  CHECK((v[0] + v[1] + v[2]).norm() == 0.0);
  const auto v1 = edge_vectors(std::vector<Point>{pt({-1}), pt({1})});
  CHECK(v1[0][0] == -2.0);
  CHECK(v1[1][0] == 2.0);

  const std::vector<Vector> g = {pt({1, -1}), pt({0, 1})};
  const auto m = dual_cone_membership(pt({1, 0}), g);
  CHECK(m.member);
  CHECK(m.coefficients[0] == doctest::Approx(1.0));
  CHECK(m.coefficients[1] == doctest::Approx(1.0));
  const auto self = dual_cone_membership(g[0], g);
  CHECK(self.member);
  CHECK(self.coefficients[0] == doctest::Approx(1.0));
  CHECK(std::abs(self.coefficients[1]) < 1e-15);
  const std::vector<Vector> axes = {pt({1, 0}), pt({0, 1})};
  const auto neg = dual_cone_membership(pt({-1, -1}), axes);
  CHECK_FALSE(neg.member);
  CHECK(neg.coefficients[0] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(dual_cone_membership(pt({1, 0}), std::vector<Vector>{pt({1, 1}), pt({2, 2})}), DegeneracyError);

  // In d = 1, C_0^* is generated by v_0 alone and C_1^* by v_1.
  const auto gen0 = dual_cone_generators(v1, 0);
  REQUIRE(gen0.size() == 1);
  CHECK(gen0[0][0] == -2.0);
  CHECK(dual_cone_generators(v1, 1)[0][0] == 2.0);
}

TEST_CASE("dual cone coverage") {
  const std::vector<Point> tri = {pt({0, 0}), pt({1, 0}), pt({0, 1})};
  CHECK(cone_coverage_check(tri, 1000, 1).uncovered == 0);
  CHECK(cone_coverage_check(std::vector<Point>{pt({-1}), pt({1})}, 200, 2).uncovered == 0);
  const std::vector<int> without_first = {1, 2};
  const auto partial = cone_coverage_check(tri, 1000, 1, without_first);
  CHECK(partial.uncovered > 0);
  CHECK_FALSE(partial.counterexamples.empty());
}

TEST_CASE("hyperplane through points") {
  const Hyperplane h = hyperplane_through(std::vector<Point>{pt({0, 0}), pt({1, 0})});
  CHECK(std::abs(std::abs(h.normal[1]) - 1.0) < 1e-12);
  CHECK(std::abs(h.offset) < 1e-12);
  const Hyperplane h1 = hyperplane_through(std::vector<Point>{pt({3})});
  CHECK(std::abs(h1.signed_distance(pt({3}))) < 1e-12);
  std::mt19937_64 rng(4);
  std::vector<Point> three;
  for (int i = 0; i < 3; ++i) three.push_back(random_point(3, rng));
  const Hyperplane h3 = hyperplane_through(three);
  for (const auto& p : three) CHECK(std::abs(h3.signed_distance(p)) < 1e-10 * diameter(three));
  CHECK_THROWS_AS(hyperplane_through(std::vector<Point>{pt({0, 0}), pt({0, 0})}), DegeneracyError);
}

TEST_CASE("randomized kernel properties") {
  CHECK(bisector_separation_suite(10000, 1).passed());
  CHECK(cone_permutation_suite(10000, 2).passed());
  CHECK(kernel_accuracy_suite(2000, 3).passed());
  for (int d = 1; d <= 4; ++d) CHECK(cone_coverage_suite(d, 50, 200, 10 + static_cast<std::uint64_t>(d)).passed());
}
