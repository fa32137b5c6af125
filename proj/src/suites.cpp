#include "distorder/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "distorder/configuration.hpp"
#include "distorder/errors.hpp"
#include "distorder/geometry.hpp"
#include "distorder/lemmas.hpp"
#include "distorder/seeding.hpp"

namespace distorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Point> random_points(int count, int dim, std::mt19937_64& rng) {
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back(random_point(dim, rng));
  return out;
}

// Random simplex with |det| > min_det * scale^d.
Simplex conditioned_simplex(int d, std::mt19937_64& rng, double min_det) {
  while (true) {
    auto xs = random_points(d + 1, d, rng);
    const double scale = diameter(xs);
    Eigen::MatrixXd e(d, d);
    for (int i = 0; i < d; ++i) e.col(i) = xs[static_cast<std::size_t>(i + 1)] - xs[0];
    if (std::abs(e.determinant()) > min_det * std::pow(scale, d)) return Simplex(std::move(xs));
  }
}

Eigen::MatrixXd random_rotation(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  return q;
}

}  // namespace

SuiteResult circumcenter_lemma_suite(int d, int trials, std::uint64_t seed) {
  SuiteResult r{"circumcenter-lemma d=" + std::to_string(d), trials, 0, kInf, ""};
  for (int t = 0; t < trials; ++t) {
    const LemmaPair pair = random_lemma_pair(d, derive_seed(seed, static_cast<std::uint64_t>(t)));
    if (!lemma_hypothesis_holds(pair.xs, pair.ys)) {
      ++r.failures;
      continue;
    }
    const LemmaConclusion c = circumcenter_in_hull(pair.xs, pair.ys, 1e-9);
    r.worst = std::min(r.worst, c.min_coordinate);
    if (!c.interior) ++r.failures;
  }
  r.detail = "smallest barycentric coordinate of O(X) in conv(Y)";
  return r;
}

SuiteResult halfspace_suite(int d, int instances, int samples, std::uint64_t seed) {
  SuiteResult r{"halfspace-lemma d=" + std::to_string(d), instances, 0, kInf, ""};
  long violations = 0;
  long drawn = 0;
  for (int t = 0; t < instances; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    const HalfspaceInstance inst = random_halfspace_instance(d, s, t % 2 == 1);
    const HalfspaceReport rep = halfspace_lemma_check(inst.xs, inst.o, inst.ls, samples, derive_seed(s, 1));
    drawn += rep.samples;
    violations += rep.violations;
    if (!rep.preconditions_ok || rep.violations > 0 || rep.samples < samples) ++r.failures;
    if (rep.preconditions_ok) r.worst = std::min(r.worst, rep.worst_min_coordinate);
  }
  r.detail = std::to_string(drawn) + " samples, " + std::to_string(violations) + " outside conv(X)";
  return r;
}

SuiteResult cone_coverage_suite(int d, int simplices, int directions, std::uint64_t seed) {
  SuiteResult r{"cone-coverage d=" + std::to_string(d), simplices, 0, 0.0, ""};
  std::mt19937_64 rng(seed);
  long uncovered = 0;
  for (int t = 0; t < simplices; ++t) {
    const Simplex s = conditioned_simplex(d, rng, 1e-3);
    Vector sum = Vector::Zero(d);
    for (const auto& v : edge_vectors(s.vertices())) sum += v;
    r.worst = std::max(r.worst, sum.norm());
    const CoverageReport rep = cone_coverage_check(s.vertices(), directions, derive_seed(seed, static_cast<std::uint64_t>(t)));
    uncovered += rep.uncovered;
    if (rep.uncovered > 0 || sum.norm() > 1e-12) ++r.failures;
  }
  r.detail = std::to_string(uncovered) + " uncovered of " + std::to_string(static_cast<long>(simplices) * directions) +
             " directions; worst is the largest |sum v_j|";
  return r;
}

SuiteResult cone_permutation_suite(int trials, std::uint64_t seed) {
  SuiteResult r{"cone-permutation consistency", trials, 0, 0.0, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_d(1, 4);
  long in_cone = 0;
  for (int t = 0; t < trials; ++t) {
    const int d = pick_d(rng);
    const auto xs = random_points(d + 1, d, rng);
    const Point y = random_point(d, rng);
    std::vector<int> perm;
    try {
      perm = distance_permutation(y, xs);
    } catch (const DegeneracyError&) {
      continue;
    }
    for (int i = 0; i <= d; ++i) {
      bool shift = true;
      for (int k = 0; k <= d; ++k) shift = shift && perm[static_cast<std::size_t>(k)] == (i + k) % (d + 1);
      bool sides = true;
      for (int k = 0; k < d; ++k) {
        const auto& near = xs[static_cast<std::size_t>((i + k) % (d + 1))];
        const auto& far = xs[static_cast<std::size_t>((i + k + 1) % (d + 1))];
        sides = sides && side(bisector(far, near), y, 0.0) == Side::positive;
      }
      if (shift != sides) ++r.failures;
      if (shift) ++in_cone;
    }
  }
  r.detail = std::to_string(in_cone) + " trials landed in some cone C_i";
  return r;
}

SuiteResult bisector_separation_suite(int trials, std::uint64_t seed) {
  SuiteResult r{"bisector separation", trials, 0, 0.0, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_d(1, 4);
  for (int t = 0; t < trials; ++t) {
    const int d = pick_d(rng);
    const Point x = random_point(d, rng);
    const Point y = random_point(d, rng);
    const Point p = random_point(d, rng);
    const double dx = squared_distance(p, x);
    const double dy = squared_distance(p, y);
    if (std::abs(dx - dy) <= 1e-9 * std::max(dx, dy)) continue;
    const bool positive = side(bisector(x, y), p, 1e-12) == Side::positive;
    if (positive != (dy < dx)) ++r.failures;
  }
  return r;
}

SuiteResult chain_predicate_suite(int d, int trials, std::uint64_t seed, ChainReading reading) {
  SuiteResult r{std::string("chain predicate (") + to_string(reading) + ") d=" + std::to_string(d), trials, 0, 0.0,
                ""};
  std::mt19937_64 rng(seed);
  long discarded = 0;
  for (int t = 0; t < trials;) {
    Configuration c;
    c.dim = d;
    c.P = random_points(d + 1, d, rng);
    c.Q = random_points(d + 2, d, rng);
    RankTable table(2, 2, {0, 1, 2, 3});
    try {
      table = induced_order(c);
    } catch (const DegeneracyError&) {
      ++discarded;
      continue;
    }
    ++t;
    if (is_unrealizable(table, reading)) ++r.failures;
  }
  r.detail = std::to_string(discarded) + " degenerate draws discarded";
  return r;
}

SuiteResult kernel_accuracy_suite(int trials, std::uint64_t seed, double bound) {
  SuiteResult r{"kernel accuracy", trials, 0, 0.0, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_d(1, 6);
  double worst_circ = 0.0;
  double worst_bary = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int d = pick_d(rng);
    const Simplex s = conditioned_simplex(d, rng, 1e-3);
    const Point o = circumcenter(s);
    double lo = kInf;
    double hi = 0.0;
    double mean = 0.0;
    for (const auto& v : s.vertices()) {
      const double dist = (v - o).norm();
      lo = std::min(lo, dist);
      hi = std::max(hi, dist);
      mean += dist / (d + 1);
    }
    const double circ = (hi - lo) / mean;
    Point centroid = Point::Zero(d);
    for (const auto& v : s.vertices()) centroid += v / (d + 1);
    const Point p = centroid + 2.0 * s.scale() * random_point(d, rng);
    const Eigen::VectorXd bary = barycentric(s, p);
    Point back = Point::Zero(d);
    for (int i = 0; i <= d; ++i) back += bary[i] * s.vertex(i);
    const double bary_err = std::max((back - p).norm() / s.scale(), std::abs(bary.sum() - 1.0));
    worst_circ = std::max(worst_circ, circ);
    worst_bary = std::max(worst_bary, bary_err);
    if (!(circ < bound) || !(bary_err < bound)) ++r.failures;
  }
  r.worst = std::max(worst_circ, worst_bary);
  std::ostringstream os;
  os << "circumcenter residual " << worst_circ << ", barycentric error " << worst_bary;
  r.detail = os.str();
  return r;
}

SuiteResult similarity_invariance_suite(int trials, std::uint64_t seed) {
  SuiteResult r{"similarity invariance", trials, 0, 0.0, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_d(1, 3);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  long skipped = 0;
  for (int t = 0; t < trials; ++t) {
    const int d = pick_d(rng);
    Configuration c;
    c.dim = d;
    c.P = random_points(d + 1, d, rng);
    c.Q = random_points(d + 2, d, rng);
    const Eigen::MatrixXd rot = random_rotation(d, rng);
    const Point shift = random_point(d, rng, -10.0, 10.0);
    const double k = std::pow(10.0, log_scale(rng));
    Configuration moved = c;
    for (auto& p : moved.P) p = k * (rot * p) + shift;
    for (auto& q : moved.Q) q = k * (rot * q) + shift;
    try {
      if (!(induced_order(c, 1e-6) == induced_order(moved))) ++r.failures;
    } catch (const DegeneracyError&) {
      ++skipped;
    }
  }
  r.detail = std::to_string(skipped) + " near-tied draws skipped";
  return r;
}

}  // namespace distorder
