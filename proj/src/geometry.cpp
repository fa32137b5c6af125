#include "distorder/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "distorder/errors.hpp"

namespace distorder {

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.size() != b.size()) {
    throw ShapeError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

double squared_distance(const Point& a, const Point& b) {
  require_same_dim(a, b);
  return (a - b).squaredNorm();
}

double diameter(std::span<const Point> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, squared_distance(points[i], points[j]));
  return std::sqrt(best);
}

const char* to_string(Side s) {
  switch (s) {
    case Side::negative:
      return "negative";
    case Side::on:
      return "on";
    case Side::positive:
      return "positive";
  }
  return "?";
}

Side side(const Hyperplane& h, const Point& p, double tol) {
  if (h.normal.size() != p.size()) throw ShapeError("side: dimension mismatch");
  const double s = h.signed_distance(p);
  if (s > tol) return Side::positive;
  if (s < -tol) return Side::negative;
  return Side::on;
}

Hyperplane bisector(const Point& x, const Point& y) {
  require_same_dim(x, y);
  const Vector diff = y - x;
  const double len = diff.norm();
  if (!(len > 0.0) || len <= 1e-14 * std::max(x.norm(), y.norm())) {
    throw DegeneracyError("bisector of coincident points");
  }
  Hyperplane h{diff / len, 0.0};
  h.offset = h.normal.dot(0.5 * (x + y));
  return h;
}

Hyperplane hyperplane_through(std::span<const Point> points) {
  if (points.empty()) throw ShapeError("hyperplane_through: no points");
  const auto dim = points.front().size();
  if (points.size() != static_cast<std::size_t>(dim)) {
    throw ShapeError("hyperplane_through needs exactly d points in R^d, got " + std::to_string(points.size()) +
                     " in R^" + std::to_string(dim));
  }
  for (const auto& p : points) require_same_dim(p, points.front());
  if (dim == 1) return Hyperplane{Vector::Ones(1), points.front()(0)};

  const double scale = diameter(points);
  if (!(scale > 0.0)) throw DegeneracyError("hyperplane_through: coincident points");
  Eigen::MatrixXd spans(dim - 1, dim);
  for (Eigen::Index i = 1; i < dim; ++i) spans.row(i - 1) = (points[static_cast<std::size_t>(i)] - points[0]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(spans, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * scale) throw DegeneracyError("hyperplane_through: points are affinely dependent");
  Hyperplane h{svd.matrixV().col(dim - 1).normalized(), 0.0};
  double offset = 0.0;
  for (const auto& p : points) offset += h.normal.dot(p);
  h.offset = offset / static_cast<double>(dim);
  return h;
}

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ShapeError("simplex without vertices");
  const auto d = vertices_.front().size();
  if (d < 1 || vertices_.size() != static_cast<std::size_t>(d + 1)) {
    throw ShapeError("a simplex in R^" + std::to_string(d) + " needs " + std::to_string(d + 1) + " vertices, got " +
                     std::to_string(vertices_.size()));
  }
  for (const auto& v : vertices_) {
    require_same_dim(v, vertices_.front());
    if (!v.allFinite()) throw InvalidArgument("simplex vertex has non-finite coordinates");
  }
  scale_ = diameter(vertices_);
  edges_.resize(d, d);
  for (Eigen::Index i = 1; i <= d; ++i) edges_.col(i - 1) = vertices_[static_cast<std::size_t>(i)] - vertices_[0];
  const double det = std::abs(edges_.determinant());
  if (!(scale_ > 0.0) || det <= 1e-10 * std::pow(scale_, static_cast<double>(d))) {
    throw DegeneracyError("simplex vertices are affinely dependent");
  }
}

// With y = x - v_0 the equidistance conditions become the chord equations
// 2 <v_i - v_0, y> = |v_i - v_0|^2, i = 1..d.
Point circumcenter(const Simplex& s) {
  const auto& e = s.edges();
  const Eigen::VectorXd rhs = e.colwise().squaredNorm().transpose();
  const Eigen::VectorXd y = (2.0 * e.transpose()).colPivHouseholderQr().solve(rhs);
  return s.vertex(0) + y;
}

Sphere circumsphere(const Simplex& s) {
  Point c = circumcenter(s);
  double r = 0.0;
  for (const auto& v : s.vertices()) r += std::sqrt(squared_distance(c, v));
  r /= static_cast<double>(s.vertices().size());
  return Sphere{std::move(c), r};
}

Eigen::VectorXd barycentric(const Simplex& s, const Point& p) {
  if (p.size() != s.dim()) throw ShapeError("barycentric: dimension mismatch");
  const Eigen::VectorXd tail = s.edges().colPivHouseholderQr().solve(p - s.vertex(0));
  Eigen::VectorXd out(s.dim() + 1);
  out(0) = 1.0 - tail.sum();
  out.tail(s.dim()) = tail;
  return out;
}

std::vector<int> distance_permutation(const Point& y, std::span<const Point> xs, double rel_tol) {
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = squared_distance(y, xs[i]);
  std::vector<int> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sq[static_cast<std::size_t>(a)] < sq[static_cast<std::size_t>(b)]; });
  const double scale = sq.empty() ? 0.0 : *std::max_element(sq.begin(), sq.end());
  for (std::size_t t = 1; t < order.size(); ++t) {
    const double gap = sq[static_cast<std::size_t>(order[t])] - sq[static_cast<std::size_t>(order[t - 1])];
    if (gap <= rel_tol * scale) {
      throw DegeneracyError("point is equidistant (within tolerance) from x_" + std::to_string(order[t - 1]) +
                            " and x_" + std::to_string(order[t]));
    }
  }
  return order;
}

std::vector<Vector> edge_vectors(std::span<const Point> xs) {
  std::vector<Vector> out;
  out.reserve(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) out.push_back(xs[j] - xs[(j + 1) % xs.size()]);
  return out;
}

std::vector<Vector> dual_cone_generators(std::span<const Vector> edges, int i) {
  const int k = static_cast<int>(edges.size());
  if (k < 2) throw ShapeError("dual cone needs at least two edge vectors");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(k - 1));
  for (int t = 0; t < k - 1; ++t) out.push_back(edges[static_cast<std::size_t>(((i + t) % k + k) % k)]);
  return out;
}

namespace {

Eigen::MatrixXd generator_matrix(std::span<const Vector> generators) {
  if (generators.empty()) throw ShapeError("dual cone without generators");
  const auto d = generators.front().size();
  if (static_cast<Eigen::Index>(generators.size()) != d) {
    throw ShapeError("dual cone membership needs exactly d generators in R^d");
  }
  Eigen::MatrixXd g(d, d);
  double norms = 1.0;
  for (Eigen::Index t = 0; t < d; ++t) {
    const auto& v = generators[static_cast<std::size_t>(t)];
    if (v.size() != d) throw ShapeError("generator dimension mismatch");
    g.col(t) = v;
    norms *= v.norm();
  }
  if (!(norms > 0.0) || std::abs(g.determinant()) <= 1e-12 * norms) {
    throw DegeneracyError("dual cone generators are linearly dependent");
  }
  return g;
}

}  // namespace

ConeMembership dual_cone_membership(const Vector& u, std::span<const Vector> generators, double tol) {
  const Eigen::MatrixXd g = generator_matrix(generators);
  if (u.size() != g.rows()) throw ShapeError("dual cone membership: dimension mismatch");
  ConeMembership out;
  out.coefficients = g.partialPivLu().solve(u);
  out.member = out.coefficients.minCoeff() >= -tol;
  return out;
}

CoverageReport cone_coverage_check(std::span<const Point> xs, int n_samples, std::uint64_t seed,
                                   std::span<const int> cones, double tol) {
  const int k = static_cast<int>(xs.size());
  if (k < 2) throw ShapeError("cone coverage needs d+1 >= 2 points");
  const int dim = static_cast<int>(xs.front().size());
  if (k != dim + 1) throw ShapeError("cone coverage needs d+1 points in R^d");

  std::vector<int> tested(cones.begin(), cones.end());
  if (tested.empty()) {
    tested.resize(static_cast<std::size_t>(k));
    std::iota(tested.begin(), tested.end(), 0);
  }
  const auto edges = edge_vectors(xs);
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> solvers;
  solvers.reserve(tested.size());
  for (int i : tested) solvers.emplace_back(generator_matrix(dual_cone_generators(edges, i)));

  CoverageReport report;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    const Vector u = random_unit_vector(dim, rng);
    ++report.samples;
    bool covered = false;
    std::vector<Eigen::VectorXd> coefs;
    for (const auto& lu : solvers) {
      Eigen::VectorXd alpha = lu.solve(u);
      if (alpha.minCoeff() >= -tol) {
        covered = true;
        break;
      }
      coefs.push_back(std::move(alpha));
    }
    if (!covered) {
      ++report.uncovered;
      if (report.counterexamples.size() < 8) report.counterexamples.push_back({u, std::move(coefs)});
    }
  }
  return report;
}

Vector random_unit_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  do {
    for (int t = 0; t < dim; ++t) v(t) = normal(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

Point random_point(int dim, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  Point p(dim);
  for (int t = 0; t < dim; ++t) p(t) = uniform(rng);
  return p;
}

}  // namespace distorder
