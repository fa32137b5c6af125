#pragma once

// Numerical kernel for the objects of the impossibility argument:
// bisector hyperplanes, circumcenters and circumspheres of simplices,
// barycentric containment, distance permutations and the dual cones of the
// bisector arrangement.
//
// Everything is double precision with explicit tolerances. Degenerate input
// (ties, affinely dependent vertices, singular generator sets) raises
// DegeneracyError instead of being resolved. Absolute tolerances are
// expressed relative to the diameter ("scale") of the input points.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace distorder {

using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultRelTol = 1e-9;

double squared_distance(const Point& a, const Point& b);

// Largest pairwise distance; 0 for fewer than two points.
double diameter(std::span<const Point> points);

// {x : <normal, x> = offset} with a unit normal.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  double signed_distance(const Point& p) const { return normal.dot(p) - offset; }
  Hyperplane flipped() const { return {-normal, -offset}; }
};

enum class Side { negative, on, positive };

const char* to_string(Side s);

Side side(const Hyperplane& h, const Point& p, double tol);

// Perpendicular bisector of xy, normal pointing toward y: the closed
// positive side is the halfspace of points at least as close to y as to x.
Hyperplane bisector(const Point& x, const Point& y);

// Hyperplane through d points of R^d; the sign of the normal is arbitrary.
Hyperplane hyperplane_through(std::span<const Point> points);

// Closed ball / sphere.
struct Sphere {
  Point center;
  double radius = 0.0;

  // Distance from p to the sphere, signed: positive outside the ball.
  double margin(const Point& p) const { return std::sqrt(squared_distance(p, center)) - radius; }
};

// d+1 affinely independent points of R^d.
class Simplex {
 public:
  // Throws DegeneracyError when |det[v_i - v_0]| <= 1e-10 * scale^d, and
  // ShapeError when the vertex count is not dim + 1.
  explicit Simplex(std::vector<Point> vertices);

  int dim() const { return static_cast<int>(vertices_.front().size()); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  double scale() const { return scale_; }

  // Edge matrix with columns v_i - v_0, i = 1..d.
  const Eigen::MatrixXd& edges() const { return edges_; }

 private:
  std::vector<Point> vertices_;
  Eigen::MatrixXd edges_;
  double scale_ = 0.0;
};

Point circumcenter(const Simplex& s);
Sphere circumsphere(const Simplex& s);

// Coordinates lambda with sum 1 and sum lambda_i v_i = p.
Eigen::VectorXd barycentric(const Simplex& s, const Point& p);
inline bool strictly_inside(const Eigen::VectorXd& bary, double tol) { return bary.minCoeff() > tol; }
inline bool inside_closed(const Eigen::VectorXd& bary, double tol) { return bary.minCoeff() >= -tol; }

// Indices of X sorted by distance from y. Throws DegeneracyError when two
// squared distances differ by at most rel_tol times the largest of them.
std::vector<int> distance_permutation(const Point& y, std::span<const Point> xs, double rel_tol = kDefaultRelTol);

// v_j = x_j - x_{j+1}, indices mod |X|.
std::vector<Vector> edge_vectors(std::span<const Point> xs);

// Generators of the dual of the cone C_i holding the points whose distance
// permutation is (i, i+1, ..., i-1): v_i, v_{i+1}, ..., v_{i-2}, i.e. all
// edge vectors except v_{i-1}.
std::vector<Vector> dual_cone_generators(std::span<const Vector> edges, int i);

struct ConeMembership {
  bool member = false;
  Eigen::VectorXd coefficients;
};

// Solves u = sum alpha_t g_t; member iff every alpha_t >= -tol. Throws
// DegeneracyError on a (numerically) singular generator matrix.
ConeMembership dual_cone_membership(const Vector& u, std::span<const Vector> generators, double tol = kDefaultRelTol);

struct UncoveredDirection {
  Vector direction;
  // coefficients[c] solves direction = sum alpha g for the c-th tested cone.
  std::vector<Eigen::VectorXd> coefficients;
};

struct CoverageReport {
  int samples = 0;
  int uncovered = 0;
  std::vector<UncoveredDirection> counterexamples;  // at most 8 kept
};

// Draws n_samples random unit directions and checks that each lies in at
// least one of the dual cones C_i^*, i in `cones` (all d+1 when empty).
CoverageReport cone_coverage_check(std::span<const Point> xs, int n_samples, std::uint64_t seed,
                                   std::span<const int> cones = {}, double tol = 1e-12);

// Uniform direction on the unit sphere of R^dim.
Vector random_unit_vector(int dim, std::mt19937_64& rng);

// Point with coordinates uniform in [lo, hi]^dim.
Point random_point(int dim, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0);

}  // namespace distorder
