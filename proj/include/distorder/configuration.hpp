#pragma once

#include <vector>

#include "distorder/geometry.hpp"
#include "distorder/rank_table.hpp"

namespace distorder {

// Point sets P (n points) and Q (m points) in R^dim.
struct Configuration {
  int dim = 1;
  std::vector<Point> P;
  std::vector<Point> Q;

  int n() const { return static_cast<int>(P.size()); }
  int m() const { return static_cast<int>(Q.size()); }

  // Throws ShapeError unless 2 <= n <= m and every point has dim coordinates,
  // InvalidArgument on non-finite coordinates.
  void validate() const;

  // Q with the listed indices removed, in index order.
  std::vector<Point> q_without(std::initializer_list<int> drop) const;

  std::vector<Point> all_points() const;
  double scale() const;

  bool operator==(const Configuration& other) const;
};

// Squared distances |p_i - q_j|^2, row-major.
std::vector<double> pair_distances(const Configuration& c);

// Order on P x Q induced by the distances. Throws DegeneracyError listing
// every pair of cells whose squared distances differ by at most
// rel_tol * (largest squared distance).
RankTable induced_order(const Configuration& c, double rel_tol = kDefaultRelTol);

// Smallest gap between consecutive squared distances (sorted); the
// quantity the tie check compares against.
double min_distance_gap(const Configuration& c);

}  // namespace distorder
