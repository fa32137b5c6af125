#include "distorder/configuration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "distorder/errors.hpp"

namespace distorder {

void Configuration::validate() const {
  if (dim < 1) throw ShapeError("configuration dimension must be positive");
  if (n() < 2 || m() < n()) {
    throw ShapeError("configuration needs 2 <= |P| <= |Q|, got |P|=" + std::to_string(n()) +
                     " |Q|=" + std::to_string(m()));
  }
  for (const auto* set : {&P, &Q}) {
    for (const auto& p : *set) {
      if (p.size() != dim) throw ShapeError("point with " + std::to_string(p.size()) + " coordinates in R^" + std::to_string(dim));
      if (!p.allFinite()) throw InvalidArgument("point with non-finite coordinates");
    }
  }
}

std::vector<Point> Configuration::q_without(std::initializer_list<int> drop) const {
  std::vector<Point> out;
  for (int j = 0; j < m(); ++j) {
    if (std::find(drop.begin(), drop.end(), j) == drop.end()) out.push_back(Q[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<Point> Configuration::all_points() const {
  std::vector<Point> out(P);
  out.insert(out.end(), Q.begin(), Q.end());
  return out;
}

double Configuration::scale() const { return diameter(all_points()); }

bool Configuration::operator==(const Configuration& other) const {
  if (dim != other.dim || P.size() != other.P.size() || Q.size() != other.Q.size()) return false;
  for (std::size_t i = 0; i < P.size(); ++i)
    if (P[i] != other.P[i]) return false;
  for (std::size_t j = 0; j < Q.size(); ++j)
    if (Q[j] != other.Q[j]) return false;
  return true;
}

std::vector<double> pair_distances(const Configuration& c) {
  std::vector<double> sq;
  sq.reserve(static_cast<std::size_t>(c.n() * c.m()));
  for (const auto& p : c.P)
    for (const auto& q : c.Q) sq.push_back(squared_distance(p, q));
  return sq;
}

namespace {

std::vector<int> sorted_cells(const std::vector<double>& sq) {
  std::vector<int> order(sq.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sq[static_cast<std::size_t>(a)] < sq[static_cast<std::size_t>(b)]; });
  return order;
}

}  // namespace

RankTable induced_order(const Configuration& c, double rel_tol) {
  c.validate();
  const auto sq = pair_distances(c);
  const auto order = sorted_cells(sq);
  const double scale = sq[static_cast<std::size_t>(order.back())];
  const int m = c.m();

  std::ostringstream ties;
  int tie_count = 0;
  for (std::size_t t = 1; t < order.size(); ++t) {
    const int a = order[t - 1];
    const int b = order[t];
    const double gap = sq[static_cast<std::size_t>(b)] - sq[static_cast<std::size_t>(a)];
    if (gap <= rel_tol * scale) {
      ties << (tie_count++ ? "; " : "") << "(" << a / m << "," << a % m << ")~(" << b / m << "," << b % m
           << ") gap " << gap;
    }
  }
  if (tie_count > 0) {
    throw DegeneracyError("configuration has " + std::to_string(tie_count) + " tied distance pair(s): " + ties.str());
  }

  std::vector<int> ranks(sq.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  return RankTable(c.n(), m, std::move(ranks));
}

double min_distance_gap(const Configuration& c) {
  const auto sq = pair_distances(c);
  const auto order = sorted_cells(sq);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t < order.size(); ++t) {
    best = std::min(best, sq[static_cast<std::size_t>(order[t])] - sq[static_cast<std::size_t>(order[t - 1])]);
  }
  return best;
}

}  // namespace distorder
