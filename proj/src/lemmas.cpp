#include "distorder/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "distorder/errors.hpp"
#include "distorder/seeding.hpp"

namespace distorder {

namespace {

void require_lemma_shape(std::span<const Point> xs, std::span<const Point> ys) {
  if (xs.empty() || xs.size() != ys.size() || xs.size() != static_cast<std::size_t>(xs.front().size() + 1)) {
    throw ShapeError("lemma needs |X| = |Y| = d+1 points in R^d");
  }
  for (const auto& y : ys)
    if (y.size() != xs.front().size()) throw ShapeError("lemma: dimension mismatch between X and Y");
}

std::vector<int> cyclic_shift(int start, int k) {
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) out[static_cast<std::size_t>(t)] = (start + t) % k;
  return out;
}

std::vector<Point> pick(const std::vector<Point>& from, const std::vector<int>& idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(from[static_cast<std::size_t>(i)]);
  return out;
}

Verdict verdict(std::string name, double margin, double tol) { return Verdict{std::move(name), margin > tol, margin}; }

}  // namespace

LemmaHypothesis lemma_hypothesis(std::span<const Point> xs, std::span<const Point> ys, double rel_tol) {
  require_lemma_shape(xs, ys);
  const int k = static_cast<int>(xs.size());
  LemmaHypothesis h;
  h.holds = true;
  for (int i = 0; i < k; ++i) {
    h.permutations.push_back(distance_permutation(ys[static_cast<std::size_t>(i)], xs, rel_tol));
    if (h.permutations.back() != cyclic_shift(i, k)) h.holds = false;
  }
  return h;
}

bool lemma_hypothesis_holds(std::span<const Point> xs, std::span<const Point> ys, double rel_tol) {
  return lemma_hypothesis(xs, ys, rel_tol).holds;
}

LemmaConclusion circumcenter_in_hull(std::span<const Point> xs, std::span<const Point> ys, double tol) {
  require_lemma_shape(xs, ys);
  LemmaConclusion out;
  out.circumcenter = circumcenter(Simplex({xs.begin(), xs.end()}));
  out.barycentric = barycentric(Simplex({ys.begin(), ys.end()}), out.circumcenter);
  out.min_coordinate = out.barycentric.minCoeff();
  out.interior = out.min_coordinate > tol;
  return out;
}

LemmaConclusion lemma_conclusion_check(std::span<const Point> xs, std::span<const Point> ys, double tol) {
  if (!lemma_hypothesis_holds(xs, ys)) {
    throw PreconditionError("lemma hypothesis fails: some y_i does not see X in cyclic order starting at x_i");
  }
  return circumcenter_in_hull(xs, ys, tol);
}

LemmaPair random_lemma_pair(int d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("d must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap(0.1, 1.0);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw Error("random_lemma_pair: could not draw a conditioned instance");
    LemmaPair pair;
    for (int i = 0; i <= d; ++i) pair.xs.push_back(random_point(d, rng));
    const double scale = diameter(pair.xs);
    Eigen::MatrixXd a(d, d);
    for (int k = 1; k <= d; ++k) a.row(k - 1) = 2.0 * (pair.xs[static_cast<std::size_t>(k)] - pair.xs[0]).transpose();
    if (std::abs(a.determinant()) / std::pow(2.0, d) < 0.05 * std::pow(scale, d)) continue;
    const auto lu = a.partialPivLu();

    for (int i = 0; i <= d; ++i) {
      // squared distances increasing along i, i+1, ..., i-1
      std::vector<double> s(static_cast<std::size_t>(d + 1));
      double acc = 0.0;
      for (int t = 0; t <= d; ++t) {
        acc += gap(rng) * scale * scale;
        s[static_cast<std::size_t>((i + t) % (d + 1))] = acc;
      }
      // 2 <y, x_k - x_0> = |x_k|^2 - |x_0|^2 - (s_k - s_0)
      Eigen::VectorXd rhs(d);
      for (int k = 1; k <= d; ++k) {
        rhs(k - 1) = pair.xs[static_cast<std::size_t>(k)].squaredNorm() - pair.xs[0].squaredNorm() -
                     (s[static_cast<std::size_t>(k)] - s[0]);
      }
      pair.ys.push_back(lu.solve(rhs));
    }
    try {
      if (lemma_hypothesis_holds(pair.xs, pair.ys)) return pair;
    } catch (const DegeneracyError&) {
    }
  }
}

std::array<LemmaInstance, 3> three_lemma_instances(const Configuration& c, double rel_tol) {
  c.validate();
  const int d = c.dim;
  if (c.n() != d + 1 || c.m() != d + 2) {
    throw ShapeError("lemma instances need |P| = d+1 and |Q| = d+2 in R^d");
  }
  std::vector<int> identity(static_cast<std::size_t>(d + 1));
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<int> b_idx(static_cast<std::size_t>(d + 1));
  std::vector<int> c_idx(static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= d; ++i) {
    b_idx[static_cast<std::size_t>(i)] = (d + 1 - i) % (d + 1);
    c_idx[static_cast<std::size_t>(i)] = d + 1 - i;
  }

  std::array<LemmaInstance, 3> out;
  out[0] = {"a", "O(P) in conv(Q_{d+1})", 'P', identity, 'Q', identity, {}, {}};
  out[1] = {"b", "O(Q_{d+1}) in conv(P)", 'Q', b_idx, 'P', identity, {}, {}};
  out[2] = {"c", "O(Q_0) in conv(P)", 'Q', c_idx, 'P', identity, {}, {}};
  for (auto& inst : out) {
    const auto xs = pick(inst.x_set == 'P' ? c.P : c.Q, inst.x_indices);
    const auto ys = pick(inst.y_set == 'P' ? c.P : c.Q, inst.y_indices);
    inst.hypothesis = lemma_hypothesis(xs, ys, rel_tol);
    inst.conclusion = circumcenter_in_hull(xs, ys, rel_tol);
  }
  return out;
}

std::vector<ComparisonVerdict> observation_check(const RankTable& t) {
  if (t.cols() != t.rows() + 1) throw ShapeError("observation check needs a (d+1) x (d+2) table");
  std::vector<ComparisonVerdict> out;
  for (const auto& cmp : observation_comparisons(t.rows() - 1)) out.push_back({cmp, t.less(cmp.lesser, cmp.greater)});
  return out;
}

SphereSteps sphere_steps(const Configuration& c, double rel_tol) {
  c.validate();
  const int d = c.dim;
  if (c.n() != d + 1 || c.m() != d + 2) throw ShapeError("sphere steps need |P| = d+1 and |Q| = d+2 in R^d");
  const double tol = rel_tol * c.scale();
  const Point& q0 = c.Q.front();
  const Point& ql = c.Q.back();

  SphereSteps out;
  out.s0 = circumsphere(Simplex(c.q_without({0})));
  out.s_last = circumsphere(Simplex(c.q_without({d + 1})));
  const auto q_prime = c.q_without({0, d + 1});
  out.h = hyperplane_through(q_prime);
  if (out.h.signed_distance(q0) < 0.0) out.h = out.h.flipped();

  out.q_last_on_s0_residual = std::abs(out.s0.margin(ql)) / c.scale();
  auto closer_to_q0 = [&](const Point& o) { return std::sqrt(squared_distance(o, ql)) - std::sqrt(squared_distance(o, q0)); };
  out.o0_closer_to_q0 = verdict("O(Q_0) closer to q_0 than q_{d+1}", closer_to_q0(out.s0.center), tol);
  out.olast_closer_to_q0 = verdict("O(Q_{d+1}) closer to q_0 than q_{d+1}", closer_to_q0(out.s_last.center), tol);
  out.q0_in_b0 = verdict("q_0 inside B_0", -out.s0.margin(q0), tol);
  out.q_last_outside_b_last = verdict("q_{d+1} outside B_{d+1}", out.s_last.margin(ql), tol);
  out.same_side_h = verdict("q_0 and q_{d+1} strictly on one side of H",
                            std::min(out.h.signed_distance(q0), out.h.signed_distance(ql)), tol);
  return out;
}

namespace {

// Every d of the normals independent, and the d+1 hyperplanes without a
// common point.
bool general_position(std::span<const Hyperplane> ls) {
  const int k = static_cast<int>(ls.size());
  const int d = k - 1;
  if (d == 1) return std::abs(ls[0].normal(0)) > 0.0 && std::abs(ls[0].offset * ls[1].normal(0) - ls[1].offset * ls[0].normal(0)) > 1e-12;
  for (int skip = 0; skip < k; ++skip) {
    Eigen::MatrixXd n(d, d);
    int r = 0;
    for (int i = 0; i < k; ++i)
      if (i != skip) n.row(r++) = ls[static_cast<std::size_t>(i)].normal.transpose();
    if (std::abs(n.determinant()) <= 1e-10) return false;
  }
  Eigen::MatrixXd aug(k, k);
  for (int i = 0; i < k; ++i) {
    aug.row(i).head(d) = ls[static_cast<std::size_t>(i)].normal.transpose();
    aug(i, d) = -ls[static_cast<std::size_t>(i)].offset;
  }
  return std::abs(aug.determinant()) > 1e-12;
}

}  // namespace

HalfspaceReport halfspace_lemma_check(std::span<const Point> xs, const Point& o, std::span<const Hyperplane> ls,
                                      int n_samples, std::uint64_t seed, double rel_tol) {
  HalfspaceReport report;
  if (xs.empty() || ls.size() != xs.size() || xs.size() != static_cast<std::size_t>(xs.front().size() + 1)) {
    throw ShapeError("halfspace lemma needs d+1 points of R^d and d+1 hyperplanes");
  }
  const int k = static_cast<int>(xs.size());
  const int d = k - 1;
  const double scale = diameter(xs);
  const double tol = rel_tol * scale;
  auto fail = [&](std::string what) { report.failed_preconditions.push_back(std::move(what)); };

  std::optional<Simplex> simplex;
  try {
    simplex.emplace(std::vector<Point>(xs.begin(), xs.end()));
  } catch (const DegeneracyError&) {
    fail("X in general position");
  }
  if (simplex && !strictly_inside(barycentric(*simplex, o), rel_tol)) fail("O in the interior of conv(X)");
  if (!(ls[0].signed_distance(o) > tol)) fail("O not on L_0 (strictly on L_0^+)");
  for (int i = 1; i < k; ++i) {
    if (ls[static_cast<std::size_t>(i)].signed_distance(o) < -tol) fail("O in L_" + std::to_string(i) + "^+");
  }
  if (!general_position(ls)) fail("hyperplanes in general position");
  for (int i = 0; i < k; ++i) {
    const auto& x = xs[static_cast<std::size_t>(i)];
    if (ls[static_cast<std::size_t>(i)].signed_distance(x) < -tol) {
      fail("x_" + std::to_string(i) + " in L_" + std::to_string(i) + "^+");
    }
    for (int j = 0; j < k; ++j) {
      if (j != i && ls[static_cast<std::size_t>(j)].signed_distance(x) > tol) {
        fail("x_" + std::to_string(i) + " in L_" + std::to_string(j) + "^-");
      }
    }
  }
  report.preconditions_ok = report.failed_preconditions.empty();
  if (!report.preconditions_ok) return report;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  report.worst_min_coordinate = std::numeric_limits<double>::infinity();
  // Hyperplanes through O cut the feasible directions down to a cone; each
  // raw direction g is folded into it by u = g + A^T y with A u = |A g|,
  // A holding the normals of the hyperplanes through O.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (std::abs(ls[i].signed_distance(o)) <= tol) active.push_back(i);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(active.size()), d);
  for (std::size_t r = 0; r < active.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = ls[active[r]].normal.transpose();
  const Eigen::LDLT<Eigen::MatrixXd> gram((a * a.transpose()).eval());
  const auto fold = [&](Vector g) {
    if (active.empty()) return g;
    const Eigen::VectorXd ag = a * g;
    g += a.transpose() * gram.solve((ag.cwiseAbs() - ag).eval());
    return Vector(g.normalized());
  };

  const long max_draws = 100L * std::max(1, n_samples);
  for (long draw = 0; draw < max_draws && report.samples < n_samples; ++draw) {
    const Vector u = fold(random_unit_vector(d, rng));
    double reach = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const auto& l = ls[i];
      const double rate = l.normal.dot(u);
      const bool through_o = std::find(active.begin(), active.end(), i) != active.end();
      if (through_o && rate > -1e-12) continue;
      if (rate < 0.0) reach = std::min(reach, std::max(0.0, l.signed_distance(o)) / -rate);
    }
    if (std::isinf(reach)) {
      report.unbounded = true;
      ++report.violations;
      continue;
    }
    if (reach <= 0.0) continue;  // ray leaves immediately through a hyperplane holding O
    const Point p = o + unit(rng) * reach * u;
    ++report.samples;
    const double low = barycentric(*simplex, p).minCoeff();
    report.worst_min_coordinate = std::min(report.worst_min_coordinate, low);
    if (low < -rel_tol) {
      ++report.violations;
      if (report.violators.size() < 8) report.violators.push_back(p);
    }
  }
  return report;
}

HalfspaceInstance random_halfspace_instance(int d, std::uint64_t seed, bool through_o) {
  if (d < 1) throw InvalidArgument("d must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw Error("random_halfspace_instance: could not draw an instance");
    HalfspaceInstance inst;
    for (int i = 0; i <= d; ++i) inst.xs.push_back(random_point(d, rng));
    const double scale = diameter(inst.xs);
    Eigen::MatrixXd e(d, d);
    for (int i = 1; i <= d; ++i) e.col(i - 1) = inst.xs[static_cast<std::size_t>(i)] - inst.xs[0];
    if (std::abs(e.determinant()) < 0.05 * std::pow(scale, d)) continue;

    // O at barycentric weights bounded away from zero
    Eigen::VectorXd w(d + 1);
    for (int i = 0; i <= d; ++i) w(i) = 0.2 + unit(rng);
    w /= w.sum();
    inst.o = Point::Zero(d);
    for (int i = 0; i <= d; ++i) inst.o += w(i) * inst.xs[static_cast<std::size_t>(i)];

    bool ok = true;
    for (int i = 0; i <= d && ok; ++i) {
      const Point& xi = inst.xs[static_cast<std::size_t>(i)];
      std::vector<Point> facet;
      for (int j = 0; j <= d; ++j)
        if (j != i) facet.push_back(inst.xs[static_cast<std::size_t>(j)]);
      Vector base = d == 1 ? Vector(xi - facet.front()) : Vector(hyperplane_through(facet).normal);
      if (base.dot(xi - facet.front()) < 0.0) base = -base;
      base.normalize();
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        Vector n = base;
        if (d > 1) n = (base + 0.3 * random_unit_vector(d, rng)).normalized();
        double hi_facet = -std::numeric_limits<double>::infinity();
        for (const auto& f : facet) hi_facet = std::max(hi_facet, n.dot(f));
        const double lo_keep = std::min(n.dot(inst.o), n.dot(xi));
        if (!(hi_facet < lo_keep - 0.02 * scale)) continue;
        double offset = hi_facet + (0.1 + 0.8 * unit(rng)) * (lo_keep - hi_facet);
        if (through_o && i > 0) {
          if (!(n.dot(xi) > n.dot(inst.o) + 0.02 * scale)) continue;
          offset = n.dot(inst.o);
        }
        inst.ls.push_back({n, offset});
        placed = true;
      }
      ok = placed;
    }
    if (!ok) continue;
    const auto check = halfspace_lemma_check(inst.xs, inst.o, inst.ls, 0, 0);
    if (check.preconditions_ok) return inst;
  }
}

}  // namespace distorder
