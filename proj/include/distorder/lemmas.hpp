#pragma once

// Mechanical checks of the geometric steps of the impossibility argument
// on concrete point sets.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "distorder/configuration.hpp"
#include "distorder/geometry.hpp"
#include "distorder/rank_table.hpp"

namespace distorder {

// --- cyclic-chain circumcenter lemma ----------------------------------------
//
// For X, Y of d+1 points in R^d: if every y_i sees X in the cyclic order
// x_i, x_{i+1}, ..., x_{i-1} (nearest first), the circumcenter O(X) lies in
// the interior of conv(Y).

struct LemmaHypothesis {
  bool holds = false;
  // permutations[i] = distance_permutation(y_i, X)
  std::vector<std::vector<int>> permutations;
};

LemmaHypothesis lemma_hypothesis(std::span<const Point> xs, std::span<const Point> ys, double rel_tol = kDefaultRelTol);
bool lemma_hypothesis_holds(std::span<const Point> xs, std::span<const Point> ys, double rel_tol = kDefaultRelTol);

struct LemmaConclusion {
  Point circumcenter;
  Eigen::VectorXd barycentric;  // of circumcenter in simplex Y
  double min_coordinate = 0.0;
  bool interior = false;  // min_coordinate > tol
};

// O(X) and its barycentric coordinates in conv(Y), without checking the
// hypothesis.
LemmaConclusion circumcenter_in_hull(std::span<const Point> xs, std::span<const Point> ys, double tol = kDefaultRelTol);

// As above, but throws PreconditionError when the hypothesis fails.
LemmaConclusion lemma_conclusion_check(std::span<const Point> xs, std::span<const Point> ys, double tol = kDefaultRelTol);

// Random instance satisfying the hypothesis: a simplex X with
// |det| >= 0.05 * scale^d, and each y_i placed in the cell of the bisector
// arrangement with permutation (i, i+1, ..., i-1) by prescribing its
// squared distances to X.
struct LemmaPair {
  std::vector<Point> xs;
  std::vector<Point> ys;
};
LemmaPair random_lemma_pair(int d, std::uint64_t seed);

// --- the three instantiations on a (d+1, d+2) configuration ----------------

struct LemmaInstance {
  std::string name;
  std::string claim;
  // Indices of the points used as x_0..x_d and y_0..y_d.
  char x_set = 'P';
  std::vector<int> x_indices;
  char y_set = 'Q';
  std::vector<int> y_indices;
  LemmaHypothesis hypothesis;
  LemmaConclusion conclusion;
};

// (a) x_i = p_i, y_i = q_i                       -> O(P) in conv(Q_{d+1})
// (b) x_i = q_{(d+1-i) mod (d+1)}, y_i = p_i     -> O(Q_{d+1}) in conv(P)
// (c) x_i = q_{d+1-i} with indices in {1..d+1},
//     y_i = p_i                                  -> O(Q_0) in conv(P)
// Conclusions are computed whether or not the hypotheses hold.
std::array<LemmaInstance, 3> three_lemma_instances(const Configuration& c, double rel_tol = kDefaultRelTol);

// --- observation comparisons ------------------------------------------------

struct ComparisonVerdict {
  Comparison comparison;
  bool holds = false;
};

// Evaluates observation_comparisons(d) on a (d+1) x (d+2) table.
std::vector<ComparisonVerdict> observation_check(const RankTable& t);

// --- circumsphere steps -----------------------------------------------------

// A claim evaluated on concrete geometry. margin is a signed distance in
// coordinate units, positive when the claim holds; `holds` additionally
// requires it to clear rel_tol * scale.
struct Verdict {
  std::string name;
  bool holds = false;
  double margin = 0.0;
};

struct SphereSteps {
  Sphere s0;       // circumsphere of Q_0 = Q \ {q_0}
  Sphere s_last;   // circumsphere of Q_{d+1} = Q \ {q_{d+1}}
  Hyperplane h;    // through Q' = Q \ {q_0, q_{d+1}}, oriented toward q_0
  double q_last_on_s0_residual = 0.0;  // | |q_{d+1} - O(Q_0)| - r_0 | / scale
  Verdict o0_closer_to_q0;             // |O(Q_0) - q_0| < |O(Q_0) - q_{d+1}|
  Verdict olast_closer_to_q0;          // |O(Q_{d+1}) - q_0| < |O(Q_{d+1}) - q_{d+1}|
  Verdict q0_in_b0;                    // q_0 inside ball B_0
  Verdict q_last_outside_b_last;       // q_{d+1} outside ball B_{d+1}
  Verdict same_side_h;                 // q_0, q_{d+1} strictly on one side of H
};

// Needs n = d+1, m = d+2; throws DegeneracyError when Q_0, Q_{d+1} or Q'
// is affinely dependent.
SphereSteps sphere_steps(const Configuration& c, double rel_tol = kDefaultRelTol);

// --- halfspace lemma --------------------------------------------------------
//
// X a simplex, O interior, hyperplanes L_0..L_d oriented so that the closed
// positive side is L_i^+. Preconditions: O in every L_i^+ and strictly off
// L_0; hyperplanes in general position; x_i in L_i^+ and in L_j^- (j != i).
// Claim: the intersection of all L_i^+ lies in conv(X).

struct HalfspaceReport {
  bool preconditions_ok = false;
  std::vector<std::string> failed_preconditions;
  int samples = 0;
  int violations = 0;
  bool unbounded = false;  // some ray from O never leaves the intersection
  double worst_min_coordinate = 0.0;  // smallest barycentric coordinate seen
  std::vector<Point> violators;       // at most 8 kept
};

HalfspaceReport halfspace_lemma_check(std::span<const Point> xs, const Point& o, std::span<const Hyperplane> ls,
                                      int n_samples, std::uint64_t seed, double rel_tol = kDefaultRelTol);

struct HalfspaceInstance {
  std::vector<Point> xs;
  Point o;
  std::vector<Hyperplane> ls;
};

// Random instance meeting the preconditions. With `through_o`, the
// hyperplanes L_1..L_d pass through O (as the bisectors M(p_{i-1}, p_i)
// pass through O(P) in the application).
HalfspaceInstance random_halfspace_instance(int d, std::uint64_t seed, bool through_o = false);

}  // namespace distorder
