#pragma once

// Seeded Monte Carlo suites over the geometric lemmas and the induced-order
// map. Each is a pure function of its arguments.

#include <cstdint>
#include <string>

#include "distorder/rank_table.hpp"

namespace distorder {

struct SuiteResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  // Suite-specific extreme value (smallest margin, largest residual, ...).
  double worst = 0.0;
  std::string detail;

  bool passed() const { return trials > 0 && failures == 0; }
};

// Hypothesis-satisfying pairs (X, Y); a failure is a pair whose hypothesis
// does not hold or whose circumcenter has a barycentric coordinate <= 1e-9.
// worst: smallest coordinate seen.
SuiteResult circumcenter_lemma_suite(int d, int trials, std::uint64_t seed);

// Precondition-satisfying halfspace instances, `samples` points each; a
// failure is an instance with a precondition failure or any sample outside
// conv(X). worst: smallest barycentric coordinate of any sample.
SuiteResult halfspace_suite(int d, int instances, int samples, std::uint64_t seed);

// Dual-cone coverage over random simplices. worst: largest |sum v_j|.
SuiteResult cone_coverage_suite(int d, int simplices, int directions, std::uint64_t seed);

// distance_permutation(y, X) is the cyclic shift starting at i iff y lies on
// the positive side of every bisector M(x_{k+1}, x_k), k = i..i-2. d is drawn
// from 1..4 per trial.
SuiteResult cone_permutation_suite(int trials, std::uint64_t seed);

// side(bisector(x, y), p) is positive iff |p - y| < |p - x|; d in 1..4.
SuiteResult bisector_separation_suite(int trials, std::uint64_t seed);

// Random generic configurations with n = d+1, m = d+2, coordinates uniform
// in [-1, 1]^d; degenerate draws are discarded and redrawn. A failure is an
// induced order satisfying the chain predicate. detail reports discards.
SuiteResult chain_predicate_suite(int d, int trials, std::uint64_t seed,
                                  ChainReading reading = ChainReading::displayed);

// Circumcenter equidistance (relative residual) and barycentric
// reconstruction (relative to scale) on simplices with
// |det| > 1e-3 scale^d, d drawn from 1..6. Query points lie within two
// diameters of the centroid. worst: largest residual.
SuiteResult kernel_accuracy_suite(int trials, std::uint64_t seed, double bound = 1e-10);

// Induced order is unchanged by a random similarity (rotation, translation,
// uniform scaling) applied to both sets; d in 1..3.
SuiteResult similarity_invariance_suite(int trials, std::uint64_t seed);

}  // namespace distorder
