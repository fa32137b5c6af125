#pragma once

// Diagonal-filling construction of chain-satisfying (d+1) x (d+2) tables.
//
// The table is filled in four blocks of consecutive values:
//   1. the main diagonal (k,k) receives 0..d;
//   2. the lower diagonals (k+c, k), c = 1..d, each receive the next
//      d+1-c values;
//   3. the last column receives the next d+1 values, increasing from the
//      bottom row to the top row;
//   4. the upper diagonals (k, k+c), c = d..1, each receive the next
//      d+1-c values.
// Within each diagonal the placement is a free permutation, which is what
// ConstructionChoice records.

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "distorder/rank_table.hpp"

namespace distorder {

struct ConstructionChoice {
  int d = 1;
  // diag[k] is the offset (0..d) of the value placed at (k,k).
  std::vector<int> diag;
  // lower[c-1][t] is the offset of the value placed at the t-th cell
  // (t+c, t) of lower diagonal c; upper[c-1][t] likewise for (t, t+c).
  std::vector<std::vector<int>> lower;
  std::vector<std::vector<int>> upper;

  static ConstructionChoice identity(int d);
  static ConstructionChoice random(int d, std::uint64_t seed);

  // Throws InvalidArgument on wrong lengths or non-permutations.
  void validate() const;

  bool operator==(const ConstructionChoice&) const = default;
};

RankTable construct_unrealizable(const ConstructionChoice& choice);

// Visits the construction output of every choice, in odometer order over
// (diag, lower[0..], upper[0..]). Throws BudgetError for d > 4.
void for_each_construction(int d, const std::function<void(const RankTable&)>& visit);

// (d+1)! * (d! (d-1)! ... 1!)^2
boost::multiprecision::cpp_int construction_count(int d);

}  // namespace distorder
