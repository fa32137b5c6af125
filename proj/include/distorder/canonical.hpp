#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distorder/rank_table.hpp"

namespace distorder {

// Representative of the orbit of a table under independent relabelings of
// its rows (points of P) and columns (points of Q).
struct CanonicalForm {
  RankTable table;
  // table(i, j) == original(row_perm[i], col_perm[j])
  std::vector<int> row_perm;
  std::vector<int> col_perm;
};

// Relabeled table t'(i, j) = t(row_perm[i], col_perm[j]).
RankTable relabel(const RankTable& t, const std::vector<int>& row_perm, const std::vector<int>& col_perm);

// Lexicographically least (row-major) relabeling of t.
//
// Because all entries are distinct, the minimum puts the row holding rank 0
// first, orders the columns by that row, and sorts the remaining rows by
// their first entry. This is the same matrix an exhaustive search over all
// n! m! relabelings returns, at O(nm log nm) cost.
CanonicalForm canonical_form(const RankTable& t);

bool is_canonical(const RankTable& t);

// Number of labeled tables in the orbit of t: n! m! / |stabilizer|.
std::uint64_t orbit_size(const RankTable& t);

// Fixed textual key of a table, "n x m" followed by the row-major ranks,
// e.g. "2x2:0.1.3.2". Applied to canonical tables it names the class.
std::string digest(const RankTable& t);

// Enumerates the canonical tables on [n] x [m] in increasing row-major
// order. Throws BudgetError for n*m > 9.
struct ClassRepresentative {
  RankTable table;
  std::uint64_t orbit_size;
};
std::vector<ClassRepresentative> enumerate_classes(int n, int m);

}  // namespace distorder
