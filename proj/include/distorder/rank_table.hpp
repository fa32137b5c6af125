#pragma once

// Total orders on the grid [n] x [m], stored as rank matrices.
//
// A RankTable assigns every cell (i, j) the rank of the pair (p_i, q_j) in
// the order, 0 being the smallest. The assignment is a bijection onto
// {0, ..., n*m - 1}.

#include <compare>
#include <functional>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace distorder {

struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

// Asserts rank(lesser) < rank(greater). `group` tags where the comparison
// comes from (chain property 1..3, or observation part 1..2).
struct Comparison {
  Cell lesser;
  Cell greater;
  int group = 0;

  bool same_cells(const Comparison& other) const {
    return lesser == other.lesser && greater == other.greater;
  }
};

using ComparisonSet = std::vector<Comparison>;

class RankTable {
 public:
  // Throws InvalidArgument unless 2 <= n <= m and `ranks` (row-major) is a
  // permutation of 0..n*m-1.
  RankTable(int n, int m, std::vector<int> ranks);

  static RankTable from_rows(const std::vector<std::vector<int>>& rows);

  int rows() const { return n_; }
  int cols() const { return m_; }
  int size() const { return n_ * m_; }

  int operator()(int i, int j) const { return ranks_[static_cast<std::size_t>(i * m_ + j)]; }
  int rank(Cell c) const { return (*this)(c.row, c.col); }

  bool less(Cell a, Cell b) const { return rank(a) < rank(b); }

  std::span<const int> data() const { return ranks_; }
  std::vector<std::vector<int>> to_rows() const;

  // Inverse of the rank map: element r is the cell holding rank r.
  std::vector<Cell> cells_by_rank() const;

  bool operator==(const RankTable&) const = default;

 private:
  int n_;
  int m_;
  std::vector<int> ranks_;
};

// Validates a row-major rank vector without constructing a table.
bool is_bijective(int n, int m, std::span<const int> ranks);

// "n x m: r00 r01 ...", used for log lines and test failure messages.
std::string to_string(const RankTable& t);

// Uniformly random table, deterministic per seed.
RankTable random_table(int n, int m, std::uint64_t seed);

// --- Chain predicate on (d+1) x (d+2) tables -------------------------------

// How far the row chains run.
//   displayed: (k,k) < (k,k-1) < ... < (k,k-d), d+1 of the row's d+2 cells;
//   full_row:  the chain continues to (k,k-d-1) = (k,k+1), covering the row.
// At d = 1 the displayed reading admits 61 tables, some of which are induced
// by points on a line; the full-row reading admits exactly the two
// construction outputs.
enum class ChainReading { displayed, full_row };

const char* to_string(ChainReading r);

struct UnrealizabilityReport {
  bool unrealizable = false;
  ComparisonSet violations;  // every chain comparison the table breaks
};

// Consecutive comparisons of the three chain properties for parameter d:
// row chains (k,k) < (k,k-1) < ... with column indices mod d+2,
// column chains (k,k) < (k+1,k) < ... < (k+d,k) with row indices mod d+1,
// and the last-column chain (d,d+1) < (d-1,d+1) < ... < (0,d+1).
// group is the property number. The displayed reading has 2d(d+1) + d
// comparisons, full_row adds one per row.
ComparisonSet definition_chains(int d, ChainReading reading = ChainReading::displayed);

// Throws ShapeError unless the table is (d+1) x (d+2).
UnrealizabilityReport check_unrealizable(const RankTable& t, ChainReading reading = ChainReading::displayed);
bool is_unrealizable(const RankTable& t, ChainReading reading = ChainReading::displayed);

// Comparisons of the two-part observation about point proximities:
// part 1: (i,0) < (i,d+1) for every row i;
// part 2: for i in [d]: (i+1,i+1) < (i,i+1), (i+1,d+1) < (i,d+1) and
//         (i,j) < (i+1,j) for the remaining columns j.
ComparisonSet observation_comparisons(int d);

// Every linear extension of definition_chains(d), i.e. every table passing
// is_unrealizable. Throws BudgetError when (d+1)(d+2) > 12.
void for_each_unrealizable(int d, const std::function<void(const RankTable&)>& visit,
                           ChainReading reading = ChainReading::displayed);
std::vector<RankTable> enumerate_unrealizable(int d, ChainReading reading = ChainReading::displayed);

}  // namespace distorder
