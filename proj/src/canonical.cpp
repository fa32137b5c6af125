#include "distorder/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "distorder/errors.hpp"

namespace distorder {

namespace {

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

RankTable relabel(const RankTable& t, const std::vector<int>& row_perm, const std::vector<int>& col_perm) {
  const int n = t.rows();
  const int m = t.cols();
  if (static_cast<int>(row_perm.size()) != n || static_cast<int>(col_perm.size()) != m) {
    throw ShapeError("relabel: permutation sizes do not match the table");
  }
  std::vector<int> ranks(static_cast<std::size_t>(n * m));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      ranks[static_cast<std::size_t>(i * m + j)] =
          t(row_perm[static_cast<std::size_t>(i)], col_perm[static_cast<std::size_t>(j)]);
  return RankTable(n, m, std::move(ranks));
}

CanonicalForm canonical_form(const RankTable& t) {
  const int n = t.rows();
  const int m = t.cols();
  const Cell smallest = t.cells_by_rank().front();

  std::vector<int> cols(static_cast<std::size_t>(m));
  std::iota(cols.begin(), cols.end(), 0);
  std::sort(cols.begin(), cols.end(), [&](int a, int b) { return t(smallest.row, a) < t(smallest.row, b); });

  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(n));
  rows.push_back(smallest.row);
  for (int i = 0; i < n; ++i)
    if (i != smallest.row) rows.push_back(i);
  const int first_col = cols.front();
  std::sort(rows.begin() + 1, rows.end(), [&](int a, int b) { return t(a, first_col) < t(b, first_col); });

  RankTable table = relabel(t, rows, cols);
  return CanonicalForm{std::move(table), std::move(rows), std::move(cols)};
}

bool is_canonical(const RankTable& t) {
  if (t(0, 0) != 0) return false;
  for (int j = 1; j < t.cols(); ++j)
    if (t(0, j - 1) > t(0, j)) return false;
  for (int i = 1; i < t.rows(); ++i)
    if (t(i - 1, 0) > t(i, 0)) return false;
  return true;
}

// Entries are distinct, so a relabeling fixing t fixes every cell and the
// stabilizer is trivial.
std::uint64_t orbit_size(const RankTable& t) { return factorial(t.rows()) * factorial(t.cols()); }

std::string digest(const RankTable& t) {
  std::string s = std::to_string(t.rows()) + "x" + std::to_string(t.cols()) + ":";
  bool first = true;
  for (int r : t.data()) {
    if (!first) s += '.';
    s += std::to_string(r);
    first = false;
  }
  return s;
}

std::vector<ClassRepresentative> enumerate_classes(int n, int m) {
  if (n < 2 || m < n) throw InvalidArgument("enumerate_classes needs 2 <= n <= m");
  if (n * m > 9) throw BudgetError("class enumeration is limited to n*m <= 9");
  std::vector<int> ranks(static_cast<std::size_t>(n * m));
  std::iota(ranks.begin(), ranks.end(), 0);
  std::vector<ClassRepresentative> out;
  const std::uint64_t size = factorial(n) * factorial(m);
  auto canonical_ranks = [&] {
    for (int j = 1; j < m; ++j)
      if (ranks[static_cast<std::size_t>(j - 1)] > ranks[static_cast<std::size_t>(j)]) return false;
    for (int i = 1; i < n; ++i)
      if (ranks[static_cast<std::size_t>((i - 1) * m)] > ranks[static_cast<std::size_t>(i * m)]) return false;
    return true;
  };
  // Permutations come in lexicographic order, so the ones with rank 0 at
  // cell (0,0) form a prefix.
  do {
    if (ranks[0] != 0) break;
    if (canonical_ranks()) out.push_back({RankTable(n, m, ranks), size});
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return out;
}

}  // namespace distorder
