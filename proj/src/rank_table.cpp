#include "distorder/rank_table.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "distorder/errors.hpp"

namespace distorder {

bool is_bijective(int n, int m, std::span<const int> ranks) {
  if (n < 1 || m < 1 || ranks.size() != static_cast<std::size_t>(n * m)) return false;
  std::vector<char> seen(ranks.size(), 0);
  for (int r : ranks) {
    if (r < 0 || r >= n * m || seen[static_cast<std::size_t>(r)]) return false;
    seen[static_cast<std::size_t>(r)] = 1;
  }
  return true;
}

RankTable::RankTable(int n, int m, std::vector<int> ranks)
    : n_(n), m_(m), ranks_(std::move(ranks)) {
  if (n < 2 || m < n) {
    throw InvalidArgument("rank table needs 2 <= n <= m, got n=" + std::to_string(n) +
                          " m=" + std::to_string(m));
  }
  if (!is_bijective(n, m, ranks_)) {
    throw InvalidArgument("ranks are not a permutation of 0.." + std::to_string(n * m - 1));
  }
}

RankTable RankTable::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw InvalidArgument("rank table has no rows");
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(rows.front().size());
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n * m));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != m) throw ShapeError("rank table rows have unequal lengths");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return RankTable(n, m, std::move(flat));
}

std::vector<std::vector<int>> RankTable::to_rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    out[static_cast<std::size_t>(i)].assign(ranks_.begin() + i * m_, ranks_.begin() + (i + 1) * m_);
  }
  return out;
}

std::vector<Cell> RankTable::cells_by_rank() const {
  std::vector<Cell> out(ranks_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < m_; ++j) out[static_cast<std::size_t>((*this)(i, j))] = Cell{i, j};
  return out;
}

std::string to_string(const RankTable& t) {
  std::ostringstream os;
  os << t.rows() << "x" << t.cols() << ":";
  for (int i = 0; i < t.rows(); ++i) {
    os << (i ? " |" : "");
    for (int j = 0; j < t.cols(); ++j) os << ' ' << t(i, j);
  }
  return os.str();
}

RankTable random_table(int n, int m, std::uint64_t seed) {
  if (n < 2 || m < n) throw InvalidArgument("random_table needs 2 <= n <= m");
  std::vector<int> ranks(static_cast<std::size_t>(n * m));
  std::iota(ranks.begin(), ranks.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(ranks.begin(), ranks.end(), rng);
  return RankTable(n, m, std::move(ranks));
}

// --- chain predicate --------------------------------------------------------

namespace {

int mod(int a, int b) { return ((a % b) + b) % b; }

void append_chain(ComparisonSet& out, const std::vector<Cell>& chain, int group) {
  for (std::size_t t = 0; t + 1 < chain.size(); ++t) out.push_back({chain[t], chain[t + 1], group});
}

int shape_parameter(const RankTable& t) {
  if (t.cols() != t.rows() + 1) {
    throw ShapeError("chain predicate needs a (d+1) x (d+2) table, got " + std::to_string(t.rows()) +
                     " x " + std::to_string(t.cols()));
  }
  return t.rows() - 1;
}

}  // namespace

const char* to_string(ChainReading r) { return r == ChainReading::displayed ? "displayed" : "full_row"; }

ComparisonSet definition_chains(int d, ChainReading reading) {
  if (d < 1) throw InvalidArgument("d must be positive");
  ComparisonSet out;
  out.reserve(static_cast<std::size_t>(2 * d * (d + 1) + 2 * d + 1));
  const int row_len = reading == ChainReading::displayed ? d + 1 : d + 2;
  std::vector<Cell> row_chain(static_cast<std::size_t>(row_len));
  for (int k = 0; k <= d; ++k) {
    for (int t = 0; t < row_len; ++t) row_chain[static_cast<std::size_t>(t)] = {k, mod(k - t, d + 2)};
    append_chain(out, row_chain, 1);
  }
  std::vector<Cell> chain(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    for (int t = 0; t <= d; ++t) chain[static_cast<std::size_t>(t)] = {mod(k + t, d + 1), k};
    append_chain(out, chain, 2);
  }
  for (int t = 0; t <= d; ++t) chain[static_cast<std::size_t>(t)] = {d - t, d + 1};
  append_chain(out, chain, 3);
  return out;
}

UnrealizabilityReport check_unrealizable(const RankTable& t, ChainReading reading) {
  const int d = shape_parameter(t);
  UnrealizabilityReport report;
  for (const auto& c : definition_chains(d, reading)) {
    if (!t.less(c.lesser, c.greater)) report.violations.push_back(c);
  }
  report.unrealizable = report.violations.empty();
  return report;
}

bool is_unrealizable(const RankTable& t, ChainReading reading) {
  const int d = shape_parameter(t);
  for (const auto& c : definition_chains(d, reading)) {
    if (!t.less(c.lesser, c.greater)) return false;
  }
  return true;
}

ComparisonSet observation_comparisons(int d) {
  if (d < 1) throw InvalidArgument("d must be positive");
  ComparisonSet out;
  for (int i = 0; i <= d; ++i) out.push_back({{i, 0}, {i, d + 1}, 1});
  for (int i = 0; i < d; ++i) {
    out.push_back({{i + 1, i + 1}, {i, i + 1}, 2});
    out.push_back({{i + 1, d + 1}, {i, d + 1}, 2});
    for (int j = 0; j <= d; ++j) {
      if (j == i + 1) continue;
      out.push_back({{i, j}, {i + 1, j}, 2});
    }
  }
  return out;
}

// Linear extensions by topological-order backtracking: rank r goes to any
// cell whose required predecessors already hold smaller ranks.
void for_each_unrealizable(int d, const std::function<void(const RankTable&)>& visit, ChainReading reading) {
  if (d < 1) throw InvalidArgument("d must be positive");
  const int n = d + 1;
  const int m = d + 2;
  if (n * m > 12) throw BudgetError("enumerate_unrealizable supports (d+1)(d+2) <= 12 only");
  const int cells = n * m;
  std::vector<std::uint32_t> preds(static_cast<std::size_t>(cells), 0);
  for (const auto& c : definition_chains(d, reading)) {
    preds[static_cast<std::size_t>(c.greater.row * m + c.greater.col)] |=
        1u << (c.lesser.row * m + c.lesser.col);
  }
  std::vector<int> ranks(static_cast<std::size_t>(cells), -1);
  const std::function<void(std::uint32_t, int)> place = [&](std::uint32_t placed, int next) {
    if (next == cells) {
      visit(RankTable(n, m, ranks));
      return;
    }
    for (int c = 0; c < cells; ++c) {
      const std::uint32_t bit = 1u << c;
      if ((placed & bit) || (preds[static_cast<std::size_t>(c)] & ~placed)) continue;
      ranks[static_cast<std::size_t>(c)] = next;
      place(placed | bit, next + 1);
    }
  };
  place(0, 0);
}

std::vector<RankTable> enumerate_unrealizable(int d, ChainReading reading) {
  std::vector<RankTable> out;
  for_each_unrealizable(d, [&](const RankTable& t) { out.push_back(t); }, reading);
  return out;
}

}  // namespace distorder
