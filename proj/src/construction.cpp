#include "distorder/construction.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "distorder/errors.hpp"

namespace distorder {

namespace {

std::vector<int> iota_vector(int len) {
  std::vector<int> v(static_cast<std::size_t>(len));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool is_permutation_of_range(const std::vector<int>& p, int len) {
  if (static_cast<int>(p.size()) != len) return false;
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= len || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = 1;
  }
  return true;
}

}  // namespace

ConstructionChoice ConstructionChoice::identity(int d) {
  if (d < 1) throw InvalidArgument("d must be positive");
  ConstructionChoice c;
  c.d = d;
  c.diag = iota_vector(d + 1);
  for (int k = 1; k <= d; ++k) {
    c.lower.push_back(iota_vector(d + 1 - k));
    c.upper.push_back(iota_vector(d + 1 - k));
  }
  return c;
}

ConstructionChoice ConstructionChoice::random(int d, std::uint64_t seed) {
  ConstructionChoice c = identity(d);
  std::mt19937_64 rng(seed);
  std::shuffle(c.diag.begin(), c.diag.end(), rng);
  for (auto& p : c.lower) std::shuffle(p.begin(), p.end(), rng);
  for (auto& p : c.upper) std::shuffle(p.begin(), p.end(), rng);
  return c;
}

void ConstructionChoice::validate() const {
  if (d < 1) throw InvalidArgument("construction choice: d must be positive");
  if (!is_permutation_of_range(diag, d + 1)) {
    throw InvalidArgument("construction choice: diag is not a permutation of 0.." + std::to_string(d));
  }
  if (static_cast<int>(lower.size()) != d || static_cast<int>(upper.size()) != d) {
    throw InvalidArgument("construction choice: need exactly d lower and d upper permutations");
  }
  for (int c = 1; c <= d; ++c) {
    if (!is_permutation_of_range(lower[static_cast<std::size_t>(c - 1)], d + 1 - c) ||
        !is_permutation_of_range(upper[static_cast<std::size_t>(c - 1)], d + 1 - c)) {
      throw InvalidArgument("construction choice: diagonal " + std::to_string(c) +
                            " permutation must have length " + std::to_string(d + 1 - c));
    }
  }
}

RankTable construct_unrealizable(const ConstructionChoice& choice) {
  choice.validate();
  const int d = choice.d;
  const int m = d + 2;
  std::vector<int> ranks(static_cast<std::size_t>((d + 1) * m), -1);
  auto at = [&](int i, int j) -> int& { return ranks[static_cast<std::size_t>(i * m + j)]; };

  int next = 0;
  for (int k = 0; k <= d; ++k) at(k, k) = next + choice.diag[static_cast<std::size_t>(k)];
  next += d + 1;

  for (int c = 1; c <= d; ++c) {
    const auto& perm = choice.lower[static_cast<std::size_t>(c - 1)];
    for (int t = 0; t + c <= d; ++t) at(t + c, t) = next + perm[static_cast<std::size_t>(t)];
    next += d + 1 - c;
  }

  for (int i = d; i >= 0; --i) at(i, d + 1) = next++;

  for (int c = d; c >= 1; --c) {
    const auto& perm = choice.upper[static_cast<std::size_t>(c - 1)];
    for (int t = 0; t + c <= d; ++t) at(t, t + c) = next + perm[static_cast<std::size_t>(t)];
    next += d + 1 - c;
  }
  return RankTable(d + 1, m, std::move(ranks));
}

void for_each_construction(int d, const std::function<void(const RankTable&)>& visit) {
  if (d < 1) throw InvalidArgument("d must be positive");
  if (d > 4) throw BudgetError("construction enumeration is limited to d <= 4");
  ConstructionChoice choice = ConstructionChoice::identity(d);

  std::vector<std::vector<int>*> wheels;
  wheels.push_back(&choice.diag);
  for (auto& p : choice.lower) wheels.push_back(&p);
  for (auto& p : choice.upper) wheels.push_back(&p);

  while (true) {
    visit(construct_unrealizable(choice));
    std::size_t w = 0;
    // next_permutation wraps back to sorted order when it returns false,
    // which is the carry into the next wheel.
    while (w < wheels.size() && !std::next_permutation(wheels[w]->begin(), wheels[w]->end())) ++w;
    if (w == wheels.size()) return;
  }
}

boost::multiprecision::cpp_int construction_count(int d) {
  if (d < 1) throw InvalidArgument("d must be positive");
  boost::multiprecision::cpp_int diag = 1;
  for (int k = 2; k <= d + 1; ++k) diag *= k;
  boost::multiprecision::cpp_int product = 1;
  boost::multiprecision::cpp_int factorial = 1;
  for (int j = 1; j <= d; ++j) {
    factorial *= j;
    product *= factorial;
  }
  return diag * product * product;
}

}  // namespace distorder
