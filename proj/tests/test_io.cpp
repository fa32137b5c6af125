#include <doctest.h>

#include <cmath>
#include <random>

#include "distorder/audit.hpp"
#include "distorder/errors.hpp"
#include "distorder/io.hpp"

using namespace distorder;

TEST_CASE("table format round-trip") {
  const RankTable t = RankTable::from_rows({{0, 5, 4}, {2, 1, 3}});
  const Json j = to_json(t);
  CHECK(j.dump() == R"({"n":2,"m":3,"ranks":[[0,5,4],[2,1,3]]})");
  CHECK(table_from_json(parse_json(render(j))) == t);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const RankTable r = random_table(3, 4, s);
    CHECK(table_from_json(parse_json(render(to_json(r)))) == r);
  }
}

TEST_CASE("configuration format round-trip is exact") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Configuration c;
    c.dim = 1 + t % 4;
    for (int i = 0; i < 3; ++i) c.P.push_back(random_point(c.dim, rng) * 1e3);
    for (int i = 0; i < 4; ++i) c.Q.push_back(random_point(c.dim, rng) * 1e-3);
    CHECK(configuration_from_json(parse_json(render(to_json(c)))) == c);
  }
}

TEST_CASE("audit trace round-trip") {
  Configuration c;
  c.dim = 2;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 3; ++i) c.P.push_back(random_point(2, rng));
  for (int i = 0; i < 4; ++i) c.Q.push_back(random_point(2, rng));
  const AuditTrace trace = audit(c, {.halfspace_samples = 50});
  const AuditTrace back = trace_from_json(parse_json(render(to_json(trace))));
  REQUIRE(back.steps.size() == trace.steps.size());
  CHECK(back.dim == trace.dim);
  CHECK(back.halted == trace.halted);
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& a = trace.steps[k];
    const auto& b = back.steps[k];
    CHECK(a.name == b.name);
    CHECK(a.status == b.status);
    CHECK((a.margin == b.margin || (std::isnan(a.margin) && std::isnan(b.margin))));
    CHECK(a.summary == b.summary);
    CHECK(a.objects == b.objects);
    CHECK(a.notes == b.notes);
  }
}

TEST_CASE("malformed input reports the position or field") {
  try {
    parse_json(R"({"n": 2, "m": 3, "ranks": [[0, 5)", "t.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK_THROWS_AS(table_from_json(parse_json(R"({"n": 2, "ranks": [[0,1],[2,3]]})")), ParseError);
  CHECK_THROWS_AS(table_from_json(parse_json(R"({"n": 2, "m": 2, "ranks": [[0,1],[2]]})")), ParseError);
  CHECK_THROWS_AS(configuration_from_json(parse_json(R"({"dim": 2, "P": [[0,0],[1]], "Q": [[0,0],[1,1]]})")),
                  ParseError);
}
