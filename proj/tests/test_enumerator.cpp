#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <unistd.h>

#include "distorder/campaign.hpp"
#include "distorder/canonical.hpp"
#include "distorder/errors.hpp"
#include "distorder/io.hpp"

using namespace distorder;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("distorder-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

CampaignSpec spec_for(int n, int m, int dim, const fs::path& out) {
  CampaignSpec s;
  s.n = n;
  s.m = m;
  s.dim = dim;
  s.output = out;
  return s;
}

}  // namespace

TEST_CASE("exhaustive 2x2 campaign in dimension 1 realizes every class") {
  const auto store = run_campaign(spec_for(2, 2, 1, scratch("c22.jsonl")));
  REQUIRE(store.records.size() == 6);
  const CampaignSummary s = summarize(store);
  CHECK(s.realized_fraction == 1.0);
  CHECK(s.labeled_tables == 24);
  CHECK(s.exhausted_digests.empty());
}

TEST_CASE("2x3 campaign in dimension 1 is theorem-consistent") {
  const auto store = run_campaign(spec_for(2, 3, 1, scratch("c23.jsonl")));
  REQUIRE(store.records.size() == 60);
  std::map<std::string, SearchStatus> status;
  for (const auto& r : store.records) status[r.digest] = r.status;

  // Tables meeting the full-row chains are never realized.
  for (const auto& t : enumerate_unrealizable(1, ChainReading::full_row)) {
    CHECK(status.at(digest(canonical_form(t).table)) == SearchStatus::exhausted);
  }
  // Under the displayed chains some members lie in realized classes: that
  // reading admits orders induced by points on a line.
  int realized_members = 0;
  for (const auto& t : enumerate_unrealizable(1)) {
    realized_members += status.at(digest(canonical_form(t).table)) == SearchStatus::realized;
  }
  CHECK(realized_members > 0);
}

TEST_CASE("interrupted campaigns resume to the same store") {
  const fs::path whole = scratch("whole.jsonl");
  const fs::path parts = scratch("parts.jsonl");
  run_campaign(spec_for(2, 3, 2, whole));

  CampaignSpec s = spec_for(2, 3, 2, parts);
  s.max_records = 17;
  CHECK(run_campaign(s).records.size() == 17);
  {
    std::ofstream tail(parts, std::ios::app);
    tail << R"({"digest":"2x3:0.1)";  // crash mid-line
  }
  s.max_records = -1;
  s.threads = 4;
  const auto resumed = run_campaign(s);
  CHECK(resumed.records.size() == 60);
  CHECK(read_file(parts) == read_file(whole));

  // Re-running a finished campaign is a no-op.
  run_campaign(s);
  CHECK(read_file(parts) == read_file(whole));
}

TEST_CASE("thread count does not change the store") {
  const fs::path one = scratch("one.jsonl");
  const fs::path many = scratch("many.jsonl");
  CampaignSpec s = spec_for(3, 3, 2, one);
  s.mode = CampaignMode::sample;
  s.sample_size = 60;
  run_campaign(s);
  s.output = many;
  s.threads = 8;
  run_campaign(s);
  CHECK(read_file(one) == read_file(many));
}

TEST_CASE("resume rejects a different spec") {
  const fs::path p = scratch("mismatch.jsonl");
  run_campaign(spec_for(2, 2, 1, p));
  CampaignSpec other = spec_for(2, 2, 1, p);
  other.seed = 9;
  CHECK_THROWS_AS(run_campaign(other), StorageError);
}

TEST_CASE("sample mode draws distinct canonical classes") {
  CampaignSpec s = spec_for(3, 3, 2, scratch("sample.jsonl"));
  s.mode = CampaignMode::sample;
  s.sample_size = 40;
  const auto classes = campaign_classes(s);
  CHECK(classes.size() == 40);
  std::set<std::string> digests;
  for (const auto& c : classes) {
    CHECK(is_canonical(c.table));
    CHECK(c.orbit_size == 36);
    digests.insert(digest(c.table));
  }
  CHECK(digests.size() == 40);
  s.sample_size = 10081;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  CampaignSpec big = spec_for(2, 5, 1, scratch("big.jsonl"));
  CHECK_THROWS_AS(big.validate(), BudgetError);
}

TEST_CASE("square grids escalate exhausted classes once") {
  CampaignSpec s = spec_for(2, 2, 1, scratch("unused.jsonl"));
  s.params.restarts = 1;
  s.params.max_iters = 1;
  const RankTable t = RankTable::from_rows({{0, 3}, {2, 1}});
  const CampaignRecord r = run_class(s, t, 4);
  if (r.status == SearchStatus::exhausted) CHECK(r.restarts == 5);
  s.escalate = false;
  const CampaignRecord q = run_class(s, t, 4);
  if (q.status == SearchStatus::exhausted) CHECK(q.restarts == 1);
  CHECK(r.seed == class_seed(0, "2x2:0.3.2.1"));
}

TEST_CASE("store records round-trip") {
  const CampaignRecord r{"3x3:0.1.2.3.4.5.6.7.8", 36, SearchStatus::realized, 0.1 + 0.2, 3, 0.0, 18446744073709551615ULL};
  CHECK(record_from_json(parse_json(to_json(r).dump())) == r);
  Json extra = to_json(r);
  extra["note"] = 1;
  CHECK_THROWS_AS(record_from_json(extra), ParseError);
}

TEST_CASE("summaries of empty and corrupt stores") {
  const fs::path empty = scratch("empty.jsonl");
  write_file(empty, "");
  const CampaignSummary s = summarize(read_store(empty));
  CHECK(s.classes == 0);
  CHECK(s.realized == 0);
  CHECK(s.exhausted == 0);
  CHECK(s.labeled_tables == 0);

  const fs::path good = scratch("good.jsonl");
  run_campaign(spec_for(2, 2, 1, good));
  std::string text = read_file(good);
  const std::size_t third = text.find('\n', text.find('\n', text.find('\n') + 1) + 1);
  text.insert(third + 1, "{not json}\n");
  const fs::path bad = scratch("bad.jsonl");
  write_file(bad, text);
  try {
    read_store(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}
