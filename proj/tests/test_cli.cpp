#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "distorder/campaign.hpp"
#include "distorder/io.hpp"

using namespace distorder;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI in the scratch directory, capturing stdout (stderr dropped).
Run cli(const std::string& args) {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("distorder-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  const std::string cmd = "cd '" + dir.string() + "' && '" + DISTORDER_CLI + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path in_scratch(const std::string& name) {
  return fs::temp_directory_path() / ("distorder-cli-" + std::to_string(::getpid())) / name;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("gen") {
  CHECK(cli("gen --d 1 -o t1.json").code == 0);
  CHECK(load_table(in_scratch("t1.json")) == RankTable::from_rows({{0, 5, 4}, {2, 1, 3}}));
  CHECK(cli("gen --d 2 --all -o all2.json").code == 0);
  CHECK(parse_json(read_file(in_scratch("all2.json"))).size() == 24);
  CHECK(cli("gen --d 0 -o bad.json").code == 2);
  CHECK(cli("gen --d 4 --all -o big.json").code == 2);
}

TEST_CASE("check") {
  cli("gen --d 1 -o t1.json");
  const Run yes = cli("check t1.json");
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "unrealizable: yes"));
  write_file(in_scratch("rowmajor.json"), R"({"n": 2, "m": 3, "ranks": [[0, 1, 2], [3, 4, 5]]})");
  const Run no = cli("check rowmajor.json");
  CHECK(no.code == 0);
  CHECK(contains(no.out, "unrealizable: no"));
  CHECK(contains(no.out, "violated chain comparisons"));
  write_file(in_scratch("trunc.json"), R"({"n": 2, "m": 3, "ranks": [[0, 1)");
  CHECK(cli("check trunc.json").code == 3);
  CHECK(cli("check missing.json").code == 1);
}

TEST_CASE("induce") {
  write_file(in_scratch("c1.json"), R"({"dim": 1, "P": [[0], [3]], "Q": [[1], [8], [-2.2]]})");
  const Run r = cli("induce c1.json -o i1.json");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "minimum squared-distance gap"));
  CHECK(load_table(in_scratch("i1.json")) == RankTable::from_rows({{0, 5, 2}, {1, 3, 4}}));
  CHECK(cli("check i1.json").code == 0);
  write_file(in_scratch("tie.json"), R"({"dim": 1, "P": [[0], [3]], "Q": [[1], [5], [-2]]})");
  CHECK(cli("induce tie.json -o tie_out.json").code == 4);
}

TEST_CASE("search") {
  write_file(in_scratch("rm22.json"), R"({"n": 2, "m": 2, "ranks": [[0, 1], [2, 3]]})");
  const Run ok = cli("search rm22.json --dim 1 -o found.json");
  CHECK(ok.code == 0);
  CHECK(cli("induce found.json -o back.json").code == 0);
  CHECK(load_table(in_scratch("back.json")) == load_table(in_scratch("rm22.json")));

  cli("gen --d 1 -o t1.json");
  const Run ex = cli("search t1.json --dim 1 --restarts 256 -o report.json");
  CHECK(ex.code == 5);
  CHECK(contains(ex.out, "no realization found within budget"));
  CHECK(parse_json(read_file(in_scratch("report.json")))["status"] == "exhausted");

  const Run a = cli("search rm22.json --dim 2 --seed 7 -o s7a.json");
  const Run b = cli("search rm22.json --dim 2 --seed 7 -o s7b.json");
  CHECK(a.out == b.out);
  CHECK(read_file(in_scratch("s7a.json")) == read_file(in_scratch("s7b.json")));
}

TEST_CASE("audit") {
  write_file(in_scratch("r2.json"),
             R"({"dim": 2, "P": [[0.13, 0.71], [-0.42, -0.29], [0.83, -0.47]], "Q": [[0.31, 0.22], [-0.93, 0.61], [0.57, 0.94], [-0.19, -0.86]]})");
  const Run r = cli("audit r2.json -o trace.json");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "definition-check: fail"));
  CHECK(trace_from_json(parse_json(read_file(in_scratch("trace.json")))).steps.size() == 12);
  write_file(in_scratch("wrong.json"), R"({"dim": 2, "P": [[0, 0], [1, 0]], "Q": [[0, 1], [1, 1], [2, 2]]})");
  CHECK(cli("audit wrong.json").code == 2);
  write_file(in_scratch("dup.json"), R"({"dim": 1, "P": [[0], [3]], "Q": [[1], [1], [-2.2]]})");
  const Run dup = cli("audit dup.json");
  CHECK(dup.code == 4);
  CHECK(contains(dup.out, "degeneracy: fail"));
}

TEST_CASE("enumerate, summarize, count") {
  fs::remove(in_scratch("e22.jsonl"));
  const Run e = cli("enumerate --n 2 --m 2 --dim 1 --exhaustive -o e22.jsonl");
  CHECK(e.code == 0);
  CHECK(contains(e.out, "realized fraction: 1\n"));
  CHECK(cli("summarize e22.jsonl").out == e.out);

  fs::remove(in_scratch("s33.jsonl"));
  CHECK(cli("enumerate --n 3 --m 3 --dim 2 --sample 500 -o s33.jsonl").code == 0);
  CHECK(read_store(in_scratch("s33.jsonl")).records.size() == 500);

  CHECK(cli("enumerate --n 3 --m 4 --dim 2 --exhaustive -o nope.jsonl").code == 2);
  CHECK(cli("enumerate --n 2 --m 2 --dim 1 -o nope.jsonl").code == 2);

  const Run c = cli("count --d 3");
  CHECK(c.code == 0);
  CHECK(c.out == "3456\n");
}

TEST_CASE("lemma-test") {
  const Run a = cli("lemma-test --trials 50 --seed 3");
  const Run b = cli("lemma-test --trials 50 --seed 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(contains(a.out, "FAIL"));
}
