#pragma once

// Realizability campaigns over canonical classes of rank tables.
//
// Store format (one JSON object per line, header first):
//   {"header": {"spec": {...}, "version": "...", "start_time": ...}}
//   {"digest": "2x2:0.1.3.2", "class_size": 4, "status": "realized",
//    "margin": 0.0123, "restarts": 1, "millis": 0, "seed": 123}
// Every record line is flushed as it is written, so an interrupted run
// leaves at most one truncated final line, which resume drops.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "distorder/canonical.hpp"
#include "distorder/io.hpp"
#include "distorder/search.hpp"

namespace distorder {

enum class CampaignMode { exhaustive, sample };

const char* to_string(CampaignMode m);

struct CampaignSpec {
  int n = 2;
  int m = 2;
  int dim = 1;
  CampaignMode mode = CampaignMode::exhaustive;
  int sample_size = 1;  // distinct canonical classes drawn in sample mode
  SearchParams params;  // params.seed is ignored; classes get derived seeds
  std::uint64_t seed = 0;
  std::filesystem::path output;
  int threads = 1;
  // Wall time per record and the header start time. Off by default so that
  // stores are byte-identical across runs.
  bool record_timing = false;
  // Retry exhausted classes of square grids once with 4x restarts.
  bool escalate = true;
  // Stop after this many new records (negative: no limit). Simulates an
  // interrupted run.
  long max_records = -1;

  // Throws InvalidArgument; exhaustive mode needs n*m <= 9 (BudgetError).
  void validate() const;
  Json echo() const;  // the fields that must match on resume
};

struct CampaignRecord {
  std::string digest;
  std::uint64_t class_size = 0;
  SearchStatus status = SearchStatus::exhausted;
  double margin = 0.0;
  int restarts = 0;
  double millis = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const CampaignRecord&) const = default;
};

Json to_json(const CampaignRecord& r);
CampaignRecord record_from_json(const Json& j);  // ParseError

struct ResultStore {
  Json header;  // null for an empty store
  std::vector<CampaignRecord> records;
};

// Strict reader: a malformed line or a repeated digest raises ParseError
// naming the 1-based line number. An empty file is an empty store.
ResultStore read_store(const std::filesystem::path& path);

// Work list of the campaign: canonical representatives with class sizes, in
// processing order.
std::vector<ClassRepresentative> campaign_classes(const CampaignSpec& spec);

// Seed used for the class with this digest.
std::uint64_t class_seed(std::uint64_t campaign_seed, const std::string& digest);

// Searches one class representative; escalates when enabled.
CampaignRecord run_class(const CampaignSpec& spec, const RankTable& representative, std::uint64_t class_size);

// Runs (or resumes) the campaign into spec.output and returns the full store.
// Records are written in work-list order whatever the thread count.
ResultStore run_campaign(const CampaignSpec& spec);

struct CampaignSummary {
  std::size_t classes = 0;
  std::size_t realized = 0;
  std::size_t exhausted = 0;
  std::uint64_t labeled_tables = 0;
  std::uint64_t labeled_realized = 0;
  double realized_fraction = 0.0;  // over classes; 0 for an empty store
  // Realized margins bucketed by floor(log10(margin)).
  std::map<int, std::size_t> margin_histogram;
  std::vector<CampaignRecord> slowest;  // up to 5, by millis
  std::vector<std::string> exhausted_digests;
};

CampaignSummary summarize(const ResultStore& store);
std::string render_summary(const CampaignSummary& s);

}  // namespace distorder
