#include "distorder/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "distorder/errors.hpp"
#include "distorder/seeding.hpp"

namespace distorder {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kEscalationFactor = 4;

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::optional<SearchStatus> parse_status(const std::string& s) {
  if (s == "realized") return SearchStatus::realized;
  if (s == "exhausted") return SearchStatus::exhausted;
  return std::nullopt;
}

// Splits text into complete lines; a trailing fragment without '\n' is
// returned separately.
struct Lines {
  std::vector<std::string> complete;
  std::string fragment;
  std::size_t complete_bytes = 0;
};

Lines split_lines(const std::string& text) {
  Lines out;
  std::size_t start = 0;
  while (true) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) break;
    out.complete.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  out.complete_bytes = start;
  out.fragment = text.substr(start);
  return out;
}

ResultStore parse_store_lines(const std::vector<std::string>& lines, const std::string& source) {
  ResultStore store;
  std::unordered_set<std::string> seen;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string where = source + ": line " + std::to_string(k + 1);
    if (lines[k].empty()) throw ParseError(where + ": empty line");
    Json j;
    try {
      j = Json::parse(lines[k]);
    } catch (const Json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (k == 0) {
      if (!j.is_object() || !j.contains("header")) throw ParseError(where + ": expected the store header");
      store.header = j["header"];
      continue;
    }
    CampaignRecord r;
    try {
      r = record_from_json(j);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!seen.insert(r.digest).second) throw ParseError(where + ": repeated digest " + r.digest);
    store.records.push_back(std::move(r));
  }
  return store;
}

Json make_header(const CampaignSpec& spec) {
  Json h;
  h["spec"] = spec.echo();
  h["version"] = kVersion;
  if (spec.record_timing) {
    h["start_time"] = now_utc();
  } else {
    h["start_time"] = nullptr;
  }
  return h;
}

}  // namespace

const char* to_string(CampaignMode m) { return m == CampaignMode::exhaustive ? "exhaustive" : "sample"; }

void CampaignSpec::validate() const {
  if (n < 2 || m < n) throw InvalidArgument("campaign needs 2 <= n <= m");
  if (dim < 1) throw InvalidArgument("campaign dim must be positive");
  if (threads < 1) throw InvalidArgument("threads must be positive");
  params.validate();
  if (mode == CampaignMode::exhaustive) {
    if (n * m > 9) throw BudgetError("exhaustive campaigns support n*m <= 9 only");
  } else {
    if (sample_size < 1) throw InvalidArgument("sample_size must be at least 1");
    if (n * m <= 20) {
      const std::uint64_t classes = factorial(n * m) / (factorial(n) * factorial(m));
      if (static_cast<std::uint64_t>(sample_size) > classes) {
        throw InvalidArgument("sample_size exceeds the " + std::to_string(classes) + " classes on " +
                              std::to_string(n) + "x" + std::to_string(m));
      }
    }
  }
  if (output.empty()) throw InvalidArgument("campaign needs an output path");
}

Json CampaignSpec::echo() const {
  Json j;
  j["n"] = n;
  j["m"] = m;
  j["dim"] = dim;
  j["mode"] = to_string(mode);
  j["sample_size"] = mode == CampaignMode::sample ? sample_size : 0;
  j["seed"] = seed;
  j["restarts"] = params.restarts;
  j["max_iters"] = params.max_iters;
  j["margin"] = params.margin;
  j["margin_floor"] = params.margin_floor;
  j["plateau_iters"] = params.plateau_iters;
  j["initial_step"] = params.initial_step;
  j["escalate"] = escalate;
  return j;
}

Json to_json(const CampaignRecord& r) {
  Json j;
  j["digest"] = r.digest;
  j["class_size"] = r.class_size;
  j["status"] = to_string(r.status);
  j["margin"] = r.margin;
  j["restarts"] = r.restarts;
  j["millis"] = r.millis;
  j["seed"] = r.seed;
  return j;
}

CampaignRecord record_from_json(const Json& j) {
  static const std::set<std::string> fields = {"digest", "class_size", "status", "margin",
                                               "restarts", "millis", "seed"};
  if (!j.is_object()) throw ParseError("record is not an object");
  for (const auto& [key, _] : j.items())
    if (!fields.count(key)) throw ParseError("unexpected record field \"" + key + "\"");
  for (const auto& f : fields)
    if (!j.contains(f)) throw ParseError("record lacks field \"" + f + "\"");
  CampaignRecord r;
  try {
    r.digest = j["digest"].get<std::string>();
    r.class_size = j["class_size"].get<std::uint64_t>();
    const auto status = parse_status(j["status"].get<std::string>());
    if (!status) throw ParseError("unknown status \"" + j["status"].get<std::string>() + "\"");
    r.status = *status;
    if (!j["margin"].is_number() || !j["millis"].is_number() || !j["restarts"].is_number_integer() ||
        !j["seed"].is_number_unsigned() || !j["class_size"].is_number_unsigned()) {
      throw ParseError("record field has the wrong type");
    }
    r.margin = j["margin"].get<double>();
    r.restarts = j["restarts"].get<int>();
    r.millis = j["millis"].get<double>();
    r.seed = j["seed"].get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
  return r;
}

ResultStore read_store(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  Lines lines = split_lines(text);
  if (!lines.fragment.empty()) lines.complete.push_back(lines.fragment);
  return parse_store_lines(lines.complete, path.string());
}

std::vector<ClassRepresentative> campaign_classes(const CampaignSpec& spec) {
  spec.validate();
  if (spec.mode == CampaignMode::exhaustive) return enumerate_classes(spec.n, spec.m);
  std::vector<ClassRepresentative> out;
  std::unordered_set<std::string> seen;
  for (std::uint64_t k = 0; static_cast<int>(out.size()) < spec.sample_size; ++k) {
    const RankTable t = random_table(spec.n, spec.m, derive_seed(spec.seed, k));
    CanonicalForm cf = canonical_form(t);
    if (!seen.insert(digest(cf.table)).second) continue;
    const std::uint64_t size = orbit_size(cf.table);
    out.push_back({std::move(cf.table), size});
  }
  return out;
}

std::uint64_t class_seed(std::uint64_t campaign_seed, const std::string& d) {
  return derive_seed(campaign_seed, hash_text(d));
}

CampaignRecord run_class(const CampaignSpec& spec, const RankTable& representative, std::uint64_t class_size) {
  const auto start = std::chrono::steady_clock::now();
  CampaignRecord r;
  r.digest = digest(representative);
  r.class_size = class_size;
  r.seed = class_seed(spec.seed, r.digest);
  SearchParams params = spec.params;
  params.seed = r.seed;
  SearchResult result = search_realization(representative, spec.dim, params);
  r.restarts = result.restarts_run;
  if (result.status == SearchStatus::exhausted && spec.escalate && spec.n == spec.m) {
    params.restarts *= kEscalationFactor;
    params.seed = derive_seed(r.seed, 1);
    result = search_realization(representative, spec.dim, params);
    r.restarts += result.restarts_run;
  }
  r.status = result.status;
  r.margin = result.min_margin;
  if (spec.record_timing) {
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

ResultStore run_campaign(const CampaignSpec& spec) {
  spec.validate();
  const auto classes = campaign_classes(spec);

  // Resume: keep complete lines, drop a truncated tail, check the header.
  ResultStore store;
  bool fresh = true;
  if (std::filesystem::exists(spec.output)) {
    const std::string text = read_file(spec.output);
    const Lines lines = split_lines(text);
    store = parse_store_lines(lines.complete, spec.output.string());
    if (!lines.fragment.empty()) std::filesystem::resize_file(spec.output, lines.complete_bytes);
    if (!store.header.is_null()) {
      fresh = false;
      if (store.header.value("spec", Json()) != spec.echo()) {
        throw StorageError(spec.output.string() + ": existing store was written by a different campaign spec");
      }
    }
  }

  std::ofstream out(spec.output, std::ios::binary | std::ios::app);
  if (!out) throw StorageError("cannot open " + spec.output.string() + " for appending");
  if (fresh) {
    store.header = make_header(spec);
    out << Json{{"header", store.header}}.dump() << '\n' << std::flush;
  }

  std::unordered_set<std::string> done;
  for (const auto& r : store.records) done.insert(r.digest);
  std::vector<const ClassRepresentative*> pending;
  for (const auto& c : classes)
    if (!done.count(digest(c.table))) pending.push_back(&c);
  if (spec.max_records >= 0 && pending.size() > static_cast<std::size_t>(spec.max_records)) {
    pending.resize(static_cast<std::size_t>(spec.max_records));
  }

  // Workers fill slots; this thread writes them out in work-list order.
  std::vector<std::optional<CampaignRecord>> slots(pending.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable ready;
  std::exception_ptr failure;
  const auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pending.size()) return;
      std::optional<CampaignRecord> rec;
      try {
        rec = run_class(spec, pending[k]->table, pending[k]->orbit_size);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = pending.size();
        ready.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      slots[k] = std::move(rec);
      ready.notify_all();
    }
  };
  const int n_threads = std::max(1, std::min<int>(spec.threads, static_cast<int>(pending.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);

  for (std::size_t k = 0; k < pending.size(); ++k) {
    std::unique_lock lock(mu);
    ready.wait(lock, [&] { return slots[k].has_value() || failure; });
    if (!slots[k]) break;
    CampaignRecord rec = std::move(*slots[k]);
    slots[k].reset();
    lock.unlock();
    out << to_json(rec).dump() << '\n' << std::flush;
    if (!out) {
      std::lock_guard relock(mu);
      if (!failure) failure = std::make_exception_ptr(StorageError("write failed for " + spec.output.string()));
      next = pending.size();
      break;
    }
    store.records.push_back(std::move(rec));
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return store;
}

CampaignSummary summarize(const ResultStore& store) {
  CampaignSummary s;
  for (const auto& r : store.records) {
    ++s.classes;
    s.labeled_tables += r.class_size;
    if (r.status == SearchStatus::realized) {
      ++s.realized;
      s.labeled_realized += r.class_size;
      if (r.margin > 0) ++s.margin_histogram[static_cast<int>(std::floor(std::log10(r.margin)))];
    } else {
      ++s.exhausted;
      s.exhausted_digests.push_back(r.digest);
    }
  }
  if (s.classes > 0) s.realized_fraction = static_cast<double>(s.realized) / static_cast<double>(s.classes);
  s.slowest = store.records;
  std::stable_sort(s.slowest.begin(), s.slowest.end(),
                   [](const CampaignRecord& a, const CampaignRecord& b) { return a.millis > b.millis; });
  if (s.slowest.size() > 5) s.slowest.resize(5);
  return s;
}

std::string render_summary(const CampaignSummary& s) {
  std::ostringstream os;
  os << "classes: " << s.classes << "\n";
  os << "realized: " << s.realized << "\n";
  os << "exhausted (no realization found within budget): " << s.exhausted << "\n";
  os << "realized fraction: " << s.realized_fraction << "\n";
  os << "labeled tables covered: " << s.labeled_tables << " (realized " << s.labeled_realized << ")\n";
  os << "realized margin histogram (floor log10):";
  if (s.margin_histogram.empty()) os << " none";
  os << "\n";
  for (const auto& [bucket, count] : s.margin_histogram) os << "  1e" << bucket << ": " << count << "\n";
  os << "slowest classes:";
  if (s.slowest.empty()) os << " none";
  os << "\n";
  for (const auto& r : s.slowest) os << "  " << r.digest << " " << r.millis << " ms\n";
  os << "exhausted digests:";
  if (s.exhausted_digests.empty()) os << " none";
  os << "\n";
  for (const auto& d : s.exhausted_digests) os << "  " << d << "\n";
  return os.str();
}

}  // namespace distorder
