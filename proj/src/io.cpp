#include "distorder/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "distorder/errors.hpp"

namespace distorder {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) a.push_back(p[k]);
  return a;
}

std::vector<Point> points_from_json(const Json& j, const char* name, int dim) {
  if (!j.is_array()) throw ParseError(std::string("field \"") + name + "\" must be an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = j[i];
    const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError(where + " must be an array of " + std::to_string(dim) + " numbers");
    }
    Point p(dim);
    for (int k = 0; k < dim; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number()) throw ParseError(where + " has a non-numeric coordinate");
      p[k] = row[static_cast<std::size_t>(k)].get<double>();
    }
    out.push_back(std::move(p));
  }
  return out;
}

double number_or_nan(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw ParseError("expected a number or null");
  return j.get<double>();
}

std::optional<StepStatus> parse_status(const std::string& s) {
  for (StepStatus st : {StepStatus::pass, StepStatus::fail, StepStatus::not_evaluated})
    if (s == to_string(st)) return st;
  return std::nullopt;
}

}  // namespace

Json to_json(const RankTable& t) {
  Json j;
  j["n"] = t.rows();
  j["m"] = t.cols();
  j["ranks"] = t.to_rows();
  return j;
}

Json to_json(const Configuration& c) {
  Json j;
  j["dim"] = c.dim;
  j["P"] = Json::array();
  for (const auto& p : c.P) j["P"].push_back(point_json(p));
  j["Q"] = Json::array();
  for (const auto& q : c.Q) j["Q"].push_back(point_json(q));
  return j;
}

Json to_json(const AuditTrace& trace) {
  Json j;
  j["dim"] = trace.dim;
  j["halted"] = trace.halted;
  j["steps"] = Json::array();
  for (const auto& s : trace.steps) {
    Json step;
    step["name"] = s.name;
    step["status"] = to_string(s.status);
    if (std::isfinite(s.margin)) {
      step["margin"] = s.margin;
    } else {
      step["margin"] = nullptr;
    }
    step["summary"] = s.summary;
    Json objects = Json::array();
    for (const auto& [name, values] : s.objects) objects.push_back({{"name", name}, {"values", values}});
    step["objects"] = objects;
    step["notes"] = s.notes;
    j["steps"].push_back(step);
  }
  return j;
}

RankTable table_from_json(const Json& j) {
  const int n = int_field(j, "n");
  const int m = int_field(j, "m");
  const Json& ranks = field(j, "ranks");
  if (!ranks.is_array() || static_cast<int>(ranks.size()) != n) {
    throw ParseError("field \"ranks\" must hold n = " + std::to_string(n) + " rows");
  }
  std::vector<int> flat;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const Json& row = ranks[i];
    if (!row.is_array() || static_cast<int>(row.size()) != m) {
      throw ParseError("ranks[" + std::to_string(i) + "] must hold m = " + std::to_string(m) + " integers");
    }
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("ranks[" + std::to_string(i) + "] has a non-integer entry");
      flat.push_back(v.get<int>());
    }
  }
  return RankTable(n, m, std::move(flat));
}

Configuration configuration_from_json(const Json& j) {
  Configuration c;
  c.dim = int_field(j, "dim");
  if (c.dim < 1) throw ParseError("field \"dim\" must be positive");
  c.P = points_from_json(field(j, "P"), "P", c.dim);
  c.Q = points_from_json(field(j, "Q"), "Q", c.dim);
  c.validate();
  return c;
}

AuditTrace trace_from_json(const Json& j) {
  AuditTrace trace;
  trace.dim = int_field(j, "dim");
  const Json& halted = field(j, "halted");
  if (!halted.is_boolean()) throw ParseError("field \"halted\" must be a boolean");
  trace.halted = halted.get<bool>();
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) throw ParseError("field \"steps\" must be an array");
  for (const auto& s : steps) {
    AuditStep step;
    try {
      step.name = field(s, "name").get<std::string>();
      const auto status = parse_status(field(s, "status").get<std::string>());
      if (!status) throw ParseError("unknown step status in step " + step.name);
      step.status = *status;
      step.margin = number_or_nan(field(s, "margin"));
      step.summary = field(s, "summary").get<std::string>();
      for (const auto& o : field(s, "objects")) {
        step.objects.emplace_back(field(o, "name").get<std::string>(), field(o, "values").get<std::vector<double>>());
      }
      step.notes = field(s, "notes").get<std::vector<std::string>>();
    } catch (const Json::exception& e) {
      throw ParseError("malformed audit step: " + std::string(e.what()));
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw StorageError("write failed for " + path.string());
}

RankTable load_table(const std::filesystem::path& path) {
  const Json j = parse_json(read_file(path), path.string());
  try {
    return table_from_json(j);
  } catch (const InvalidArgument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Configuration load_configuration(const std::filesystem::path& path) {
  return configuration_from_json(parse_json(read_file(path), path.string()));
}

}  // namespace distorder
