#pragma once

// JSON formats for tables, configurations, audit traces and campaign store
// records. Tables and configurations are one object per file; store
// records are one object per line.
//
//   table:          {"n": 2, "m": 3, "ranks": [[0, 5, 4], [2, 1, 3]]}
//   configuration:  {"dim": 1, "P": [[0.0], [1.0]], "Q": [[...], ...]}
//
// Doubles are written in shortest round-trip form, so parse(render(x)) == x
// bit for bit.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "distorder/audit.hpp"
#include "distorder/configuration.hpp"
#include "distorder/rank_table.hpp"

namespace distorder {

using Json = nlohmann::ordered_json;

Json to_json(const RankTable& t);
Json to_json(const Configuration& c);
Json to_json(const AuditTrace& trace);

// Throw ParseError naming the offending field.
RankTable table_from_json(const Json& j);
Configuration configuration_from_json(const Json& j);
AuditTrace trace_from_json(const Json& j);

// Throws ParseError with byte offset on malformed text.
Json parse_json(const std::string& text, const std::string& source = "input");

std::string render(const Json& j);  // two-space indent, trailing newline

std::string read_file(const std::filesystem::path& path);   // StorageError
void write_file(const std::filesystem::path& path, const std::string& text);

RankTable load_table(const std::filesystem::path& path);
Configuration load_configuration(const std::filesystem::path& path);

}  // namespace distorder
