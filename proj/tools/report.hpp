#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lab {

inline constexpr std::string_view kToolName = "bergman_lab";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

enum class Status { Ok, Pass, Fail };

struct Report {
  std::string command;
  std::string check;      // stable identifier of the exercised statement
  std::string statement;  // plain-language statement being checked
  Status status = Status::Ok;
  nlohmann::json results;
  Table table;
};

struct RunOptions {
  std::uint64_t seed = 2024;
  double resolution_scale = 1.0;
  int threads = 1;
};

std::string_view to_string(Status s);

/// RFC 4180: fields containing a comma, quote, CR or LF are quoted, with
/// embedded quotes doubled; records end in CRLF.
std::string csv_field(std::string_view s);
std::string to_csv(const Table& table);

/// Shortest round-trip decimal form.
std::string format_number(double v);

nlohmann::json report_json(const Report& report, const nlohmann::json& config_echo, const RunOptions& options);

/// Writes <dir>/<command>.json and <dir>/<command>.csv. Both files are staged
/// as temporaries and renamed only after both are complete.
void write_report(const std::filesystem::path& dir, const Report& report, const nlohmann::json& config_echo,
                  const RunOptions& options);

} // namespace lab
