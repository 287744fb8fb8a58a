#include "report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace lab {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Ok:
      return "ok";
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
  }
  return "ok";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const Table& table) {
  std::string out;
  const auto record = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  record(table.header);
  for (const auto& row : table.rows) record(row);
  return out;
}

std::string format_number(double v) { return fmt::format("{}", v); }

nlohmann::json report_json(const Report& report, const nlohmann::json& config_echo, const RunOptions& options) {
  return nlohmann::json{{"tool", kToolName},
                        {"version", kToolVersion},
                        {"command", report.command},
                        {"check", report.check},
                        {"statement", report.statement},
                        {"status", to_string(report.status)},
                        {"seed", options.seed},
                        {"resolution_scale", options.resolution_scale},
                        {"config", config_echo},
                        {"results", report.results}};
}

namespace {

std::filesystem::path stage(const std::filesystem::path& target, const std::string& content) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw bergman::Error("cannot write " + tmp.string());
  return tmp;
}

} // namespace

void write_report(const std::filesystem::path& dir, const Report& report, const nlohmann::json& config_echo,
                  const RunOptions& options) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path json_path = dir / (report.command + ".json");
  const std::filesystem::path csv_path = dir / (report.command + ".csv");
  const std::filesystem::path json_tmp = stage(json_path, report_json(report, config_echo, options).dump(2) + "\n");
  std::filesystem::path csv_tmp;
  try {
    csv_tmp = stage(csv_path, to_csv(report.table));
  } catch (...) {
    std::filesystem::remove(json_tmp);
    throw;
  }
  std::filesystem::rename(json_tmp, json_path);
  std::filesystem::rename(csv_tmp, csv_path);
}

} // namespace lab
