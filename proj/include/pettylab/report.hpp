#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pettylab/linalg.hpp"

namespace pettylab {

enum class Status { Pass, Fail, Info };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Info: return "INFO";
  }
  return "?";
}

struct ReportRow {
  std::string name;
  double value = 0.0;
  std::optional<Vec3> direction;
  std::optional<double> tolerance;
  Status status = Status::Info;
  std::string detail;  ///< violated inequality and witness for FAIL rows
};

struct Report {
  std::vector<ReportRow> rows;

  void add(ReportRow r) { rows.push_back(std::move(r)); }
  bool passed() const {
    for (const auto& r : rows)
      if (r.status == Status::Fail) return false;
    return true;
  }
};

/// Numbers are printed with 12 significant digits.
inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_csv(const Report& rep, bool timestamp) {
  std::string out;
  if (timestamp) out += "# generated " + utc_timestamp() + "\n";
  out += "invariant,value,direction,tolerance,status,detail\n";
  for (const auto& r : rep.rows) {
    std::string dir = "-";
    if (r.direction) dir = fmt12(r.direction->x) + " " + fmt12(r.direction->y) + " " + fmt12(r.direction->z);
    out += detail::csv_field(r.name) + "," + fmt12(r.value) + "," + dir + "," +
           (r.tolerance ? fmt12(*r.tolerance) : std::string("-")) + "," + status_name(r.status) + "," +
           detail::csv_field(r.detail) + "\n";
  }
  return out;
}

/// JSON report; numbers are emitted as 12-significant-digit values. The timestamp, if
/// present, is the only content of the second line.
inline std::string to_json_report(const Report& rep, bool timestamp) {
  auto num = [](double v) { return nlohmann::json::parse(fmt12(v)); };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json j{{"invariant", r.name}, {"value", std::isfinite(r.value) ? num(r.value) : nlohmann::json(nullptr)},
                     {"status", status_name(r.status)}};
    if (r.direction) j["direction"] = {num(r.direction->x), num(r.direction->y), num(r.direction->z)};
    if (r.tolerance) j["tolerance"] = num(*r.tolerance);
    if (!r.detail.empty()) j["detail"] = r.detail;
    rows.push_back(j);
  }
  nlohmann::json doc;
  if (timestamp) doc["generated"] = utc_timestamp();
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

}  // namespace pettylab
