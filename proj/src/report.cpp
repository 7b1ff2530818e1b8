#include "ht/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ht/errors.hpp"

namespace ht {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string number_field(double v) {
  return std::isnan(v) ? std::string() : format_double(v);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_number(const std::string& field, int line_no) {
  if (field.empty()) return kNaN;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) {
    throw ConfigError("line " + std::to_string(line_no) + ": bad number '" +
                      field + "'");
  }
  return v;
}

nlohmann::json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  if (rows.empty()) throw ConfigError("no rows to write");
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << format_double(r.alpha) << ',' << format_double(r.p) << ','
        << format_double(r.q_r) << ',' << (r.ft ? format_double(*r.ft) : "")
        << ',' << format_double(r.cos2_r) << ',' << number_field(r.f) << ','
        << number_field(r.fidelity) << ',' << number_field(r.z1) << ','
        << number_field(r.delta_alpha) << ',' << to_string(r.status) << '\n';
  }
  if (!out) throw IoError("failed writing CSV output");
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ConfigError("missing or unexpected CSV header");
  }
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 10) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 10 fields");
    }
    ResultRow r;
    r.alpha = parse_number(fields[0], line_no);
    r.p = parse_number(fields[1], line_no);
    r.q_r = parse_number(fields[2], line_no);
    if (!fields[3].empty()) r.ft = parse_number(fields[3], line_no);
    r.cos2_r = parse_number(fields[4], line_no);
    r.f = parse_number(fields[5], line_no);
    r.fidelity = parse_number(fields[6], line_no);
    r.z1 = parse_number(fields[7], line_no);
    r.delta_alpha = parse_number(fields[8], line_no);
    r.status = row_status_from_string(fields[9]);
    rows.push_back(r);
  }
  return rows;
}

void write_json(const std::vector<ResultRow>& rows, std::ostream& out) {
  if (rows.empty()) throw ConfigError("no rows to write");
  nlohmann::json doc = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    nlohmann::json row;
    row["alpha"] = r.alpha;
    row["p"] = r.p;
    row["q_R"] = r.q_r;
    row["ft"] = r.ft ? nlohmann::json(*r.ft) : nlohmann::json(nullptr);
    row["cos2_r"] = r.cos2_r;
    row["f"] = number_json(r.f);
    row["F"] = number_json(r.fidelity);
    row["z1"] = number_json(r.z1);
    row["delta_alpha"] = number_json(r.delta_alpha);
    row["method"] = to_string(r.status);
    doc.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing JSON output");
}

}  // namespace ht
