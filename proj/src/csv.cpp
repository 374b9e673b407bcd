#include "rsma/csv.hpp"

#include "rsma/math_kernel.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace rsma {

namespace {

const char* const kHeader[] = {"scheme", "parameter", "value", "enst_mean", "enst_stderr", "trials"};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
      any = true;
    } else if (c == '\r') {
      continue;
    } else if (c == '\n') {
      row.push_back(field);
      rows.push_back(row);
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

std::string format_csv(const ResultTable& table) {
  std::string out;
  for (int i = 0; i < 6; ++i) out += std::string(i ? "," : "") + kHeader[i];
  out += "\r\n";
  for (const auto& r : table) {
    out += csv_field(r.scheme) + "," + csv_field(r.parameter) + "," + num(r.value) + "," + num(r.enst_mean) + "," +
           num(r.enst_stderr) + "," + std::to_string(r.trials) + "\r\n";
  }
  return out;
}

ResultTable parse_csv(const std::string& text) {
  const auto recs = parse_csv_records(text);
  if (recs.empty()) throw std::invalid_argument("csv: missing header");
  const auto& h = recs.front();
  if (h.size() != 6) throw std::invalid_argument("csv: header must have 6 columns");
  for (int i = 0; i < 6; ++i)
    if (h[i] != kHeader[i]) throw std::invalid_argument("csv: unexpected column '" + h[i] + "'");
  ResultTable t;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (r.size() != 6) throw std::invalid_argument("csv: row " + std::to_string(i) + " has wrong width");
    ResultRow row;
    row.scheme = r[0];
    row.parameter = r[1];
    row.value = parse_double(r[2]);
    row.enst_mean = parse_double(r[3]);
    row.enst_stderr = parse_double(r[4]);
    row.trials = std::stoll(r[5]);
    t.push_back(row);
  }
  return t;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  out << text;
  out.close();
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
}

void emit_csv(const ResultTable& table, const std::string& path) {
  if (table.empty()) throw DomainError("emit_csv: table is empty");
  write_text(format_csv(table), path);
}

}  // namespace rsma
