#ifndef RSMA_CSV_HPP
#define RSMA_CSV_HPP

#include <string>
#include <vector>

namespace rsma {

struct ResultRow {
  std::string scheme;
  std::string parameter;
  double value = 0.0;
  double enst_mean = 0.0;
  double enst_stderr = 0.0;
  long long trials = 0;

  bool operator==(const ResultRow&) const = default;
};

using ResultTable = std::vector<ResultRow>;

// RFC 4180 field quoting
std::string csv_field(const std::string& s);
std::vector<std::vector<std::string>> parse_csv_records(const std::string& text);

std::string format_csv(const ResultTable& table);
ResultTable parse_csv(const std::string& text);
// Throws on an empty table before touching the file system.
void emit_csv(const ResultTable& table, const std::string& path);

// Writes to path, or to stdout when path is empty or "-".
void write_text(const std::string& text, const std::string& path);

}  // namespace rsma

#endif  // RSMA_CSV_HPP
