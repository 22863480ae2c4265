#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aligneval {

enum class ReportFormat { Tsv, Json, Markdown };

std::optional<ReportFormat> parse_report_format(std::string_view s);
std::string_view extension(ReportFormat format);

// A report cell. Numeric cells are emitted bare in JSON; the text "NA"
// marks an absent value and becomes null.
struct Cell {
  std::string text;
  bool numeric = false;

  static Cell str(std::string s) { return {std::move(s), false}; }
  static Cell num(std::string s) { return {std::move(s), true}; }
};

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::string render(ReportFormat format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Files produced by one command, in emission order: (file name, contents).
using OutputFiles = std::vector<std::pair<std::string, std::string>>;

// Writes every file to a temporary name inside `dir`, then renames them all
// into place, so a failure leaves no partially written outputs behind.
// Creates `dir` if needed. Throws IoError.
void commit_outputs(const std::string& dir, const OutputFiles& files);

}  // namespace aligneval
