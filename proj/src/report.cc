#include "aligneval/report.h"

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <nlohmann/json.hpp>

#include "aligneval/error.h"

namespace aligneval {

namespace fs = std::filesystem;

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "tsv") return ReportFormat::Tsv;
  if (s == "json") return ReportFormat::Json;
  if (s == "md") return ReportFormat::Markdown;
  return std::nullopt;
}

std::string_view extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::Tsv: return ".tsv";
    case ReportFormat::Json: return ".json";
    case ReportFormat::Markdown: return ".md";
  }
  return ".tsv";
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::logic_error("table row width mismatch");
  rows_.push_back(std::move(row));
}

std::string Table::render(ReportFormat format) const {
  std::string out;
  switch (format) {
    case ReportFormat::Tsv: {
      auto line = [&](auto&& get) {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
          if (c) out += '\t';
          out += get(c);
        }
        out += '\n';
      };
      line([&](std::size_t c) { return columns_[c]; });
      for (const auto& row : rows_) line([&](std::size_t c) { return row[c].text; });
      break;
    }
    case ReportFormat::Markdown: {
      auto line = [&](auto&& get) {
        out += '|';
        for (std::size_t c = 0; c < columns_.size(); ++c) out += ' ' + get(c) + " |";
        out += '\n';
      };
      line([&](std::size_t c) { return columns_[c]; });
      line([&](std::size_t c) { return std::string(columns_[c].size() < 3 ? 3 : columns_[c].size(), '-'); });
      for (const auto& row : rows_) line([&](std::size_t c) { return row[c].text; });
      break;
    }
    case ReportFormat::Json: {
      out += "[\n";
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += "  {";
        for (std::size_t c = 0; c < columns_.size(); ++c) {
          if (c) out += ", ";
          out += nlohmann::json(columns_[c]).dump() + ": ";
          const Cell& cell = rows_[r][c];
          if (cell.text == "NA")
            out += "null";
          else if (cell.numeric)
            out += cell.text;
          else
            out += nlohmann::json(cell.text).dump();
        }
        out += r + 1 < rows_.size() ? "},\n" : "}\n";
      }
      out += "]\n";
      break;
    }
  }
  return out;
}

void commit_outputs(const std::string& dir, const OutputFiles& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    for (const auto& [tmp, final_path] : staged) fs::remove(tmp, ec);
  };
  for (const auto& [name, contents] : files) {
    fs::path final_path = fs::path(dir) / name;
    fs::path tmp = fs::path(dir) / ("." + name + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    staged.emplace_back(tmp, final_path);
    if (!out) {
      cleanup();
      throw IoError("cannot write '" + final_path.string() + "'");
    }
  }
  for (const auto& [tmp, final_path] : staged) {
    fs::rename(tmp, final_path, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move output into place at '" + final_path.string() +
                    "': " + ec.message());
    }
  }
}

}  // namespace aligneval
