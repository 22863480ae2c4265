#include "aligneval/score_matrix.h"

#include <charconv>
#include <cmath>
#include <fstream>

#include "aligneval/error.h"
#include "aligneval/format.h"

namespace aligneval {

namespace {

// RFC 4180 fields: commas separate, double quotes enclose, "" escapes.
std::optional<std::vector<std::string>> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) return std::nullopt;
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::optional<double> parse_real(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(v))
    return std::nullopt;
  return v;
}

}  // namespace

bool ScoreMatrix::insert(const std::string& system_id,
                         const std::string& instance_id, double score) {
  return entries_.emplace(ScoreKey{system_id, instance_id}, score).second;
}

std::optional<double> ScoreMatrix::get(const std::string& system_id,
                                       const std::string& instance_id) const {
  auto it = entries_.find(ScoreKey{system_id, instance_id});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::set<std::string> ScoreMatrix::systems() const {
  std::set<std::string> out;
  for (const auto& [key, v] : entries_) out.insert(key.first);
  return out;
}

std::set<std::string> ScoreMatrix::instances() const {
  std::set<std::string> out;
  for (const auto& [key, v] : entries_) out.insert(key.second);
  return out;
}

std::vector<ScoreKey> ScoreMatrix::missing_cells() const {
  std::vector<ScoreKey> out;
  auto insts = instances();
  for (const auto& s : systems())
    for (const auto& i : insts)
      if (!entries_.count({s, i})) out.emplace_back(s, i);
  return out;
}

std::vector<ScoreMatrix> parse_score_matrices(std::istream& in) {
  std::map<std::string, ScoreMatrix> by_metric;
  std::string line;
  int row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;
    std::string where = "row " + std::to_string(row);
    auto fields = split_csv(line);
    if (!fields) throw ValidationError(where + ": unterminated quoted field");
    if (!header_seen) {
      const std::vector<std::string> expected = {"metric", "system_id", "instance_id", "score"};
      if (*fields != expected)
        throw ValidationError(where + ": header must be 'metric,system_id,instance_id,score'");
      header_seen = true;
      continue;
    }
    if (fields->size() != 4)
      throw ValidationError(where + ": expected 4 columns, found " +
                            std::to_string(fields->size()));
    const auto& metric = (*fields)[0];
    const auto& sys = (*fields)[1];
    const auto& inst = (*fields)[2];
    if (metric.empty() || sys.empty() || inst.empty())
      throw ValidationError(where + ": empty metric, system_id, or instance_id");
    auto score = parse_real((*fields)[3]);
    if (!score)
      throw ValidationError(where + ": non-numeric score '" + (*fields)[3] + "'");
    auto it = by_metric.try_emplace(metric, metric).first;
    if (!it->second.insert(sys, inst, *score))
      throw ValidationError(where + ": duplicate row for (" + sys + ", " + inst +
                            ") in metric '" + metric + "'");
  }
  if (in.bad()) throw IoError("read error while loading scores");
  if (!header_seen) throw ValidationError("row 1: missing header");
  std::vector<ScoreMatrix> out;
  for (auto& [name, m] : by_metric) out.push_back(std::move(m));
  return out;
}

std::vector<ScoreMatrix> load_score_matrices(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open score file '" + path + "'");
  try {
    return parse_score_matrices(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

ScoreMatrix load_score_matrix(const std::string& path) {
  auto all = load_score_matrices(path);
  if (all.size() != 1)
    throw ValidationError(path + ": expected exactly one metric, found " +
                          std::to_string(all.size()));
  return std::move(all.front());
}

void write_score_matrix(const ScoreMatrix& matrix, std::ostream& out) {
  out << "metric,system_id,instance_id,score\n";
  const std::string metric = csv_field(matrix.metric_name());
  for (const auto& [key, v] : matrix.entries()) {
    out << metric << ',' << csv_field(key.first) << ',' << csv_field(key.second)
        << ',' << fixed6(v) << '\n';
  }
}

}  // namespace aligneval
