#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace aligneval {

using ScoreKey = std::pair<std::string, std::string>;  // (system, instance)

// (system id x instance id) -> score for one metric.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(std::string metric_name)
      : metric_name_(std::move(metric_name)) {}

  const std::string& metric_name() const { return metric_name_; }
  const std::map<ScoreKey, double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Returns false when the key is already present.
  bool insert(const std::string& system_id, const std::string& instance_id,
              double score);
  std::optional<double> get(const std::string& system_id,
                            const std::string& instance_id) const;

  std::set<std::string> systems() const;
  std::set<std::string> instances() const;
  // Cells of the systems x instances grid that have no entry.
  std::vector<ScoreKey> missing_cells() const;

 private:
  std::string metric_name_;
  std::map<ScoreKey, double> entries_;
};

// Parses `metric,system_id,instance_id,score` CSV. A file may hold several
// metrics; they come back in metric-name order. Throws ValidationError with
// the row number on a bad header, wrong column count, duplicate key, or a
// non-numeric / non-finite score.
std::vector<ScoreMatrix> parse_score_matrices(std::istream& in);
std::vector<ScoreMatrix> load_score_matrices(const std::string& path);

// As above, but the file must contain exactly one metric.
ScoreMatrix load_score_matrix(const std::string& path);

// Rows ordered by (system, instance); scores with 6 decimals.
void write_score_matrix(const ScoreMatrix& matrix, std::ostream& out);

}  // namespace aligneval
