#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aligneval/score_matrix.h"

namespace aligneval {

// A correlation is undefined because one side has zero variance.
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Product-moment coefficient, clamped to [-1, 1]. Throws
// std::invalid_argument on length mismatch or fewer than two points and
// DegenerateError on zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson on average ranks (ties share the mean of their positions).
double spearman(std::span<const double> xs, std::span<const double> ys);

// 1-based average ranks.
std::vector<double> average_ranks(std::span<const double> xs);

enum class Level { Summary, System };
enum class Coefficient { Pearson, Spearman };
enum class SummaryMode { Averaged, Pooled };

std::string_view to_string(Level level);
std::string_view to_string(Coefficient coefficient);
std::string_view to_string(SummaryMode mode);

struct CorrelationReport {
  std::string metric_a;
  std::string metric_b;
  Level level = Level::Summary;
  Coefficient coefficient = Coefficient::Pearson;
  SummaryMode mode = SummaryMode::Averaged;  // summary level only
  double value = 0.0;
  int n = 0;        // points (system / pooled) or instances averaged
  int skipped = 0;  // degenerate instances left out of the average
  bool defined = true;  // false when the correlation is degenerate; value is then 0
};

// Correlates two score matrices over their shared (system, instance) cells.
// SYSTEM: per-system means over shared cells, then one correlation.
// SUMMARY/AVERAGED: one correlation per instance across systems, averaged;
// degenerate instances are skipped and counted. SUMMARY/POOLED: every
// shared cell as one point. Throws ValidationError on insufficient overlap
// (fewer than two shared systems) and DegenerateError when nothing
// non-degenerate remains.
CorrelationReport correlate(const ScoreMatrix& a, const ScoreMatrix& b, Level level,
                            Coefficient coefficient, SummaryMode mode = SummaryMode::Averaged);

// Same as correlate() but reports degeneracy through `defined` instead of
// throwing, keeping n and skipped.
CorrelationReport correlate_report(const ScoreMatrix& a, const ScoreMatrix& b, Level level,
                                   Coefficient coefficient,
                                   SummaryMode mode = SummaryMode::Averaged);

struct DeltaRow {
  std::string metric;
  std::optional<double> corr_a;
  std::optional<double> corr_b;
  std::optional<double> delta;  // corr_a - corr_b; absent for the anchors
};

// Table of every metric's correlation to two anchors: anchor rows first,
// then the remaining metrics by name. Degenerate correlations are absent.
// Throws ValidationError when an anchor is missing.
std::vector<DeltaRow> delta_table(const std::map<std::string, ScoreMatrix>& metrics,
                                  const std::string& anchor_a, const std::string& anchor_b,
                                  Level level = Level::Summary,
                                  Coefficient coefficient = Coefficient::Pearson,
                                  SummaryMode mode = SummaryMode::Averaged);

}  // namespace aligneval
