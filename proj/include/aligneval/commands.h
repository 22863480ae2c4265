#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aligneval/alignment.h"
#include "aligneval/category.h"
#include "aligneval/corpus.h"
#include "aligneval/report.h"
#include "aligneval/score_matrix.h"
#include "aligneval/stats.h"

namespace aligneval {

// Options shared by the subcommands. Commands compute every output in
// memory and return it; the caller commits the files.
struct RunConfig {
  std::vector<MetricKind> metrics;        // empty: command default
  std::vector<CategoryId> categories;     // empty: command default
  ReportFormat format = ReportFormat::Tsv;
  int bins = 20;
  Level level = Level::Summary;
  SummaryMode mode = SummaryMode::Averaged;
  bool dump_alignments = false;
};

// Label of the alignment a metric contributes to analyses.
std::string_view alignment_label(MetricKind metric);

// Default metrics: rouge1, plus bertscore when the corpus has embeddings.
// Throws ValidationError if bertscore is requested without embeddings.
std::vector<MetricKind> resolve_metrics(const Corpus& corpus, const RunConfig& config);

// <metric>_{precision,recall,f1}.csv and <metric>_<category>_recall.csv for
// every requested category; alignments.jsonl when dumping.
OutputFiles cmd_score(const Corpus& corpus, const RunConfig& config);

// contributions.<ext> (requested categories, default all) and
// content_types.<ext>. Mode AVERAGED averages per-summary ratios; POOLED
// divides summed filtered weight by summed total weight.
OutputFiles cmd_contributions(const Corpus& corpus, const RunConfig& config);

// scu_prop.<ext> and scu_histogram_<metric>.json.
OutputFiles cmd_scu(const Corpus& corpus, const RunConfig& config);

// comparison_<metric>.<ext>: mean F1 of each system over the instances
// both systems summarized, overall and per category.
OutputFiles cmd_compare(const Corpus& corpus, const RunConfig& config,
                        const std::string& system_a, const std::string& system_b);

struct CorrelateOptions {
  std::optional<std::string> anchor_a;
  std::optional<std::string> anchor_b;
  std::optional<std::string> target;
};

// delta_table.<ext> when both anchors are given, correlations.<ext> when a
// target is given. Throws ValidationError on duplicate metric names or
// missing metrics.
OutputFiles cmd_correlate(const std::vector<ScoreMatrix>& matrices, const RunConfig& config,
                          const CorrelateOptions& options);

// One-line description of a validated corpus.
std::string describe_corpus(const Corpus& corpus);

}  // namespace aligneval
