#pragma once

#include <string>
#include <vector>

#include "aligneval/alignment.h"
#include "aligneval/corpus.h"

namespace aligneval {

// A_SCU: edges whose endpoints share an SCU id.
std::vector<Edge> scu_filter(const WeightedAlignment& alignment, const Summary& reference,
                             const Summary& candidate);

struct ScuProportion {
  std::string instance_id;
  std::string system_id;
  MetricKind metric = MetricKind::Rouge1;
  double w_total = 0.0;  // W(A)
  double w_scu = 0.0;    // W(A_SCU)
  double prop = 0.0;     // w_scu / w_total
};

struct ScuAnalysis {
  std::vector<ScuProportion> records;  // instance order, then system id
  int skipped = 0;                     // summaries whose alignment weighs zero
};

// Per (instance, system) proportion of alignment weight explained by shared
// SCUs. ROUGE uses the SCU-maximizing alignment against every reference and
// pools the weights; BERTScore uses the recall alignment of the F1-chosen
// reference. Throws ValidationError when no token in the corpus carries an
// SCU.
ScuAnalysis prop_scu(const Corpus& corpus, MetricKind metric);

struct Distribution {
  int bins = 0;
  std::vector<double> edges;  // bins + 1 equal-width edges over [0, 1]
  std::vector<int> counts;    // bins are [lo, hi) except the last, [lo, 1]
  double mean = 0.0;
  double stddev = 0.0;        // population
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;            // linear-interpolated quantiles
  std::size_t n = 0;
};

// Throws std::invalid_argument on empty input or bins < 1.
Distribution distribution_summary(const std::vector<double>& props, int bins);
Distribution distribution_summary(const std::vector<ScuProportion>& props, int bins);

}  // namespace aligneval
