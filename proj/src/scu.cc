#include "aligneval/scu.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aligneval/error.h"

namespace aligneval {

std::vector<Edge> scu_filter(const WeightedAlignment& alignment, const Summary& reference,
                             const Summary& candidate) {
  std::vector<Edge> out;
  for (const auto& e : alignment.edges())
    if (shares_scu(reference[e.ref], candidate[e.cand])) out.push_back(e);
  return out;
}

ScuAnalysis prop_scu(const Corpus& corpus, MetricKind metric) {
  if (!corpus.has_scus())
    throw ValidationError("SCU analysis needs SCU annotations; no token in the corpus has any");
  ScuAnalysis out;
  for (const auto& inst : corpus.instances) {
    for (const auto& [system, cand] : inst.candidates) {
      ScuProportion rec{inst.instance_id, system, metric};
      if (metric == MetricKind::Rouge1) {
        for (const auto& ref : inst.references) {
          auto a = scu_max_rouge_alignment(ref, cand);
          rec.w_total += a.weight();
          rec.w_scu += WeightedAlignment::total_weight(scu_filter(a, ref, cand));
        }
      } else {
        auto bert = bertscore_score(inst.references, cand);
        const auto& a = bert.chosen_recall();
        const auto& ref = inst.references[bert.chosen_reference];
        rec.w_total = a.weight();
        rec.w_scu = WeightedAlignment::total_weight(scu_filter(a, ref, cand));
      }
      if (rec.w_total <= 0.0) {
        ++out.skipped;
        continue;
      }
      rec.prop = rec.w_scu / rec.w_total;
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  double pos = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

Distribution distribution_summary(const std::vector<double>& props, int bins) {
  if (props.empty()) throw std::invalid_argument("distribution of an empty sample");
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  Distribution d;
  d.bins = bins;
  d.n = props.size();
  d.counts.assign(bins, 0);
  for (int k = 0; k <= bins; ++k) d.edges.push_back(static_cast<double>(k) / bins);

  for (double p : props) {
    int idx = std::clamp(static_cast<int>(std::floor(p * bins)), 0, bins - 1);
    // p * bins can land one ulp on the wrong side of an edge.
    while (idx + 1 < bins && p >= d.edges[idx + 1]) ++idx;
    while (idx > 0 && p < d.edges[idx]) --idx;
    ++d.counts[idx];
  }

  double sum = 0.0;
  for (double p : props) sum += p;
  d.mean = sum / static_cast<double>(props.size());
  double ss = 0.0;
  for (double p : props) ss += (p - d.mean) * (p - d.mean);
  d.stddev = std::sqrt(ss / static_cast<double>(props.size()));

  std::vector<double> sorted = props;
  std::sort(sorted.begin(), sorted.end());
  d.q1 = quantile(sorted, 0.25);
  d.median = quantile(sorted, 0.5);
  d.q3 = quantile(sorted, 0.75);
  return d;
}

Distribution distribution_summary(const std::vector<ScuProportion>& props, int bins) {
  std::vector<double> values;
  values.reserve(props.size());
  for (const auto& p : props) values.push_back(p.prop);
  return distribution_summary(values, bins);
}

}  // namespace aligneval
