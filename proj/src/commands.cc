#include "aligneval/commands.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "aligneval/error.h"
#include "aligneval/format.h"
#include "aligneval/scu.h"

namespace aligneval {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string table_name(std::string_view stem, const RunConfig& config) {
  return std::string(stem) + std::string(extension(config.format));
}

std::string matrix_csv(const ScoreMatrix& m) {
  std::ostringstream out;
  write_score_matrix(m, out);
  return out.str();
}

// Every (instance, system) pair in corpus order, systems sorted.
template <typename F>
void for_each_summary(const Corpus& corpus, F&& f) {
  for (const auto& inst : corpus.instances)
    for (const auto& [system, cand] : inst.candidates) f(inst, system, cand);
}

// The alignments whose weight a metric attributes to categories: every
// reference's canonical ROUGE-1 alignment, or the BERTScore recall
// alignment of the chosen reference.
struct AttributedAlignment {
  const Summary* reference;
  WeightedAlignment alignment;
};

std::vector<AttributedAlignment> attributed(MetricKind metric, const Instance& inst,
                                            const Summary& cand) {
  std::vector<AttributedAlignment> out;
  if (metric == MetricKind::Rouge1) {
    for (const auto& ref : inst.references)
      out.push_back({&ref, rouge1_alignment(ref, cand)});
  } else {
    auto bert = bertscore_score(inst.references, cand);
    out.push_back({&inst.references[bert.chosen_reference], bert.chosen_recall()});
  }
  return out;
}

nlohmann::ordered_json edges_json(const WeightedAlignment& a) {
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : a.edges())
    edges.push_back({e.ref, e.cand, e.weight});
  return edges;
}

std::string alignment_record(const Instance& inst, const std::string& system, std::size_t r,
                             std::string_view kind, const WeightedAlignment& a) {
  nlohmann::ordered_json rec;
  rec["instance_id"] = inst.instance_id;
  rec["system_id"] = system;
  rec["reference"] = r;
  rec["kind"] = kind;
  rec["weight"] = a.weight();
  rec["edges"] = edges_json(a);
  return rec.dump() + "\n";
}

std::optional<double> mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace

std::string_view alignment_label(MetricKind metric) {
  return metric == MetricKind::Rouge1 ? "rouge1" : "bertscore_recall";
}

std::vector<MetricKind> resolve_metrics(const Corpus& corpus, const RunConfig& config) {
  std::vector<MetricKind> metrics = config.metrics;
  if (metrics.empty()) {
    metrics.push_back(MetricKind::Rouge1);
    if (corpus.has_embeddings()) metrics.push_back(MetricKind::BertScore);
  }
  std::vector<MetricKind> unique;
  for (MetricKind m : metrics)
    if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(m);
  for (MetricKind m : unique)
    if (m == MetricKind::BertScore && !corpus.has_embeddings())
      throw ValidationError("metric bertscore needs token embeddings; the corpus has none");
  return unique;
}

OutputFiles cmd_score(const Corpus& corpus, const RunConfig& config) {
  const auto metrics = resolve_metrics(corpus, config);
  OutputFiles files;
  std::string dump;

  for (MetricKind metric : metrics) {
    const std::string base(to_string(metric));
    ScoreMatrix p(base + "_precision"), r(base + "_recall"), f(base + "_f1");
    std::vector<ScoreMatrix> per_category;
    for (CategoryId c : config.categories)
      per_category.emplace_back(base + "_" + lower(to_string(c)) + "_recall");

    for_each_summary(corpus, [&](const Instance& inst, const std::string& system,
                                 const Summary& cand) {
      MetricScore score;
      std::vector<CategoryScore> cats;
      if (metric == MetricKind::Rouge1) {
        score = rouge1_score(inst.references, cand);
        std::vector<WeightedAlignment> alignments;
        for (const auto& ref : inst.references) alignments.push_back(rouge1_alignment(ref, cand));
        for (CategoryId c : config.categories)
          cats.push_back(rouge_category_scores(alignments, inst.references, cand, c));
        if (config.dump_alignments)
          for (std::size_t i = 0; i < alignments.size(); ++i)
            dump += alignment_record(inst, system, i, "rouge1", alignments[i]);
      } else {
        auto bert = bertscore_score(inst.references, cand);
        score = bert.score;
        for (CategoryId c : config.categories)
          cats.push_back(bert_category_scores(bert, inst.references, cand, c));
        if (config.dump_alignments)
          for (std::size_t i = 0; i < inst.references.size(); ++i) {
            dump += alignment_record(inst, system, i, "bertscore_recall",
                                     bert.recall_alignments[i]);
            dump += alignment_record(inst, system, i, "bertscore_precision",
                                     bert.precision_alignments[i]);
          }
      }
      p.insert(system, inst.instance_id, score.precision);
      r.insert(system, inst.instance_id, score.recall);
      f.insert(system, inst.instance_id, score.f1);
      for (std::size_t k = 0; k < cats.size(); ++k)
        if (cats[k].recall) per_category[k].insert(system, inst.instance_id, *cats[k].recall);
    });

    for (const ScoreMatrix* m : {&p, &r, &f})
      files.emplace_back(m->metric_name() + ".csv", matrix_csv(*m));
    for (const auto& m : per_category) files.emplace_back(m.metric_name() + ".csv", matrix_csv(m));
  }
  if (config.dump_alignments) files.emplace_back("alignments.jsonl", dump);
  return files;
}

OutputFiles cmd_contributions(const Corpus& corpus, const RunConfig& config) {
  const auto metrics = resolve_metrics(corpus, config);
  std::vector<CategoryId> categories = config.categories;
  if (categories.empty()) categories.assign(kCategories.begin(), kCategories.end());

  Table by_category({"category", "metric", "mean_contribution_pct", "n_summaries"});
  Table by_group({"content_type", "metric", "mean_contribution_pct", "n_summaries"});

  struct Accumulator {
    std::vector<double> ratios;
    double num = 0.0;
    double den = 0.0;

    void add(double n, double d) {
      if (d <= 0.0) return;
      ratios.push_back(n / d);
      num += n;
      den += d;
    }
    std::optional<double> pct(SummaryMode mode) const {
      if (ratios.empty()) return std::nullopt;
      if (mode == SummaryMode::Pooled) return 100.0 * num / den;
      return 100.0 * *mean_of(ratios);
    }
  };

  for (MetricKind metric : metrics) {
    std::vector<Accumulator> cat_acc(categories.size());
    std::vector<Accumulator> group_acc(kContentGroups.size());

    for_each_summary(corpus, [&](const Instance& inst, const std::string&, const Summary& cand) {
      auto pairs = attributed(metric, inst, cand);
      double den = 0.0;
      for (const auto& p : pairs) den += p.alignment.weight();
      for (std::size_t k = 0; k < categories.size(); ++k) {
        double num = 0.0;
        for (const auto& p : pairs)
          num += filter(p.alignment, categories[k], *p.reference, cand).weight();
        cat_acc[k].add(num, den);
      }
      for (std::size_t g = 0; g < kContentGroups.size(); ++g) {
        double num = 0.0;
        for (const auto& p : pairs)
          num += WeightedAlignment::total_weight(
              union_filter(p.alignment, members(kContentGroups[g]), *p.reference, cand));
        group_acc[g].add(num, den);
      }
    });

    const std::string label(alignment_label(metric));
    for (std::size_t k = 0; k < categories.size(); ++k)
      by_category.add_row({Cell::str(std::string(to_string(categories[k]))), Cell::str(label),
                           Cell::num(fixed1(cat_acc[k].pct(config.mode))),
                           Cell::num(std::to_string(cat_acc[k].ratios.size()))});
    for (std::size_t g = 0; g < kContentGroups.size(); ++g)
      by_group.add_row({Cell::str(std::string(to_string(kContentGroups[g]))), Cell::str(label),
                        Cell::num(fixed1(group_acc[g].pct(config.mode))),
                        Cell::num(std::to_string(group_acc[g].ratios.size()))});
  }

  return {{table_name("contributions", config), by_category.render(config.format)},
          {table_name("content_types", config), by_group.render(config.format)}};
}

OutputFiles cmd_scu(const Corpus& corpus, const RunConfig& config) {
  const auto metrics = resolve_metrics(corpus, config);
  Table table({"instance_id", "system_id", "metric", "w_total", "w_scu", "prop"});
  OutputFiles files;

  for (MetricKind metric : metrics) {
    auto analysis = prop_scu(corpus, metric);
    const std::string label(alignment_label(metric));
    if (analysis.records.empty())
      throw ValidationError("SCU analysis for " + label +
                            ": every alignment has zero weight, no proportions to summarize");
    for (const auto& rec : analysis.records)
      table.add_row({Cell::str(rec.instance_id), Cell::str(rec.system_id), Cell::str(label),
                     Cell::num(fixed6(rec.w_total)), Cell::num(fixed6(rec.w_scu)),
                     Cell::num(fixed6(rec.prop))});

    auto d = distribution_summary(analysis.records, config.bins);
    auto join6 = [](const std::vector<double>& xs) {
      std::string s;
      for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fixed6(xs[i]);
      return s;
    };
    std::string counts;
    for (std::size_t i = 0; i < d.counts.size(); ++i)
      counts += (i ? "," : "") + std::to_string(d.counts[i]);
    std::string json = fmt::format(
        "{{\"metric\":\"{}\",\"n\":{},\"skipped\":{},\"bins\":{},\"edges\":[{}],"
        "\"counts\":[{}],\"mean\":{},\"stddev\":{},\"quartiles\":[{}]}}\n",
        label, d.n, analysis.skipped, d.bins, join6(d.edges), counts, fixed6(d.mean),
        fixed6(d.stddev), join6({d.q1, d.median, d.q3}));
    files.emplace_back("scu_histogram_" + std::string(to_string(metric)) + ".json", json);
  }
  files.insert(files.begin(), {table_name("scu_prop", config), table.render(config.format)});
  return files;
}

OutputFiles cmd_compare(const Corpus& corpus, const RunConfig& config,
                        const std::string& system_a, const std::string& system_b) {
  const auto metrics = resolve_metrics(corpus, config);
  std::vector<CategoryId> categories = config.categories;
  if (categories.empty()) categories.assign(kCategories.begin(), kCategories.end());

  std::vector<const Instance*> shared;
  for (const auto& inst : corpus.instances)
    if (inst.candidates.count(system_a) && inst.candidates.count(system_b))
      shared.push_back(&inst);
  if (shared.empty())
    throw ValidationError("systems '" + system_a + "' and '" + system_b +
                          "' share no instance");

  OutputFiles files;
  for (MetricKind metric : metrics) {
    // [0] overall F1, [1 + k] category k; per system.
    std::vector<std::vector<double>> vals_a(categories.size() + 1), vals_b(categories.size() + 1);
    for (const Instance* inst : shared) {
      for (auto [system, vals] : {std::pair{&system_a, &vals_a}, std::pair{&system_b, &vals_b}}) {
        const Summary& cand = inst->candidates.at(*system);
        std::vector<CategoryScore> cats;
        if (metric == MetricKind::Rouge1) {
          (*vals)[0].push_back(rouge1_score(inst->references, cand).f1);
          std::vector<WeightedAlignment> alignments;
          for (const auto& ref : inst->references)
            alignments.push_back(rouge1_alignment(ref, cand));
          for (CategoryId c : categories)
            cats.push_back(rouge_category_scores(alignments, inst->references, cand, c));
        } else {
          auto bert = bertscore_score(inst->references, cand);
          (*vals)[0].push_back(bert.score.f1);
          for (CategoryId c : categories)
            cats.push_back(bert_category_scores(bert, inst->references, cand, c));
        }
        for (std::size_t k = 0; k < cats.size(); ++k)
          if (cats[k].f1) (*vals)[k + 1].push_back(*cats[k].f1);
      }
    }

    Table table({"category", "f1_sysA", "f1_sysB", "delta", "rel_delta_pct"});
    for (std::size_t k = 0; k <= categories.size(); ++k) {
      std::string label = k == 0 ? (metric == MetricKind::Rouge1 ? "ROUGE" : "BERTSCORE")
                                 : std::string(to_string(categories[k - 1]));
      auto a = mean_of(vals_a[k]);
      auto b = mean_of(vals_b[k]);
      std::optional<double> delta, rel;
      if (a && b) delta = *b - *a;
      if (delta && *a != 0.0) rel = 100.0 * *delta / *a;
      table.add_row({Cell::str(label), Cell::num(fixed6(a)), Cell::num(fixed6(b)),
                     Cell::num(fixed6(delta)), Cell::num(fixed1(rel))});
    }
    files.emplace_back(table_name("comparison_" + std::string(to_string(metric)), config),
                       table.render(config.format));
  }
  return files;
}

OutputFiles cmd_correlate(const std::vector<ScoreMatrix>& matrices, const RunConfig& config,
                          const CorrelateOptions& options) {
  if (options.anchor_a.has_value() != options.anchor_b.has_value())
    throw ValidationError("--anchor-a and --anchor-b must be given together");
  if (!options.anchor_a && !options.target)
    throw ValidationError("nothing to compute: give --anchor-a/--anchor-b and/or --target");

  std::map<std::string, ScoreMatrix> metrics;
  for (const auto& m : matrices)
    if (!metrics.emplace(m.metric_name(), m).second)
      throw ValidationError("metric '" + m.metric_name() + "' appears in more than one score file");

  OutputFiles files;
  if (options.anchor_a) {
    auto rows = delta_table(metrics, *options.anchor_a, *options.anchor_b, config.level,
                            Coefficient::Pearson, config.mode);
    Table table({"metric", "corr_anchor_a", "corr_anchor_b", "delta"});
    for (const auto& row : rows)
      table.add_row({Cell::str(row.metric), Cell::num(fixed6(row.corr_a)),
                     Cell::num(fixed6(row.corr_b)), Cell::num(fixed6(row.delta))});
    files.emplace_back(table_name("delta_table", config), table.render(config.format));
  }
  if (options.target) {
    auto it = metrics.find(*options.target);
    if (it == metrics.end())
      throw ValidationError("target metric '" + *options.target + "' not found");
    Table table({"metric", "level", "pearson", "spearman", "n", "skipped"});
    auto value = [](const CorrelationReport& r) {
      return r.defined ? std::optional<double>(r.value) : std::nullopt;
    };
    for (const auto& [name, m] : metrics) {
      if (name == *options.target) continue;
      for (Level level : {Level::Summary, Level::System}) {
        auto p = correlate_report(m, it->second, level, Coefficient::Pearson, config.mode);
        auto s = correlate_report(m, it->second, level, Coefficient::Spearman, config.mode);
        table.add_row({Cell::str(name), Cell::str(std::string(to_string(level))),
                       Cell::num(fixed6(value(p))), Cell::num(fixed6(value(s))),
                       Cell::num(std::to_string(p.n)), Cell::num(std::to_string(p.skipped))});
      }
    }
    files.emplace_back(table_name("correlations", config), table.render(config.format));
  }
  return files;
}

std::string describe_corpus(const Corpus& corpus) {
  std::size_t refs = 0, cands = 0;
  std::set<std::string> systems;
  for (const auto& inst : corpus.instances) {
    refs += inst.references.size();
    cands += inst.candidates.size();
    for (const auto& [system, cand] : inst.candidates) systems.insert(system);
  }
  return fmt::format("{} instances, {} references, {} candidate summaries from {} systems; "
                     "embeddings: {}; SCUs: {}",
                     corpus.instances.size(), refs, cands, systems.size(),
                     corpus.has_embeddings() ? fmt::format("dim {}", corpus.embedding_dim())
                                             : std::string("none"),
                     corpus.has_scus() ? "yes" : "no");
}

}  // namespace aligneval
