#include "aligneval/category.h"

#include <algorithm>

#include "aligneval/error.h"

namespace aligneval {

namespace {

struct CategoryInfo {
  CategoryId id;
  std::string_view name;
  int arity;
};

constexpr CategoryInfo kInfo[] = {
    {CategoryId::Stopwords, "STOPWORDS", 1},
    {CategoryId::NN, "NN", 1},
    {CategoryId::NNP, "NNP", 1},
    {CategoryId::VB, "VB", 1},
    {CategoryId::ADJ, "ADJ", 1},
    {CategoryId::ADV, "ADV", 1},
    {CategoryId::NUM, "NUM", 1},
    {CategoryId::NER, "NER", 1},
    {CategoryId::NpChunks, "NP-CHUNKS", 1},
    {CategoryId::Root, "ROOT", 1},
    {CategoryId::Nsubj, "NSUBJ", 1},
    {CategoryId::Dobj, "DOBJ", 1},
    {CategoryId::VbNsubj, "VB+NSUBJ", 2},
    {CategoryId::VbDobj, "VB+DOBJ", 2},
    {CategoryId::VbNsubjDobj, "VB+NSUBJ+DOBJ", 3},
    {CategoryId::Universal, "UNIVERSAL", 1},
};

constexpr CategoryId kTopic[] = {
    CategoryId::NN,  CategoryId::NNP,      CategoryId::VB,   CategoryId::ADJ,
    CategoryId::ADV, CategoryId::NUM,      CategoryId::NER,  CategoryId::NpChunks,
    CategoryId::Root, CategoryId::Nsubj,   CategoryId::Dobj,
};
constexpr CategoryId kInformation[] = {CategoryId::VbNsubj, CategoryId::VbDobj,
                                       CategoryId::VbNsubjDobj};
constexpr CategoryId kStopwordGroup[] = {CategoryId::Stopwords};

std::optional<Pos> pos_of(CategoryId id) {
  switch (id) {
    case CategoryId::NN: return Pos::NN;
    case CategoryId::NNP: return Pos::NNP;
    case CategoryId::VB: return Pos::VB;
    case CategoryId::ADJ: return Pos::ADJ;
    case CategoryId::ADV: return Pos::ADV;
    case CategoryId::NUM: return Pos::NUM;
    default: return std::nullopt;
  }
}

std::string_view label_of(CategoryId id) {
  switch (id) {
    case CategoryId::Root: return "root";
    case CategoryId::Nsubj: return "nsubj";
    case CategoryId::Dobj: return "dobj";
    default: return {};
  }
}

bool token_selected(CategoryId id, const Token& t) {
  if (auto pos = pos_of(id)) return t.pos == *pos;
  switch (id) {
    case CategoryId::Universal: return true;
    case CategoryId::Stopwords: return t.stopword;
    case CategoryId::NER: return t.ner != Ner::NONE;
    case CategoryId::NpChunks: return t.np_chunk.has_value();
    case CategoryId::Root:
    case CategoryId::Nsubj:
    case CategoryId::Dobj: return t.dep_label == label_of(id);
    default: return false;
  }
}

std::vector<int> dependents(const Summary& s, int head, std::string_view label) {
  std::vector<int> out;
  for (const auto& t : s.tokens)
    if (t.dep_head == head && t.dep_label == label) out.push_back(t.index);
  return out;
}

std::vector<Edge> keep_edges(const WeightedAlignment& a,
                             const std::set<std::pair<int, int>>& keep) {
  std::vector<Edge> out;
  for (const auto& e : a.edges())
    if (keep.count({e.ref, e.cand})) out.push_back(e);
  return out;
}

void require_weight(double total) {
  if (total == 0.0)
    throw ValidationError("contribution undefined: alignment has zero total weight");
}

}  // namespace

std::string_view to_string(CategoryId id) { return kInfo[static_cast<int>(id)].name; }

int arity(CategoryId id) { return kInfo[static_cast<int>(id)].arity; }

std::optional<CategoryId> parse_category(std::string_view name) {
  std::string upper(name);
  for (char& c : upper)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  for (CategoryId id : kCategories)
    if (to_string(id) == upper) return id;
  return std::nullopt;
}

std::string_view to_string(ContentGroup group) {
  switch (group) {
    case ContentGroup::Topic: return "TOPIC";
    case ContentGroup::Information: return "INFORMATION";
    case ContentGroup::Stopwords: return "STOPWORDS";
  }
  return {};
}

std::span<const CategoryId> members(ContentGroup group) {
  switch (group) {
    case ContentGroup::Topic: return kTopic;
    case ContentGroup::Information: return kInformation;
    case ContentGroup::Stopwords: return kStopwordGroup;
  }
  return {};
}

std::set<IndexTuple> select(CategoryId category, const Summary& summary) {
  std::set<IndexTuple> out;
  if (arity(category) == 1) {
    for (const auto& t : summary.tokens)
      if (token_selected(category, t)) out.insert({t.index});
    return out;
  }
  for (const auto& verb : summary.tokens) {
    if (verb.pos != Pos::VB) continue;
    auto subjects = dependents(summary, verb.index, "nsubj");
    auto objects = dependents(summary, verb.index, "dobj");
    switch (category) {
      case CategoryId::VbNsubj:
        for (int u : subjects) out.insert({verb.index, u});
        break;
      case CategoryId::VbDobj:
        for (int o : objects) out.insert({verb.index, o});
        break;
      case CategoryId::VbNsubjDobj:
        for (int u : subjects)
          for (int o : objects) out.insert({verb.index, u, o});
        break;
      default:
        break;
    }
  }
  return out;
}

std::size_t slot_count(CategoryId category, const Summary& summary) {
  return select(category, summary).size() * static_cast<std::size_t>(arity(category));
}

FilteredAlignment filter(const WeightedAlignment& alignment, CategoryId category,
                         const Summary& reference, const Summary& candidate) {
  FilteredAlignment out{category, {}, {}};
  const auto ref_sel = select(category, reference);
  const auto cand_sel = select(category, candidate);

  if (arity(category) == 1) {
    std::vector<bool> in_ref(reference.size(), false), in_cand(candidate.size(), false);
    for (const auto& t : ref_sel) in_ref[t[0]] = true;
    for (const auto& t : cand_sel) in_cand[t[0]] = true;
    for (const auto& e : alignment.edges()) {
      if (!in_ref[e.ref] || !in_cand[e.cand]) continue;
      if (category == CategoryId::NER && reference[e.ref].ner != candidate[e.cand].ner) continue;
      out.edges.push_back(e);
    }
    return out;
  }

  std::set<std::pair<int, int>> keep;
  for (const auto& rt : ref_sel) {
    for (const auto& ct : cand_sel) {
      bool aligned = true;
      for (std::size_t k = 0; k < rt.size() && aligned; ++k)
        aligned = alignment.contains(rt[k], ct[k]);
      if (!aligned) continue;
      out.aligned_tuples.emplace(rt, ct);
      for (std::size_t k = 0; k < rt.size(); ++k) keep.emplace(rt[k], ct[k]);
    }
  }
  out.edges = keep_edges(alignment, keep);
  return out;
}

double contribution(const WeightedAlignment& alignment, CategoryId category,
                    const Summary& reference, const Summary& candidate) {
  double total = alignment.weight();
  require_weight(total);
  return filter(alignment, category, reference, candidate).weight() / total;
}

std::vector<Edge> union_filter(const WeightedAlignment& alignment,
                               std::span<const CategoryId> categories,
                               const Summary& reference, const Summary& candidate) {
  std::set<std::pair<int, int>> keep;
  for (CategoryId c : categories)
    for (const auto& e : filter(alignment, c, reference, candidate).edges)
      keep.emplace(e.ref, e.cand);
  return keep_edges(alignment, keep);
}

double grouped_contribution(const WeightedAlignment& alignment, ContentGroup group,
                            const Summary& reference, const Summary& candidate) {
  double total = alignment.weight();
  require_weight(total);
  auto edges = union_filter(alignment, members(group), reference, candidate);
  return WeightedAlignment::total_weight(edges) / total;
}

CategoryScore CategoryScore::from(std::optional<double> precision,
                                  std::optional<double> recall) {
  CategoryScore s{precision, recall, std::nullopt};
  if (precision && recall)
    s.f1 = harmonic_mean(*precision, *recall);
  else if (precision || recall)
    s.f1 = 0.0;
  return s;
}

namespace {

std::optional<double> ratio(double num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return num / static_cast<double>(den);
}

}  // namespace

CategoryScore category_pr(const WeightedAlignment& alignment, CategoryId category,
                          const Summary& reference, const Summary& candidate) {
  double w = filter(alignment, category, reference, candidate).weight();
  return CategoryScore::from(ratio(w, slot_count(category, candidate)),
                             ratio(w, slot_count(category, reference)));
}

CategoryScore rouge_category_scores(std::span<const WeightedAlignment> per_reference,
                                    std::span<const Summary> references,
                                    const Summary& candidate, CategoryId category) {
  double w = 0.0;
  std::size_t ref_slots = 0;
  for (std::size_t r = 0; r < references.size(); ++r) {
    w += filter(per_reference[r], category, references[r], candidate).weight();
    ref_slots += slot_count(category, references[r]);
  }
  std::size_t cand_slots = references.size() * slot_count(category, candidate);
  return CategoryScore::from(ratio(w, cand_slots), ratio(w, ref_slots));
}

CategoryScore bert_category_scores(const BertScoreResult& bert,
                                   std::span<const Summary> references,
                                   const Summary& candidate, CategoryId category) {
  const Summary& ref = references[bert.chosen_reference];
  double w_recall = filter(bert.chosen_recall(), category, ref, candidate).weight();
  double w_precision = filter(bert.chosen_precision(), category, ref, candidate).weight();
  return CategoryScore::from(ratio(w_precision, slot_count(category, candidate)),
                             ratio(w_recall, slot_count(category, ref)));
}

CategoryScore category_scores(MetricKind metric, std::span<const Summary> references,
                              const Summary& candidate, CategoryId category) {
  if (metric == MetricKind::BertScore)
    return bert_category_scores(bertscore_score(references, candidate), references, candidate,
                                category);
  std::vector<WeightedAlignment> alignments;
  for (const auto& ref : references) alignments.push_back(rouge1_alignment(ref, candidate));
  return rouge_category_scores(alignments, references, candidate, category);
}

}  // namespace aligneval
