#pragma once

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "aligneval/alignment.h"
#include "aligneval/corpus.h"

namespace aligneval {

enum class CategoryId {
  Stopwords,
  NN,
  NNP,
  VB,
  ADJ,
  ADV,
  NUM,
  NER,
  NpChunks,
  Root,
  Nsubj,
  Dobj,
  VbNsubj,
  VbDobj,
  VbNsubjDobj,
  // Selects every token. Not a reported category: it reduces the
  // category-specific scores to the metric's own scores.
  Universal,
};

// The fifteen reported categories, in report order.
inline constexpr std::array<CategoryId, 15> kCategories = {
    CategoryId::Stopwords, CategoryId::NN,       CategoryId::NNP,     CategoryId::VB,
    CategoryId::ADJ,       CategoryId::ADV,      CategoryId::NUM,     CategoryId::NER,
    CategoryId::NpChunks,  CategoryId::Root,     CategoryId::Nsubj,   CategoryId::Dobj,
    CategoryId::VbNsubj,   CategoryId::VbDobj,   CategoryId::VbNsubjDobj,
};

std::string_view to_string(CategoryId id);
std::optional<CategoryId> parse_category(std::string_view name);
int arity(CategoryId id);

enum class ContentGroup { Topic, Information, Stopwords };

inline constexpr std::array<ContentGroup, 3> kContentGroups = {
    ContentGroup::Topic, ContentGroup::Information, ContentGroup::Stopwords};

std::string_view to_string(ContentGroup group);
std::span<const CategoryId> members(ContentGroup group);

// A tuple of token indices; size equals the category's arity. Dependency
// tuples are ordered (verb, nsubj) / (verb, dobj) / (verb, nsubj, dobj).
using IndexTuple = std::vector<int>;

std::set<IndexTuple> select(CategoryId category, const Summary& summary);

// Number of slots a category selects: |tuples| * arity.
std::size_t slot_count(CategoryId category, const Summary& summary);

struct FilteredAlignment {
  CategoryId category;
  std::vector<Edge> edges;  // subset of the base edges, base order
  std::set<std::pair<IndexTuple, IndexTuple>> aligned_tuples;  // arity > 1 only

  double weight() const { return WeightedAlignment::total_weight(edges); }
};

// A_C. Arity 1: keep (i, j, w) iff i in C(R) and j in C(S) (NER additionally
// requires equal entity types). Arity k: keep an edge iff it fills some
// slot of a tuple pair whose k slots are all aligned.
FilteredAlignment filter(const WeightedAlignment& alignment, CategoryId category,
                         const Summary& reference, const Summary& candidate);

// W(A_C) / W(A). Throws ValidationError when W(A) is zero.
double contribution(const WeightedAlignment& alignment, CategoryId category,
                    const Summary& reference, const Summary& candidate);

// Contribution of the union of the group's filtered edge sets.
double grouped_contribution(const WeightedAlignment& alignment, ContentGroup group,
                            const Summary& reference, const Summary& candidate);

// Edges covered by at least one of the given categories, base order.
std::vector<Edge> union_filter(const WeightedAlignment& alignment,
                               std::span<const CategoryId> categories,
                               const Summary& reference, const Summary& candidate);

// Category-specific precision/recall/F1. A side is absent when its
// denominator is zero. F1 is absent only when both sides are; when exactly
// one side is absent the other is necessarily 0 and so is F1.
struct CategoryScore {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;

  static CategoryScore from(std::optional<double> precision, std::optional<double> recall);
};

// Single alignment: recall = W(A_C)/|C(R)|, precision = W(A_C)/|C(S)|.
CategoryScore category_pr(const WeightedAlignment& alignment, CategoryId category,
                          const Summary& reference, const Summary& candidate);

// Multi-reference scores mirroring the metric: ROUGE micro-averages over
// references (precision denominator |refs| * |C(S)|); BERTScore uses the
// F1-chosen reference, its recall alignment for recall and its precision
// alignment for precision.
CategoryScore category_scores(MetricKind metric, std::span<const Summary> references,
                              const Summary& candidate, CategoryId category);

// Same, from alignments computed once per summary: `per_reference` holds one
// canonical ROUGE alignment per reference.
CategoryScore rouge_category_scores(std::span<const WeightedAlignment> per_reference,
                                    std::span<const Summary> references,
                                    const Summary& candidate, CategoryId category);
CategoryScore bert_category_scores(const BertScoreResult& bert,
                                   std::span<const Summary> references,
                                   const Summary& candidate, CategoryId category);

}  // namespace aligneval
