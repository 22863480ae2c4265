#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aligneval/corpus.h"

namespace aligneval {

enum class MetricKind { Rouge1, BertScore };

std::string_view to_string(MetricKind kind);

enum class AlignmentKind { Rouge1, BertRecall, BertPrecision };

struct Edge {
  int ref = 0;
  int cand = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A set of weighted token pairs between a reference (length m) and a
// candidate (length n). Edges are kept sorted by (ref, cand), so W(A) is
// always summed in the same order.
class WeightedAlignment {
 public:
  WeightedAlignment(AlignmentKind kind, int ref_len, int cand_len,
                    std::vector<Edge> edges);

  AlignmentKind kind() const { return kind_; }
  int ref_len() const { return ref_len_; }
  int cand_len() const { return cand_len_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // W(A): sum of edge weights in (ref, cand) order.
  double weight() const { return total_weight(edges_); }
  bool contains(int ref, int cand) const;

  static double total_weight(std::span<const Edge> edges);

 private:
  AlignmentKind kind_;
  int ref_len_;
  int cand_len_;
  std::vector<Edge> edges_;
};

// Throws std::logic_error if the structural constraints of the alignment's
// kind are violated. For ROUGE1 the reference and candidate are needed to
// check that edges join equal normalized unigrams.
void check_alignment(const WeightedAlignment& a);
void check_rouge_alignment(const WeightedAlignment& a, const Summary& reference,
                           const Summary& candidate);

struct MetricScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static MetricScore from(double precision, double recall);
};

double harmonic_mean(double precision, double recall);

// Row-major m x n matrix of cosine similarities.
class SimilarityMatrix {
 public:
  SimilarityMatrix(int rows, int cols, std::vector<double> values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return values_[i * cols_ + j]; }

 private:
  int rows_;
  int cols_;
  std::vector<double> values_;
};

// Lowercase (ASCII) only; no stemming, no stopword removal.
std::string normalize_unigram(std::string_view text);

// Pairs min(c_R(s), c_S(s)) occurrences of every normalized unigram s,
// k-th occurrence in R with k-th occurrence in S. W(A) equals the ROUGE-1
// overlap count.
WeightedAlignment rouge1_alignment(const Summary& reference, const Summary& candidate);

// Micro-averaged over references: recall = sum M / sum m,
// precision = sum M / (|refs| * n).
MetricScore rouge1_score(std::span<const Summary> references, const Summary& candidate);

// Throws ValidationError if either summary lacks embeddings, the dimensions
// differ, or an embedding has zero norm. Entries are clamped to [-1, 1].
SimilarityMatrix bert_similarity(const Summary& reference, const Summary& candidate);

enum class BertDirection { Recall, Precision };

// Greedy argmax alignment: recall aligns every reference row to its most
// similar candidate column, precision every candidate column to its most
// similar reference row. Ties go to the lowest index. Edges whose
// similarity is <= 0 are dropped; their mass still counts in the
// denominator of the score.
WeightedAlignment bertscore_alignment(const SimilarityMatrix& sim, BertDirection direction);

struct BertScoreResult {
  MetricScore score;                 // per-direction maxima across references
  std::size_t chosen_reference = 0;  // highest per-reference F1, lowest index on ties
  std::vector<MetricScore> per_reference;
  std::vector<WeightedAlignment> recall_alignments;     // one per reference
  std::vector<WeightedAlignment> precision_alignments;  // one per reference

  const WeightedAlignment& chosen_recall() const { return recall_alignments[chosen_reference]; }
  const WeightedAlignment& chosen_precision() const {
    return precision_alignments[chosen_reference];
  }
};

BertScoreResult bertscore_score(std::span<const Summary> references,
                                const Summary& candidate);

// A ROUGE-1 alignment with the same weight as rouge1_alignment that
// maximizes the number of edges whose endpoints share an SCU id.
WeightedAlignment scu_max_rouge_alignment(const Summary& reference,
                                          const Summary& candidate);

// Number of edges whose endpoints share at least one SCU id.
bool shares_scu(const Token& a, const Token& b);
int count_scu_edges(const WeightedAlignment& a, const Summary& reference,
                    const Summary& candidate);

}  // namespace aligneval
