#include "aligneval/alignment.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "aligneval/error.h"
#include "aligneval/matching.h"

namespace aligneval {

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::Rouge1 ? "rouge1" : "bertscore";
}

WeightedAlignment::WeightedAlignment(AlignmentKind kind, int ref_len, int cand_len,
                                     std::vector<Edge> edges)
    : kind_(kind), ref_len_(ref_len), cand_len_(cand_len), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.ref != b.ref ? a.ref < b.ref : a.cand < b.cand;
  });
  check_alignment(*this);
}

bool WeightedAlignment::contains(int ref, int cand) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), ref,
                             [](const Edge& e, int r) { return e.ref < r; });
  for (; it != edges_.end() && it->ref == ref; ++it)
    if (it->cand == cand) return true;
  return false;
}

double WeightedAlignment::total_weight(std::span<const Edge> edges) {
  double w = 0.0;
  for (const auto& e : edges) w += e.weight;
  return w;
}

void check_alignment(const WeightedAlignment& a) {
  std::vector<int> ref_use(a.ref_len(), 0);
  std::vector<int> cand_use(a.cand_len(), 0);
  for (const auto& e : a.edges()) {
    if (e.ref < 0 || e.ref >= a.ref_len() || e.cand < 0 || e.cand >= a.cand_len())
      throw std::logic_error("alignment edge index out of range");
    if (!(e.weight > 0.0 && e.weight <= 1.0))
      throw std::logic_error("alignment edge weight outside (0, 1]");
    ++ref_use[e.ref];
    ++cand_use[e.cand];
  }
  auto at_most_once = [](const std::vector<int>& use) {
    return std::all_of(use.begin(), use.end(), [](int c) { return c <= 1; });
  };
  switch (a.kind()) {
    case AlignmentKind::Rouge1:
      if (!at_most_once(ref_use) || !at_most_once(cand_use))
        throw std::logic_error("ROUGE alignment aligns a token more than once");
      for (const auto& e : a.edges())
        if (e.weight != 1.0) throw std::logic_error("ROUGE alignment weight must be 1");
      break;
    case AlignmentKind::BertRecall:
      if (!at_most_once(ref_use))
        throw std::logic_error("recall alignment has two edges for one reference token");
      break;
    case AlignmentKind::BertPrecision:
      if (!at_most_once(cand_use))
        throw std::logic_error("precision alignment has two edges for one candidate token");
      break;
  }
}

void check_rouge_alignment(const WeightedAlignment& a, const Summary& reference,
                           const Summary& candidate) {
  check_alignment(a);
  if (a.ref_len() != static_cast<int>(reference.size()) ||
      a.cand_len() != static_cast<int>(candidate.size()))
    throw std::logic_error("alignment built over different summaries");
  for (const auto& e : a.edges())
    if (normalize_unigram(reference[e.ref].text) != normalize_unigram(candidate[e.cand].text))
      throw std::logic_error("ROUGE edge joins different unigrams");
}

double harmonic_mean(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

MetricScore MetricScore::from(double precision, double recall) {
  return {precision, recall, harmonic_mean(precision, recall)};
}

SimilarityMatrix::SimilarityMatrix(int rows, int cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows < 1 || cols < 1 || values_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("similarity matrix shape mismatch");
}

std::string normalize_unigram(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

namespace {

// Positions of each normalized unigram, in order of appearance.
std::map<std::string, std::vector<int>> occurrences(const Summary& s) {
  std::map<std::string, std::vector<int>> out;
  for (const auto& t : s.tokens) out[normalize_unigram(t.text)].push_back(t.index);
  return out;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void require_embeddings(const Summary& s, const char* which) {
  for (const auto& t : s.tokens) {
    if (!t.has_embedding())
      throw ValidationError(std::string("BERTScore requires embeddings: ") + which +
                            " token " + std::to_string(t.index) + " has none");
  }
}

}  // namespace

WeightedAlignment rouge1_alignment(const Summary& reference, const Summary& candidate) {
  auto cand_occ = occurrences(candidate);
  std::vector<Edge> edges;
  for (const auto& [unigram, ref_pos] : occurrences(reference)) {
    auto it = cand_occ.find(unigram);
    if (it == cand_occ.end()) continue;
    std::size_t k = std::min(ref_pos.size(), it->second.size());
    for (std::size_t i = 0; i < k; ++i) edges.push_back({ref_pos[i], it->second[i], 1.0});
  }
  return WeightedAlignment(AlignmentKind::Rouge1, static_cast<int>(reference.size()),
                           static_cast<int>(candidate.size()), std::move(edges));
}

MetricScore rouge1_score(std::span<const Summary> references, const Summary& candidate) {
  if (references.empty()) throw std::invalid_argument("rouge1_score needs a reference");
  double matched = 0.0;
  double ref_tokens = 0.0;
  for (const auto& ref : references) {
    matched += rouge1_alignment(ref, candidate).weight();
    ref_tokens += static_cast<double>(ref.size());
  }
  double recall = matched / ref_tokens;
  double precision =
      matched / (static_cast<double>(references.size()) * static_cast<double>(candidate.size()));
  return MetricScore::from(precision, recall);
}

SimilarityMatrix bert_similarity(const Summary& reference, const Summary& candidate) {
  require_embeddings(reference, "reference");
  require_embeddings(candidate, "candidate");
  const int m = static_cast<int>(reference.size());
  const int n = static_cast<int>(candidate.size());
  std::vector<double> ref_norm(m), cand_norm(n);
  const std::size_t dim = reference[0].embedding.size();
  auto check = [&](const Token& t, const char* which) {
    if (t.embedding.size() != dim)
      throw ValidationError(std::string("embedding dimension mismatch at ") + which +
                            " token " + std::to_string(t.index));
    double nv = norm(t.embedding);
    if (nv == 0.0)
      throw ValidationError(std::string("zero-norm embedding at ") + which + " token " +
                            std::to_string(t.index) + ": cosine similarity undefined");
    return nv;
  };
  for (int i = 0; i < m; ++i) ref_norm[i] = check(reference[i], "reference");
  for (int j = 0; j < n; ++j) cand_norm[j] = check(candidate[j], "candidate");

  std::vector<double> values(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    const auto& a = reference[i].embedding;
    for (int j = 0; j < n; ++j) {
      const auto& b = candidate[j].embedding;
      double dot = 0.0;
      for (std::size_t k = 0; k < dim; ++k) dot += a[k] * b[k];
      values[static_cast<std::size_t>(i) * n + j] =
          std::clamp(dot / (ref_norm[i] * cand_norm[j]), -1.0, 1.0);
    }
  }
  return SimilarityMatrix(m, n, std::move(values));
}

WeightedAlignment bertscore_alignment(const SimilarityMatrix& sim, BertDirection direction) {
  std::vector<Edge> edges;
  if (direction == BertDirection::Recall) {
    for (int i = 0; i < sim.rows(); ++i) {
      int best = 0;
      for (int j = 1; j < sim.cols(); ++j)
        if (sim(i, j) > sim(i, best)) best = j;
      if (sim(i, best) > 0.0) edges.push_back({i, best, sim(i, best)});
    }
    return WeightedAlignment(AlignmentKind::BertRecall, sim.rows(), sim.cols(), std::move(edges));
  }
  for (int j = 0; j < sim.cols(); ++j) {
    int best = 0;
    for (int i = 1; i < sim.rows(); ++i)
      if (sim(i, j) > sim(best, j)) best = i;
    if (sim(best, j) > 0.0) edges.push_back({best, j, sim(best, j)});
  }
  return WeightedAlignment(AlignmentKind::BertPrecision, sim.rows(), sim.cols(), std::move(edges));
}

BertScoreResult bertscore_score(std::span<const Summary> references, const Summary& candidate) {
  if (references.empty()) throw std::invalid_argument("bertscore_score needs a reference");
  BertScoreResult out;
  double best_precision = 0.0;
  double best_recall = 0.0;
  double best_f1 = -1.0;
  for (std::size_t r = 0; r < references.size(); ++r) {
    auto sim = bert_similarity(references[r], candidate);
    out.recall_alignments.push_back(bertscore_alignment(sim, BertDirection::Recall));
    out.precision_alignments.push_back(bertscore_alignment(sim, BertDirection::Precision));
    double recall = out.recall_alignments.back().weight() / sim.rows();
    double precision = out.precision_alignments.back().weight() / sim.cols();
    auto score = MetricScore::from(precision, recall);
    out.per_reference.push_back(score);
    best_precision = std::max(best_precision, precision);
    best_recall = std::max(best_recall, recall);
    if (score.f1 > best_f1) {
      best_f1 = score.f1;
      out.chosen_reference = r;
    }
  }
  out.score = MetricScore::from(best_precision, best_recall);
  return out;
}

bool shares_scu(const Token& a, const Token& b) {
  // Both lists are sorted.
  auto i = a.scus.begin();
  auto j = b.scus.begin();
  while (i != a.scus.end() && j != b.scus.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

int count_scu_edges(const WeightedAlignment& a, const Summary& reference,
                    const Summary& candidate) {
  int count = 0;
  for (const auto& e : a.edges())
    if (shares_scu(reference[e.ref], candidate[e.cand])) ++count;
  return count;
}

WeightedAlignment scu_max_rouge_alignment(const Summary& reference, const Summary& candidate) {
  // ROUGE edges only join equal unigrams, so the objective decomposes into
  // one independent matching problem per unigram.
  auto cand_occ = occurrences(candidate);
  std::vector<Edge> edges;
  for (const auto& [unigram, ref_pos] : occurrences(reference)) {
    auto it = cand_occ.find(unigram);
    if (it == cand_occ.end()) continue;
    const auto& cand_pos = it->second;
    const int left = static_cast<int>(ref_pos.size());
    const int right = static_cast<int>(cand_pos.size());

    std::vector<std::vector<int>> adj(left);
    for (int u = 0; u < left; ++u)
      for (int v = 0; v < right; ++v)
        if (shares_scu(reference[ref_pos[u]], candidate[cand_pos[v]])) adj[u].push_back(v);
    auto match = maximum_bipartite_matching(left, right, adj);

    std::vector<bool> cand_used(right, false);
    std::vector<int> free_ref;
    int pairs = 0;
    for (int u = 0; u < left; ++u) {
      if (match[u] >= 0) {
        edges.push_back({ref_pos[u], cand_pos[match[u]], 1.0});
        cand_used[match[u]] = true;
        ++pairs;
      } else {
        free_ref.push_back(u);
      }
    }
    // Fill up to min(c_R, c_S) pairs left to right with the leftovers.
    const int target = std::min(left, right);
    auto next_free = free_ref.begin();
    for (int v = 0; v < right && pairs < target; ++v) {
      if (cand_used[v]) continue;
      edges.push_back({ref_pos[*next_free++], cand_pos[v], 1.0});
      ++pairs;
    }
  }
  return WeightedAlignment(AlignmentKind::Rouge1, static_cast<int>(reference.size()),
                           static_cast<int>(candidate.size()), std::move(edges));
}

}  // namespace aligneval
