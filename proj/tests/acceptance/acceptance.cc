// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances and sample sizes are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "aligneval/category.h"
#include "aligneval/scu.h"
#include "aligneval/stats.h"
#include "test_support.h"

using namespace aligneval;
namespace fs = std::filesystem;
namespace ts = testing_support;

namespace {

constexpr int kRougePairs = 1000;
constexpr int kRougeMaxLen = 12;
constexpr int kRougeVocab = 8;
constexpr double kRougeSeconds = 5.0;

constexpr int kScuPairs = 200;
constexpr int kScuMaxLen = 8;
constexpr double kScuSeconds = 60.0;

constexpr int kBertMatrices = 500;
constexpr double kBertTolerance = 1e-12;

constexpr int kCorrelationVectors = 100;
constexpr double kCorrelationTolerance = 1e-12;
constexpr double kHandPearson = 0.8660254037844386;
constexpr double kHandPearsonTolerance = 1e-6;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome rouge_oracle() {
  Outcome o;
  std::mt19937_64 rng(101);
  ts::RandomSummaryOptions opts;
  opts.max_len = kRougeMaxLen;
  opts.vocab = kRougeVocab;
  opts.random_case = true;
  std::vector<std::pair<Summary, Summary>> pairs;
  for (int i = 0; i < kRougePairs; ++i) {
    Summary r = ts::random_summary(rng, opts);
    pairs.emplace_back(r, ts::random_summary(rng, opts));
  }
  auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (const auto& [r, s] : pairs)
    if (rouge1_alignment(r, s).weight() != ts::oracle_overlap(r, s)) ++mismatches;
  double secs = seconds_since(t0);
  if (mismatches) o.fail(fmt::format("{} of {} pairs disagree with the counting oracle", mismatches, kRougePairs));
  if (secs >= kRougeSeconds) o.fail(fmt::format("took {:.3f} s", secs));
  if (o.pass) o.detail = fmt::format("{} pairs exact, {:.3f} s", kRougePairs, secs);
  return o;
}

Outcome scu_max_optimality() {
  Outcome o;
  std::mt19937_64 rng(202);
  ts::RandomSummaryOptions opts;
  opts.max_len = kScuMaxLen;
  opts.vocab = 3;
  opts.scu_count = 3;
  auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (int i = 0; i < kScuPairs; ++i) {
    Summary r = ts::random_summary(rng, opts);
    Summary s = ts::random_summary(rng, opts);
    auto a = scu_max_rouge_alignment(r, s);
    check_rouge_alignment(a, r, s);
    if (a.weight() != ts::oracle_overlap(r, s) ||
        count_scu_edges(a, r, s) != ts::oracle_scu_max(r, s))
      ++mismatches;
  }
  double secs = seconds_since(t0);
  if (mismatches) o.fail(fmt::format("{} of {} pairs below the exhaustive maximum", mismatches, kScuPairs));
  if (secs >= kScuSeconds) o.fail(fmt::format("took {:.3f} s", secs));
  if (o.pass) o.detail = fmt::format("{} pairs optimal, {:.3f} s", kScuPairs, secs);
  return o;
}

Outcome bertscore_recall() {
  Outcome o;
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> len(1, 16);
  int checked = 0;
  for (int t = 0; t < kBertMatrices; ++t) {
    // Half strictly positive matrices (every row keeps its edge), half
    // mixed-sign (rows whose maximum is <= 0 contribute no edge and 0 mass).
    const bool positive = t % 2 == 0;
    std::uniform_real_distribution<double> u(positive ? 1e-6 : -1.0, 1.0);
    int m = len(rng), n = len(rng);
    std::vector<double> v(static_cast<std::size_t>(m) * n);
    for (double& x : v) x = u(rng);
    SimilarityMatrix b(m, n, v);
    auto rec = bertscore_alignment(b, BertDirection::Recall);
    auto prec = bertscore_alignment(b, BertDirection::Precision);

    double row_max_sum = 0.0;
    int positive_rows = 0;
    for (int i = 0; i < m; ++i) {
      double best = v[static_cast<std::size_t>(i) * n];
      for (int j = 1; j < n; ++j) best = std::max(best, b(i, j));
      if (best > 0) ++positive_rows;
      row_max_sum += positive ? best : std::max(best, 0.0);
    }
    if (std::abs(rec.weight() / m - row_max_sum / m) > kBertTolerance)
      o.fail(fmt::format("matrix {}: W/m = {:.17g}, mean row max = {:.17g}", t, rec.weight() / m,
                         row_max_sum / m));
    if (positive && static_cast<int>(rec.size()) != m)
      o.fail(fmt::format("matrix {}: {} recall edges for {} rows", t, rec.size(), m));
    if (static_cast<int>(rec.size()) != positive_rows)
      o.fail(fmt::format("matrix {}: recall edge count {} != positive rows {}", t, rec.size(), positive_rows));
    std::vector<int> per_row(m, 0), per_col(n, 0);
    for (const auto& e : rec.edges()) ++per_row[e.ref];
    for (const auto& e : prec.edges()) ++per_col[e.cand];
    for (int c : per_row)
      if (c > 1) o.fail(fmt::format("matrix {}: a reference row has {} recall edges", t, c));
    for (int c : per_col)
      if (c > 1) o.fail(fmt::format("matrix {}: a candidate column has {} precision edges", t, c));
    if (positive && static_cast<int>(prec.size()) != n)
      o.fail(fmt::format("matrix {}: {} precision edges for {} columns", t, prec.size(), n));
    ++checked;
  }
  if (o.pass) o.detail = fmt::format("{} matrices within {:g}", checked, kBertTolerance);
  return o;
}

Outcome worked_examples() {
  Outcome o;
  {
    Corpus c = ts::load_fixture("scu_scene.jsonl");
    auto a = prop_scu(c, MetricKind::Rouge1);
    if (a.records.size() != 1 || a.records[0].prop != 0.4)
      o.fail("SCU scene: proportion is not exactly 0.4");
  }
  {
    Corpus c = ts::load_fixture("entity_scene.jsonl");
    const Summary& r = c.instances[0].references[0];
    const Summary& s = c.instances[0].candidates.begin()->second;
    auto base = rouge1_alignment(r, s);
    double ner = 100.0 * contribution(base, CategoryId::NER, r, s);
    double stop = 100.0 * contribution(base, CategoryId::Stopwords, r, s);
    double np = 100.0 * contribution(base, CategoryId::NpChunks, r, s);
    if (ner != 25.0 || stop != 50.0 || np != 75.0)
      o.fail(fmt::format("entity scene: contributions {}/{}/{} instead of 25/50/75", ner, stop, np));
  }
  {
    Corpus c = ts::load_fixture("tuple_scene.jsonl");
    const Summary& r = c.instances[0].references[0];
    const Summary& s = c.instances[0].candidates.begin()->second;
    auto base = rouge1_alignment(r, s);
    double kept = filter(base, CategoryId::VbNsubj, r, s).weight();
    if (base.weight() != 4.0 || kept != 2.0)
      o.fail(fmt::format("tuple scene: kept {} of {} instead of 2 of 4", kept, base.weight()));
  }
  if (o.pass) o.detail = "SCU proportion 0.4; contributions 25/50/75; tuple filter keeps 2 of 4";
  return o;
}

Outcome universal_reduction() {
  Outcome o;
  int checked = 0;
  for (const char* name : {"scu_scene.jsonl", "entity_scene.jsonl", "tuple_scene.jsonl",
                           "identity.jsonl", "disjoint.jsonl", "corpus.jsonl"}) {
    Corpus c = ts::load_fixture(name);
    for (const auto& inst : c.instances)
      for (const auto& [sys, cand] : inst.candidates) {
        auto overall = rouge1_score(inst.references, cand).recall;
        auto uni = category_scores(MetricKind::Rouge1, inst.references, cand, CategoryId::Universal);
        if (!uni.recall || *uni.recall != overall)
          o.fail(fmt::format("{} {} {}: universal recall differs", name, inst.instance_id, sys));
        for (const auto& ref : inst.references) {
          auto per = category_pr(rouge1_alignment(ref, cand), CategoryId::Universal, ref, cand);
          if (!per.recall || *per.recall != rouge1_score(std::vector<Summary>{ref}, cand).recall)
            o.fail(fmt::format("{} {} {}: per-reference universal recall differs", name,
                               inst.instance_id, sys));
        }
        ++checked;
      }
  }
  if (o.pass) o.detail = fmt::format("{} summaries exact", checked);
  return o;
}

Outcome correlation_properties() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> len(3, 40);
  for (int t = 0; t < kCorrelationVectors; ++t) {
    int n = len(rng);
    std::vector<double> xs(n), ys(n), affine(n), mono(n);
    double scale = std::exp(g(rng)) * (t % 2 ? 1.0 : -1.0);
    double shift = 10.0 * g(rng);
    for (int i = 0; i < n; ++i) {
      xs[i] = g(rng);
      ys[i] = 0.5 * xs[i] + g(rng);
      affine[i] = scale * xs[i] + shift;
      mono[i] = std::exp(2.0 * xs[i]) + xs[i] * xs[i] * xs[i];  // strictly increasing
    }
    if (std::abs(pearson(xs, xs) - 1.0) > kCorrelationTolerance) o.fail("self-correlation is not 1");
    double expected = scale > 0 ? pearson(xs, ys) : -pearson(xs, ys);
    if (std::abs(pearson(affine, ys) - expected) > kCorrelationTolerance)
      o.fail(fmt::format("vector {}: Pearson changed under an affine map", t));
    if (std::abs(spearman(mono, ys) - spearman(xs, ys)) > kCorrelationTolerance)
      o.fail(fmt::format("vector {}: Spearman changed under a monotone map", t));
  }
  double hand = pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 2, 4});
  if (std::abs(hand - kHandPearson) > kHandPearsonTolerance)
    o.fail(fmt::format("3-point Pearson {:.9f}", hand));
  if (o.pass)
    o.detail = fmt::format("{} vectors within {:g}; 3-point Pearson {:.6f}", kCorrelationVectors,
                           kCorrelationTolerance, hand);
  return o;
}

struct Invocation {
  std::string subdir;
  std::vector<std::string> args;
};

// Every subcommand on the bundled corpus; paths relative to `out`.
std::vector<Invocation> invocations(const std::string& out) {
  auto fx = [](const char* name) { return ts::fixture(name); };
  return {
      {"score", {"score", "--corpus", fx("corpus.jsonl"), "--category", "NP-CHUNKS", "--out", out + "/score"}},
      {"contrib", {"contributions", "--corpus", fx("corpus.jsonl"), "-m", "rouge1", "-m", "bertscore", "--out", out + "/contrib"}},
      {"scu", {"scu-prop", "--corpus", fx("corpus.jsonl"), "-m", "rouge1", "-m", "bertscore", "--out", out + "/scu"}},
      {"compare", {"compare", "--corpus", fx("corpus.jsonl"), "-m", "rouge1", "-m", "bertscore", "--sys-a", "sysB", "--sys-b", "sysA", "--out", out + "/compare"}},
      {"correlate", {"correlate", "--out", out + "/correlate",
                     "--scores", out + "/score/rouge1_recall.csv",
                     "--scores", out + "/score/rouge1_np-chunks_recall.csv",
                     "--scores", out + "/score/bertscore_f1.csv",
                     "--scores", fx("pyramid.csv"), "--scores", fx("responsiveness.csv"),
                     "--anchor-a", "rouge1_recall", "--anchor-b", "pyramid", "--target", "responsiveness"}},
  };
}

std::string run_all(const std::string& out) {
  for (const auto& inv : invocations(out)) {
    int code = ts::run_binary(inv.args);
    if (code != 0) return fmt::format("{} exited with {}", inv.args[0], code);
  }
  return "";
}

std::vector<fs::path> files_under(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism() {
  Outcome o;
  ts::TempDir a, b;
  for (const auto* dir : {&a, &b}) {
    std::string err = run_all(dir->str());
    if (!err.empty()) {
      o.fail(err);
      return o;
    }
    // Extra outputs not covered by the end-to-end comparison.
    for (const auto& extra : std::vector<std::vector<std::string>>{
             {"score", "--corpus", ts::fixture("corpus.jsonl"), "--dump-alignments", "--category", "VB+NSUBJ", "--out", dir->str("dump")},
             {"contributions", "--corpus", ts::fixture("corpus.jsonl"), "--mode", "pooled", "--format", "json", "--out", dir->str("pooled")},
             {"scu-prop", "--corpus", ts::fixture("corpus.jsonl"), "--bins", "7", "--format", "md", "--out", dir->str("scu7")}}) {
      if (ts::run_binary(extra) != 0) o.fail(extra[0] + " failed");
    }
  }
  auto fa = files_under(a.path());
  auto fb = files_under(b.path());
  if (fa != fb) o.fail("runs produced different file sets");
  int differing = 0;
  for (const auto& f : fa)
    if (ts::read_file(a.path() / f) != ts::read_file(b.path() / f)) {
      ++differing;
      o.fail("differs: " + f.string());
    }
  if (o.pass) o.detail = fmt::format("{} files byte-identical across two runs", fa.size());
  return o;
}

Outcome end_to_end() {
  Outcome o;
  ts::TempDir out;
  std::string err = run_all(out.str());
  if (!err.empty()) {
    o.fail(err);
    return o;
  }
  fs::path expected = ts::fixture("expected");
  auto want = files_under(expected);
  int matched = 0;
  for (const auto& f : want) {
    if (!fs::exists(out.path() / f)) {
      o.fail("missing output " + f.string());
      continue;
    }
    if (ts::read_file(out.path() / f) != ts::read_file(expected / f))
      o.fail("mismatch in " + f.string());
    else
      ++matched;
  }
  if (o.pass) o.detail = fmt::format("{} expected files matched exactly", matched);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"rouge-oracle-equivalence", rouge_oracle},
      {"scu-max-optimality", scu_max_optimality},
      {"bertscore-recall", bertscore_recall},
      {"worked-example-fixtures", worked_examples},
      {"universal-category-reduction", universal_reduction},
      {"correlation-properties", correlation_properties},
      {"determinism", determinism},
      {"end-to-end-fixture", end_to_end},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failed, criteria.size())
            << std::endl;
  return failed ? 1 : 0;
}
