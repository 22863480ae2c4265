#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "test_support.h"

using testing_support::fixture;
using testing_support::read_file;
using testing_support::run_cli;
using testing_support::TempDir;

namespace fs = std::filesystem;

TEST(Cli, ScoreWritesMatrices) {
  TempDir dir;
  auto r = run_cli({"score", "--corpus", fixture("corpus.jsonl"), "--out", dir.str(),
                    "--category", "ner", "--dump-alignments"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"rouge1_precision.csv", "rouge1_recall.csv", "rouge1_f1.csv",
                        "bertscore_f1.csv", "rouge1_ner_recall.csv", "alignments.jsonl"})
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  EXPECT_EQ(read_file(dir.path() / "rouge1_recall.csv").rfind("metric,system_id,instance_id,score\n", 0), 0u);
}

TEST(Cli, MetricDefaultsWithoutEmbeddings) {
  TempDir dir;
  auto r = run_cli({"score", "--corpus", fixture("entity_scene.jsonl"), "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "rouge1_f1.csv"));
  EXPECT_FALSE(fs::exists(dir.path() / "bertscore_f1.csv"));
}

TEST(Cli, BertscoreWithoutEmbeddingsIsValidationError) {
  TempDir dir;
  auto r = run_cli({"score", "--corpus", fixture("entity_scene.jsonl"), "-m", "bertscore", "--out",
                    dir.str("out")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("embeddings"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir.path() / "out"));
}

TEST(Cli, InvalidCorpusExitsOneWithoutOutputs) {
  TempDir dir;
  std::string bad = dir.str("bad.jsonl");
  std::ofstream(bad) << "{\"instance_id\": 3}\n";
  auto r = run_cli({"contributions", "--corpus", bad, "--out", dir.str("out")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir.path() / "out"));
}

TEST(Cli, MissingInputIsIoError) {
  TempDir dir;
  EXPECT_EQ(run_cli({"scu-prop", "--corpus", dir.str("none.jsonl"), "--out", dir.str()}).code, 2);
  EXPECT_EQ(run_cli({"correlate", "--scores", dir.str("none.csv"), "--target", "x", "--out",
                     dir.str()}).code,
            2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"score", "--corpus", fixture("entity_scene.jsonl")}).code, 1);
  EXPECT_EQ(run_cli({"score", "--corpus", fixture("entity_scene.jsonl"), "--out", "x", "-m", "bleu"}).code, 1);
  TempDir dir;
  EXPECT_EQ(run_cli({"score", "--corpus", fixture("entity_scene.jsonl"), "--out", dir.str(), "--category",
                     "JJ"}).code,
            1);
  EXPECT_EQ(run_cli({"scu-prop", "--corpus", fixture("scu_scene.jsonl"), "--out", dir.str(), "--bins",
                     "0"}).code,
            1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, ScuWithoutAnnotationsFails) {
  TempDir dir;
  auto r = run_cli({"scu-prop", "--corpus", fixture("entity_scene.jsonl"), "--out", dir.str()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("SCU"), std::string::npos);
}

TEST(Cli, CompareIdenticalSystemsHasZeroDeltas) {
  TempDir dir;
  auto r = run_cli({"compare", "--corpus", fixture("corpus.jsonl"), "-m", "rouge1", "--sys-a",
                    "sysA", "--sys-b", "sysA", "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir.path() / "comparison_rouge1.tsv");
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    auto delta_start = line.find('\t', line.find('\t', line.find('\t') + 1) + 1) + 1;
    std::string delta = line.substr(delta_start, line.find('\t', delta_start) - delta_start);
    EXPECT_TRUE(delta == "0.000000" || delta == "NA") << line;
  }
  EXPECT_EQ(rows, 16);
  EXPECT_EQ(run_cli({"compare", "--corpus", fixture("corpus.jsonl"), "--sys-a", "sysA", "--sys-b",
                     "nobody", "--out", dir.str()}).code,
            1);
}

TEST(Cli, ContributionsFormatsAndPooledMode) {
  TempDir dir;
  auto r = run_cli({"contributions", "--corpus", fixture("entity_scene.jsonl"), "--format", "json",
                    "--mode", "pooled", "--category", "NER", "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string json = read_file(dir.path() / "contributions.json");
  EXPECT_NE(json.find("\"mean_contribution_pct\": 25.0"), std::string::npos) << json;
  EXPECT_TRUE(fs::exists(dir.path() / "content_types.json"));
}

TEST(Cli, CorrelateNeedsSomethingToDo) {
  TempDir dir;
  EXPECT_EQ(run_cli({"correlate", "--scores", fixture("pyramid.csv"), "--out", dir.str()}).code, 1);
  EXPECT_EQ(run_cli({"correlate", "--scores", fixture("pyramid.csv"), "--scores",
                     fixture("pyramid.csv"), "--target", "pyramid", "--out", dir.str()}).code,
            1);
  auto r = run_cli({"correlate", "--scores", fixture("pyramid.csv"), "--scores",
                    fixture("responsiveness.csv"), "--target", "responsiveness", "--format", "md",
                    "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "correlations.md"));
}

TEST(Cli, ValidateReportsSummary) {
  auto r = run_cli({"validate", "--corpus", fixture("corpus.jsonl")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4 instances"), std::string::npos) << r.out;
}
