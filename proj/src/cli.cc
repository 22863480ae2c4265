#include "aligneval/cli.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aligneval/commands.h"
#include "aligneval/error.h"

namespace aligneval::cli {

namespace {

struct Args {
  std::string corpus;
  std::vector<std::string> metrics;
  std::vector<std::string> categories;
  std::string out;
  std::string format = "tsv";
  int bins = 20;
  std::string level = "summary";
  std::string mode = "averaged";
  std::optional<std::uint64_t> seed;
  bool dump_alignments = false;
  std::string sys_a;
  std::string sys_b;
  std::vector<std::string> scores;
  std::optional<std::string> anchor_a;
  std::optional<std::string> anchor_b;
  std::optional<std::string> target;
};

RunConfig make_config(const Args& args) {
  RunConfig config;
  for (const auto& m : args.metrics)
    config.metrics.push_back(m == "rouge1" ? MetricKind::Rouge1 : MetricKind::BertScore);
  for (const auto& c : args.categories) {
    auto id = parse_category(c);
    if (!id) throw ValidationError("unknown category '" + c + "'");
    config.categories.push_back(*id);
  }
  config.format = *parse_report_format(args.format);
  config.bins = args.bins;
  config.level = args.level == "system" ? Level::System : Level::Summary;
  config.mode = args.mode == "pooled" ? SummaryMode::Pooled : SummaryMode::Averaged;
  config.dump_alignments = args.dump_alignments;
  return config;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alignment-based analysis of summarization metrics", "align-eval"};
  app.require_subcommand(1);
  Args args;

  const std::vector<std::string> kMetrics = {"rouge1", "bertscore"};
  auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("--corpus", args.corpus, "Annotated corpus (JSONL)")
        ->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-m,--metric", args.metrics, "rouge1 or bertscore (repeatable)")
        ->check(CLI::IsMember(kMetrics));
    sub->add_option("--out", args.out, "Output directory")->required();
    sub->add_option("--format", args.format, "Table format")
        ->check(CLI::IsMember({"tsv", "json", "md"}));
    sub->add_option("--seed", args.seed, "Accepted for reproducibility; analyses are deterministic");
  };
  auto add_categories = [&](CLI::App* sub) {
    sub->add_option("--category", args.categories, "Category name (repeatable)");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", args.mode, "averaged or pooled")
        ->check(CLI::IsMember({"averaged", "pooled"}));
  };

  auto* score = app.add_subcommand("score", "Per-summary metric scores");
  add_corpus(score);
  add_common(score);
  add_categories(score);
  score->add_flag("--dump-alignments", args.dump_alignments, "Also write alignments.jsonl");

  auto* contributions = app.add_subcommand("contributions", "Category contributions");
  add_corpus(contributions);
  add_common(contributions);
  add_categories(contributions);
  add_mode(contributions);

  auto* scu = app.add_subcommand("scu-prop", "Share of alignment weight explained by SCUs");
  add_corpus(scu);
  add_common(scu);
  scu->add_option("--bins", args.bins, "Histogram bins")->check(CLI::Range(1, 1000000));

  auto* compare = app.add_subcommand("compare", "Category-level comparison of two systems");
  add_corpus(compare);
  add_common(compare);
  add_categories(compare);
  compare->add_option("--sys-a", args.sys_a, "Baseline system")->required();
  compare->add_option("--sys-b", args.sys_b, "Compared system")->required();

  auto* corr = app.add_subcommand("correlate", "Correlations between score matrices");
  corr->add_option("--scores", args.scores, "Score CSV (repeatable)")
      ->required();
  corr->add_option("--out", args.out, "Output directory")->required();
  corr->add_option("--format", args.format, "Table format")
      ->check(CLI::IsMember({"tsv", "json", "md"}));
  corr->add_option("--level", args.level, "summary or system (delta table)")
      ->check(CLI::IsMember({"summary", "system"}));
  add_mode(corr);
  corr->add_option("--anchor-a", args.anchor_a, "First anchor metric");
  corr->add_option("--anchor-b", args.anchor_b, "Second anchor metric");
  corr->add_option("--target", args.target, "Metric to correlate every other metric with");
  corr->add_option("--seed", args.seed, "Accepted for reproducibility; analyses are deterministic");

  auto* validate = app.add_subcommand("validate", "Validate a corpus file");
  add_corpus(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig config = make_config(args);
    OutputFiles files;
    if (*corr) {
      std::vector<ScoreMatrix> matrices;
      for (const auto& path : args.scores)
        for (auto& m : load_score_matrices(path)) matrices.push_back(std::move(m));
      files = cmd_correlate(matrices, config, {args.anchor_a, args.anchor_b, args.target});
    } else {
      Corpus corpus = load_corpus(args.corpus);
      if (*validate) {
        out << args.corpus << ": ok (" << describe_corpus(corpus) << ")\n";
        return 0;
      }
      if (*score) files = cmd_score(corpus, config);
      else if (*contributions) files = cmd_contributions(corpus, config);
      else if (*scu) files = cmd_scu(corpus, config);
      else if (*compare) files = cmd_compare(corpus, config, args.sys_a, args.sys_b);
    }
    commit_outputs(args.out, files);
    for (const auto& [name, contents] : files) out << args.out << "/" << name << "\n";
    return 0;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace aligneval::cli
