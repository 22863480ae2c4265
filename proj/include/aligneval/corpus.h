#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace aligneval {

// Coarse part-of-speech classes. Fine-grained tags are collapsed by the
// annotator before the corpus is written.
enum class Pos { NN, NNP, VB, ADJ, ADV, NUM, OTHER };

enum class Ner { PER, LOC, ORG, NONE };

std::string_view to_string(Pos pos);
std::string_view to_string(Ner ner);
std::optional<Pos> parse_pos(std::string_view s);
std::optional<Ner> parse_ner(std::string_view s);

struct Token {
  int index = 0;
  std::string text;
  Pos pos = Pos::OTHER;
  Ner ner = Ner::NONE;
  std::optional<int> np_chunk;
  std::string dep_label;
  int dep_head = -1;
  bool stopword = false;
  std::vector<int> scus;  // sorted, unique
  std::vector<double> embedding;  // empty when the corpus has none

  bool has_embedding() const { return !embedding.empty(); }
};

struct Summary {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
  bool has_embeddings() const {
    return !tokens.empty() && tokens.front().has_embedding();
  }
};

struct Instance {
  std::string instance_id;
  std::vector<Summary> references;
  std::map<std::string, Summary> candidates;  // keyed by system id
};

// Loaded corpora are immutable after validation.
struct Corpus {
  std::vector<Instance> instances;
  // Raw JSON text of the optional leading {"metadata": ...} line written by
  // the annotator. Preserved verbatim so write_corpus round-trips it.
  std::optional<std::string> metadata;

  bool has_embeddings() const;
  bool has_scus() const;
  // 0 when no embeddings are present.
  std::size_t embedding_dim() const;
  const Instance* find(std::string_view instance_id) const;
};

// Parses and validates the JSONL corpus. Throws ValidationError naming the
// line, instance, summary, and token for every schema or invariant
// violation; IoError when the file cannot be read. Nothing is returned on
// failure.
Corpus load_corpus(const std::string& path);
Corpus parse_corpus(std::istream& in);

// Canonical serialization: one instance per line, object keys sorted, no
// insignificant whitespace, reals in shortest round-trip form.
void write_corpus(const Corpus& corpus, std::ostream& out);

// Checks every Summary/Token invariant. Used by the loader; exposed for
// code that builds summaries in memory.
void validate_summary(const Summary& summary, const std::string& where);

}  // namespace aligneval
