#include "aligneval/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aligneval/error.h"

namespace aligneval {

using nlohmann::json;

namespace {

constexpr std::string_view kPosNames[] = {"NN",  "NNP", "VB",   "ADJ",
                                          "ADV", "NUM", "OTHER"};
constexpr std::string_view kNerNames[] = {"PER", "LOC", "ORG", "NONE"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

long long require_int(const json& v, const char* key, const std::string& where) {
  if (!v.is_number_integer())
    fail(where, std::string("field '") + key + "' must be an integer");
  if (v.is_number_unsigned()) {
    auto u = v.get<unsigned long long>();
    if (u > static_cast<unsigned long long>(INT32_MAX))
      fail(where, std::string("field '") + key + "' out of range");
    return static_cast<long long>(u);
  }
  auto x = v.get<long long>();
  if (x < INT32_MIN || x > INT32_MAX)
    fail(where, std::string("field '") + key + "' out of range");
  return x;
}

Token parse_token(const json& j, int index, const std::string& where) {
  if (!j.is_object()) fail(where, "token must be an object");
  Token t;
  t.index = index;

  const auto& text = require(j, "text", where);
  if (!text.is_string()) fail(where, "field 'text' must be a string");
  t.text = text.get<std::string>();

  const auto& pos = require(j, "pos", where);
  auto p = pos.is_string() ? parse_pos(pos.get<std::string>()) : std::nullopt;
  if (!p) fail(where, "field 'pos' must be one of NN, NNP, VB, ADJ, ADV, NUM, OTHER");
  t.pos = *p;

  const auto& ner = require(j, "ner", where);
  auto n = ner.is_string() ? parse_ner(ner.get<std::string>()) : std::nullopt;
  if (!n) fail(where, "field 'ner' must be one of PER, LOC, ORG, NONE");
  t.ner = *n;

  const auto& chunk = require(j, "np_chunk", where);
  if (!chunk.is_null()) {
    auto c = require_int(chunk, "np_chunk", where);
    if (c < 0) fail(where, "field 'np_chunk' must be non-negative or null");
    t.np_chunk = static_cast<int>(c);
  }

  const auto& label = require(j, "dep_label", where);
  if (!label.is_string()) fail(where, "field 'dep_label' must be a string");
  t.dep_label = label.get<std::string>();

  t.dep_head = static_cast<int>(require_int(require(j, "dep_head", where), "dep_head", where));

  const auto& stop = require(j, "stopword", where);
  if (!stop.is_boolean()) fail(where, "field 'stopword' must be a boolean");
  t.stopword = stop.get<bool>();

  const auto& scus = require(j, "scus", where);
  if (!scus.is_array()) fail(where, "field 'scus' must be an array");
  for (const auto& s : scus) {
    auto id = require_int(s, "scus", where);
    if (id < 0) fail(where, "SCU ids must be non-negative");
    t.scus.push_back(static_cast<int>(id));
  }
  std::sort(t.scus.begin(), t.scus.end());
  t.scus.erase(std::unique(t.scus.begin(), t.scus.end()), t.scus.end());

  if (auto it = j.find("embedding"); it != j.end()) {
    if (!it->is_array() || it->empty())
      fail(where, "field 'embedding' must be a non-empty array of reals");
    t.embedding.reserve(it->size());
    for (const auto& x : *it) {
      if (!x.is_number()) fail(where, "embedding entries must be numbers");
      double v = x.get<double>();
      if (!std::isfinite(v)) fail(where, "embedding entries must be finite");
      t.embedding.push_back(v);
    }
  }
  return t;
}

Summary parse_summary(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "summary must be an object");
  const auto& toks = require(j, "tokens", where);
  if (!toks.is_array()) fail(where, "field 'tokens' must be an array");
  Summary s;
  s.tokens.reserve(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i) {
    s.tokens.push_back(parse_token(toks[i], static_cast<int>(i),
                                   where + ": token " + std::to_string(i)));
  }
  validate_summary(s, where);
  return s;
}

// Rejects duplicate object keys, which nlohmann would otherwise collapse.
json parse_line(const std::string& line, const std::string& where) {
  std::vector<std::set<std::string>> keys;
  std::optional<std::string> duplicate;
  json::parser_callback_t cb = [&](int, json::parse_event_t ev, json& parsed) {
    switch (ev) {
      case json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case json::parse_event_t::key:
        if (!keys.back().insert(parsed.get<std::string>()).second && !duplicate)
          duplicate = parsed.get<std::string>();
        break;
      case json::parse_event_t::object_end:
        keys.pop_back();
        break;
      default:
        break;
    }
    return true;
  };
  json j;
  try {
    j = json::parse(line, cb);
  } catch (const json::parse_error& e) {
    fail(where, std::string("malformed JSON: ") + e.what());
  }
  if (duplicate) fail(where, "duplicate key '" + *duplicate + "'");
  return j;
}

void check_embeddings(const Summary& s, std::optional<std::size_t>& dim,
                      const std::string& where) {
  for (const auto& t : s.tokens) {
    std::size_t d = t.embedding.size();
    if (!dim) dim = d;
    if (d != *dim) {
      std::string loc = where + ": token " + std::to_string(t.index);
      if (d == 0 || *dim == 0)
        fail(loc, "mixed embedding presence: all tokens in a corpus must carry embeddings or none may");
      fail(loc, "embedding dimension " + std::to_string(d) + " differs from corpus dimension " +
                    std::to_string(*dim));
    }
  }
}

json token_to_json(const Token& t) {
  json j = json::object();
  j["text"] = t.text;
  j["pos"] = std::string(to_string(t.pos));
  j["ner"] = std::string(to_string(t.ner));
  j["np_chunk"] = t.np_chunk ? json(*t.np_chunk) : json(nullptr);
  j["dep_label"] = t.dep_label;
  j["dep_head"] = t.dep_head;
  j["stopword"] = t.stopword;
  j["scus"] = t.scus;
  if (t.has_embedding()) j["embedding"] = t.embedding;
  return j;
}

json summary_to_json(const Summary& s) {
  json toks = json::array();
  for (const auto& t : s.tokens) toks.push_back(token_to_json(t));
  return json{{"tokens", std::move(toks)}};
}

}  // namespace

std::string_view to_string(Pos pos) { return kPosNames[static_cast<int>(pos)]; }
std::string_view to_string(Ner ner) { return kNerNames[static_cast<int>(ner)]; }

std::optional<Pos> parse_pos(std::string_view s) {
  for (int i = 0; i < 7; ++i)
    if (kPosNames[i] == s) return static_cast<Pos>(i);
  return std::nullopt;
}

std::optional<Ner> parse_ner(std::string_view s) {
  for (int i = 0; i < 4; ++i)
    if (kNerNames[i] == s) return static_cast<Ner>(i);
  return std::nullopt;
}

void validate_summary(const Summary& summary, const std::string& where) {
  const int n = static_cast<int>(summary.tokens.size());
  if (n == 0) fail(where, "summary must contain at least one token");
  for (int i = 0; i < n; ++i) {
    const Token& t = summary.tokens[i];
    std::string loc = where + ": token " + std::to_string(i);
    if (t.index != i) fail(loc, "token index " + std::to_string(t.index) + " out of order");
    if (t.text.empty()) fail(loc, "empty token text");
    if (t.dep_head == i) fail(loc, "dep_head points at the token itself");
    if (t.dep_head != -1 && (t.dep_head < 0 || t.dep_head >= n))
      fail(loc, "dep_head " + std::to_string(t.dep_head) + " out of range [-1, " +
                    std::to_string(n) + ")");
    bool is_root = t.dep_label == "root";
    if (is_root && t.dep_head != -1) fail(loc, "root token must have dep_head -1");
    if (!is_root && t.dep_head == -1) fail(loc, "dep_head -1 requires dep_label 'root'");
    if (t.np_chunk && *t.np_chunk < 0) fail(loc, "negative np_chunk");
    for (std::size_t k = 0; k < t.scus.size(); ++k) {
      if (t.scus[k] < 0) fail(loc, "negative SCU id");
      if (k > 0 && t.scus[k - 1] >= t.scus[k]) fail(loc, "SCU ids must be sorted and unique");
    }
  }
}

bool Corpus::has_embeddings() const { return embedding_dim() > 0; }

std::size_t Corpus::embedding_dim() const {
  for (const auto& inst : instances)
    for (const auto& r : inst.references)
      if (!r.tokens.empty()) return r.tokens.front().embedding.size();
  return 0;
}

bool Corpus::has_scus() const {
  auto any = [](const Summary& s) {
    return std::any_of(s.tokens.begin(), s.tokens.end(),
                       [](const Token& t) { return !t.scus.empty(); });
  };
  for (const auto& inst : instances) {
    for (const auto& r : inst.references)
      if (any(r)) return true;
    for (const auto& [sys, c] : inst.candidates)
      if (any(c)) return true;
  }
  return false;
}

const Instance* Corpus::find(std::string_view instance_id) const {
  for (const auto& inst : instances)
    if (inst.instance_id == instance_id) return &inst;
  return nullptr;
}

Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::set<std::string> seen_ids;
  std::optional<std::size_t> dim;
  std::string line;
  int line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string where = "line " + std::to_string(line_no);
    json j = parse_line(line, where);
    if (!j.is_object()) fail(where, "each line must be a JSON object");

    if (j.contains("metadata") && !j.contains("instance_id")) {
      if (!first_content) fail(where, "metadata line must precede all instances");
      corpus.metadata = j.dump();
      first_content = false;
      continue;
    }
    first_content = false;

    const auto& id = require(j, "instance_id", where);
    if (!id.is_string() || id.get<std::string>().empty())
      fail(where, "field 'instance_id' must be a non-empty string");
    Instance inst;
    inst.instance_id = id.get<std::string>();
    where += ": instance '" + inst.instance_id + "'";
    if (!seen_ids.insert(inst.instance_id).second) fail(where, "duplicate instance_id");

    const auto& refs = require(j, "references", where);
    if (!refs.is_array() || refs.empty())
      fail(where, "field 'references' must be a non-empty array");
    for (std::size_t r = 0; r < refs.size(); ++r) {
      std::string loc = where + ": reference " + std::to_string(r);
      inst.references.push_back(parse_summary(refs[r], loc));
      check_embeddings(inst.references.back(), dim, loc);
    }

    const auto& cands = require(j, "candidates", where);
    if (!cands.is_object()) fail(where, "field 'candidates' must be an object");
    for (const auto& [sys, summary] : cands.items()) {
      if (sys.empty()) fail(where, "empty system id");
      std::string loc = where + ": candidate '" + sys + "'";
      Summary s = parse_summary(summary, loc);
      check_embeddings(s, dim, loc);
      inst.candidates.emplace(sys, std::move(s));
    }
    corpus.instances.push_back(std::move(inst));
  }
  if (in.bad()) throw IoError("read error while loading corpus");
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file '" + path + "'");
  try {
    return parse_corpus(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  if (corpus.metadata) out << *corpus.metadata << '\n';
  for (const auto& inst : corpus.instances) {
    json refs = json::array();
    for (const auto& r : inst.references) refs.push_back(summary_to_json(r));
    json cands = json::object();
    for (const auto& [sys, s] : inst.candidates) cands[sys] = summary_to_json(s);
    json j = json::object();
    j["instance_id"] = inst.instance_id;
    j["references"] = std::move(refs);
    j["candidates"] = std::move(cands);
    out << j.dump() << '\n';
  }
}

}  // namespace aligneval
