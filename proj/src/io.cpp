#include "codetopic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "codetopic/text.hpp"

namespace codetopic {
namespace {

Topic topic_from(const json& j) {
  const auto name = j.get<std::string>();
  auto t = parse_topic(name);
  if (!t) throw DataError("unknown topic '" + name + "' (valid: " + valid_topic_names() + ")");
  return *t;
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DataError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw DataError(std::string("field '") + key + "' has the wrong type");
  }
}

Span span_from(const json& j) {
  const auto start = required<std::int64_t>(j, "start");
  const auto end = required<std::int64_t>(j, "end");
  if (start < 0 || end <= start) throw DataError("invalid span [" + std::to_string(start) + ", " + std::to_string(end) + ")");
  return Span{static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
}

}  // namespace

void to_json(json& j, const GroundTruthAnnotation& a) {
  j = json{{"doc_id", a.doc_id}, {"topic", topic_name(a.topic)}, {"start", a.span.start}, {"end", a.span.end}};
}

void from_json(const json& j, GroundTruthAnnotation& a) {
  a.doc_id = required<std::string>(j, "doc_id");
  a.topic = topic_from(j.at("topic"));
  a.span = span_from(j);
}

void to_json(json& j, const LabeledSnippet& s) {
  json labels = json::array();
  for (Topic t : s.labels.to_vector()) labels.push_back(topic_name(t));
  j = json{{"text", s.text}, {"labels", labels}};
}

void from_json(const json& j, LabeledSnippet& s) {
  s.text = required<std::string>(j, "text");
  if (!j.contains("labels") || !j.at("labels").is_array()) throw DataError("missing field 'labels'");
  s.labels = TopicSet{};
  for (const auto& l : j.at("labels")) s.labels.insert(topic_from(l));
}

void to_json(json& j, const DocumentHighlight& h) {
  j = json{{"doc_id", h.doc_id},
           {"topic", topic_name(h.topic)},
           {"start", h.span.start},
           {"end", h.span.end},
           {"confidence", h.confidence}};
}

void from_json(const json& j, DocumentHighlight& h) {
  h.doc_id = required<std::string>(j, "doc_id");
  h.topic = topic_from(j.at("topic"));
  h.span = span_from(j);
  h.confidence = j.contains("confidence") ? required<double>(j, "confidence") : 1.0;
}

json report_to_json(const MetricsReport& report) {
  json per_topic = json::object();
  for (const auto& [topic, m] : report.per_topic) {
    per_topic[std::string(topic_name(topic))] =
        json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  json out{{"per_topic", per_topic},
           {"average", {{"precision", report.avg_precision}, {"recall", report.avg_recall}, {"f1", report.avg_f1}}}};
  if (!report.warnings.empty()) out["warnings"] = report.warnings;
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line).get<T>());
    } catch (const json::exception& e) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

template <typename T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& records) {
  std::string body;
  for (const auto& r : records) {
    body += json(r).dump();
    body += '\n';
  }
  write_file(path, body);
}

template std::vector<GroundTruthAnnotation> read_jsonl(const std::filesystem::path&);
template std::vector<LabeledSnippet> read_jsonl(const std::filesystem::path&);
template std::vector<DocumentHighlight> read_jsonl(const std::filesystem::path&);
template void write_jsonl(const std::filesystem::path&, const std::vector<GroundTruthAnnotation>&);
template void write_jsonl(const std::filesystem::path&, const std::vector<LabeledSnippet>&);
template void write_jsonl(const std::filesystem::path&, const std::vector<DocumentHighlight>&);

// --- model bundle ------------------------------------------------------------

json tfidf_to_json(const TfidfModel& model) {
  json vocab = json::object();
  json idf = json::array();
  for (std::size_t i = 0; i < model.size(); ++i) {
    vocab[encode_utf8(model.ngram(i))] = i;
    idf.push_back(model.idf()[i]);
  }
  return json{{"ngram_min", model.ngram_min()},
              {"ngram_max", model.ngram_max()},
              {"document_count", model.document_count()},
              {"vocabulary", std::move(vocab)},
              {"idf", std::move(idf)}};
}

TfidfModel tfidf_from_json(const json& j) {
  const auto idf = required<std::vector<double>>(j, "idf");
  if (!j.contains("vocabulary") || !j.at("vocabulary").is_object()) throw DataError("missing field 'vocabulary'");
  std::vector<std::u32string> grams(idf.size());
  std::vector<bool> filled(idf.size(), false);
  for (const auto& [gram, index] : j.at("vocabulary").items()) {
    const auto i = index.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= grams.size() || filled[static_cast<std::size_t>(i)]) {
      throw DataError("vocabulary indices are not a permutation of 0..n-1");
    }
    grams[static_cast<std::size_t>(i)] = decode_utf8(gram);
    filled[static_cast<std::size_t>(i)] = true;
  }
  if (std::find(filled.begin(), filled.end(), false) != filled.end()) {
    throw DataError("vocabulary does not cover every idf entry");
  }
  try {
    return TfidfModel::from_parts(required<std::size_t>(j, "ngram_min"), required<std::size_t>(j, "ngram_max"),
                                  required<std::size_t>(j, "document_count"), std::move(grams), idf);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

json train_config_to_json(const TrainConfig& c) {
  return json{{"regularization_strength", c.regularization_strength},
              {"epochs", c.epochs},
              {"seed", c.seed},
              {"tolerance", c.tolerance}};
}

json highlight_config_to_json(const HighlightConfig& c) {
  json windows = json::object();
  for (Topic t : kAllTopics) windows[std::string(topic_name(t))] = c.window_for(t);
  return json{{"window_size", windows},
              {"step_size", c.step_size},
              {"threshold", c.threshold},
              {"expand_boundaries", c.expand_boundaries}};
}

json bundle_to_json(const ModelBundle& bundle) {
  json classifiers = json::array();
  for (const auto& [topic, clf] : bundle.model.per_topic) {
    classifiers.push_back(json{{"topic", topic_name(topic)},
                               {"bias", clf.bias},
                               {"weights", clf.weights},
                               {"objective_history", clf.objective_history}});
  }
  return json{{"format_version", bundle.format_version},
              {"tfidf", tfidf_to_json(bundle.model.tfidf)},
              {"classifiers", std::move(classifiers)},
              {"training_config", train_config_to_json(bundle.model.training_config)},
              {"highlight_config", highlight_config_to_json(bundle.highlight_config)},
              {"provenance",
               {{"seed", bundle.provenance.seed},
                {"config_hash", bundle.provenance.config_hash},
                {"corpus_document_count", bundle.provenance.corpus_document_count}}}};
}

ModelBundle bundle_from_json(const json& j) {
  ModelBundle b;
  b.format_version = required<std::string>(j, "format_version");
  if (b.format_version != ModelBundle::kFormatVersion) {
    throw DataError("unsupported model format_version '" + b.format_version + "'");
  }
  b.model.tfidf = tfidf_from_json(j.at("tfidf"));

  const json& tc = j.at("training_config");
  b.model.training_config.regularization_strength = required<double>(tc, "regularization_strength");
  b.model.training_config.epochs = required<std::size_t>(tc, "epochs");
  b.model.training_config.seed = required<std::uint64_t>(tc, "seed");
  b.model.training_config.tolerance = required<double>(tc, "tolerance");

  const json& hc = j.at("highlight_config");
  for (const auto& [name, w] : hc.at("window_size").items()) {
    auto t = parse_topic(name);
    if (!t) throw DataError("unknown topic '" + name + "' in window_size");
    b.highlight_config.window_size[topic_index(*t)] = w.get<std::size_t>();
  }
  b.highlight_config.step_size = required<std::size_t>(hc, "step_size");
  b.highlight_config.threshold = required<double>(hc, "threshold");
  b.highlight_config.expand_boundaries = required<bool>(hc, "expand_boundaries");

  for (const auto& c : j.at("classifiers")) {
    TopicClassifier clf;
    clf.topic = topic_from(c.at("topic"));
    clf.bias = required<double>(c, "bias");
    clf.weights = required<std::vector<double>>(c, "weights");
    if (c.contains("objective_history")) clf.objective_history = c.at("objective_history").get<std::vector<double>>();
    if (clf.weights.size() != b.model.tfidf.size()) {
      throw DataError("classifier for " + std::string(topic_name(clf.topic)) + " has " +
                      std::to_string(clf.weights.size()) + " weights, vocabulary has " +
                      std::to_string(b.model.tfidf.size()));
    }
    b.model.per_topic[clf.topic] = std::move(clf);
  }

  const json& p = j.at("provenance");
  b.provenance.seed = required<std::uint64_t>(p, "seed");
  b.provenance.config_hash = required<std::string>(p, "config_hash");
  b.provenance.corpus_document_count = required<std::size_t>(p, "corpus_document_count");
  return b;
}

void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle) {
  write_file(path, bundle_to_json(bundle).dump() + "\n");
}

ModelBundle load_bundle(const std::filesystem::path& path) {
  try {
    return bundle_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace codetopic
