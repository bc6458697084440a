#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "codetopic/classifier.hpp"
#include "codetopic/corpus.hpp"
#include "codetopic/evaluation.hpp"
#include "codetopic/highlighter.hpp"

namespace codetopic {

/// Malformed input data (bad JSON line, schema violation, unreadable file).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

void to_json(json& j, const GroundTruthAnnotation& a);
void from_json(const json& j, GroundTruthAnnotation& a);
void to_json(json& j, const LabeledSnippet& s);
void from_json(const json& j, LabeledSnippet& s);
void to_json(json& j, const DocumentHighlight& h);
/// confidence is optional so gold annotation files can be read as highlights.
void from_json(const json& j, DocumentHighlight& h);

json report_to_json(const MetricsReport& report);

/// One JSON object per line; blank lines are skipped. Errors name the line.
template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path);

template <typename T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& records);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// --- model bundle ------------------------------------------------------------

struct Provenance {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::size_t corpus_document_count = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Everything a highlight run needs, persisted as one JSON document.
struct ModelBundle {
  static constexpr const char* kFormatVersion = "1";

  std::string format_version = kFormatVersion;
  MultiLabelModel model;
  HighlightConfig highlight_config;
  Provenance provenance;
};

json tfidf_to_json(const TfidfModel& model);
TfidfModel tfidf_from_json(const json& j);
json train_config_to_json(const TrainConfig& c);
json highlight_config_to_json(const HighlightConfig& c);

json bundle_to_json(const ModelBundle& bundle);
ModelBundle bundle_from_json(const json& j);
void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle load_bundle(const std::filesystem::path& path);

/// FNV-1a 64 of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace codetopic
