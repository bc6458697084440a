#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "codetopic/classifier.hpp"
#include "codetopic/highlighter.hpp"
#include "codetopic/topic.hpp"

namespace codetopic {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusSettings {
  TopicSet topics = TopicSet::from_bits(0x1FF);  // enabled rules
  std::size_t augment_target = 0;                // 0 disables augmentation
  std::size_t background_per_doc = 0;            // unlabelled negatives per file
  std::size_t background_length = 40;
  std::uint64_t seed = 42;
};

struct EvaluationSettings {
  std::size_t folds = 10;
  std::size_t per_topic_cap = 300;
  std::uint64_t seed = 42;
  bool filtered = true;  // highlight only files known to contain the topic
};

struct ServiceSettings {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::size_t max_code_chars = 1'000'000;
  std::string static_dir;  // web UI assets; empty serves a placeholder page
  std::string cors_origin = "*";
};

/// Configuration for every subcommand. JSON layout:
///
///   {"corpus": {...}, "train": {...}, "highlight": {...},
///    "evaluation": {...}, "service": {...}}
///
/// Every section and key is optional; unknown keys are rejected.
struct PipelineConfig {
  CorpusSettings corpus;
  TrainConfig train;
  HighlightConfig highlight;
  EvaluationSettings evaluation;
  ServiceSettings service;
};

PipelineConfig parse_config(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const PipelineConfig& config);

/// Applies a `highlight` section (same keys as in the config file) on top of
/// base. Used for per-request overrides in the service.
HighlightConfig apply_highlight_overrides(HighlightConfig base, const nlohmann::json& overrides);

}  // namespace codetopic
