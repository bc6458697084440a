#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codetopic/corpus.hpp"
#include "codetopic/tfidf.hpp"
#include "codetopic/topic.hpp"

namespace codetopic {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  double regularization_strength = 1e-4;  // lambda
  std::size_t epochs = 50;
  std::uint64_t seed = 42;
  double tolerance = 1e-6;

  /// Throws std::invalid_argument on lambda <= 0 or epochs == 0.
  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct TopicClassifier {
  Topic topic = Topic::Classes;
  std::vector<double> weights;  // aligned with TfidfModel feature indices
  double bias = 0.0;
  std::vector<double> objective_history;  // end-of-epoch objective values

  double margin(const SparseVector& x) const { return x.dot(weights) + bias; }
};

struct Prediction {
  bool decision = false;
  double margin = -std::numeric_limits<double>::infinity();
};

using PredictionSet = std::array<Prediction, kTopicCount>;

struct MultiLabelModel {
  TfidfModel tfidf;
  std::map<Topic, TopicClassifier> per_topic;
  TrainConfig training_config;

  const TopicClassifier* classifier(Topic t) const {
    auto it = per_topic.find(t);
    return it == per_topic.end() ? nullptr : &it->second;
  }
  TopicSet trained_topics() const;
};

struct TrainWarning {
  Topic topic;
  std::string message;
};

struct TrainResult {
  MultiLabelModel model;
  std::vector<TrainWarning> warnings;
  std::array<std::size_t, kTopicCount> positives{};
  std::size_t sample_count = 0;  // distinct snippet texts
};

/// Minimises lambda/2 (|w|^2 + b^2) + mean hinge(1 - y (w.x + b)) for a single
/// binary problem with epoch-wise shuffled subgradient steps of size
/// 1/(lambda t). The bias is treated as the weight of a constant feature, as in
/// liblinear. labels are +1 / -1.
TopicClassifier train_binary(Topic topic, std::span<const SparseVector> features,
                             std::span<const std::int8_t> labels, std::size_t dimension,
                             const TrainConfig& config);

/// Fits the tf-idf space on the snippet texts, then one classifier per topic
/// (binary relevance). Topics lacking positives or negatives are omitted and
/// reported in warnings. Snippets with identical text are merged into one
/// example with the union of their labels. Throws TrainingError when nothing
/// can be trained.
TrainResult train(std::span<const LabeledSnippet> snippets, const TrainConfig& config);

/// Same, reusing an already fit feature space.
TrainResult train_with_features(std::span<const LabeledSnippet> snippets, TfidfModel tfidf,
                                const TrainConfig& config);

/// margin = w.x + b; decision = margin >= 0. Untrained topics report
/// decision=false with margin -inf.
PredictionSet predict(const MultiLabelModel& model, std::u32string_view text);
PredictionSet predict(const MultiLabelModel& model, const SparseVector& features);

}  // namespace codetopic
