#include "codetopic/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

namespace codetopic {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double objective(std::span<const SparseVector> xs, std::span<const std::int8_t> ys,
                 std::span<const double> w, double b, double lambda) {
  double norm2 = b * b;
  for (double v : w) norm2 += v * v;
  double loss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    loss += std::max(0.0, 1.0 - ys[i] * (xs[i].dot(w) + b));
  }
  return 0.5 * lambda * norm2 + loss / static_cast<double>(xs.size());
}

}  // namespace

void TrainConfig::validate() const {
  if (!(regularization_strength > 0.0) || !std::isfinite(regularization_strength)) {
    throw std::invalid_argument("regularization_strength must be > 0");
  }
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
}

TopicSet MultiLabelModel::trained_topics() const {
  TopicSet s;
  for (const auto& [t, c] : per_topic) s.insert(t);
  return s;
}

TopicClassifier train_binary(Topic topic, std::span<const SparseVector> features,
                             std::span<const std::int8_t> labels, std::size_t dimension,
                             const TrainConfig& config) {
  config.validate();
  const double lambda = config.regularization_strength;
  const std::size_t n = features.size();

  // w = scale * v keeps the per-step shrink O(1). The bias is the weight of a
  // constant feature 1 and shrinks with w.
  std::vector<double> v(dimension, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(topic_index(topic) + 1)));

  TopicClassifier out;
  out.topic = topic;
  std::vector<double> w(dimension, 0.0);
  double previous = std::numeric_limits<double>::infinity();
  std::uint64_t t = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const SparseVector& x = features[idx];
      const double y = labels[idx];
      const double margin = scale * x.dot(v) + bias;
      const double shrink = 1.0 - eta * lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
        bias = 0.0;
      } else {
        scale *= shrink;
        bias *= shrink;
      }
      if (y * margin < 1.0) {
        const double step = eta * y / scale;
        for (const auto& [i, value] : x.entries) v[i] += step * value;
        bias += eta * y;
      }
      if (scale < 1e-9) {
        for (double& e : v) e *= scale;
        scale = 1.0;
      }
    }
    for (std::size_t i = 0; i < dimension; ++i) w[i] = scale * v[i];
    const double obj = objective(features, labels, w, bias, lambda);
    out.objective_history.push_back(obj);
    if (std::abs(previous - obj) < config.tolerance) break;
    previous = obj;
  }
  out.weights = std::move(w);
  out.bias = bias;
  return out;
}

TrainResult train(std::span<const LabeledSnippet> snippets, const TrainConfig& config) {
  if (snippets.empty()) throw TrainingError("train: no training snippets");
  std::vector<std::string> texts;
  texts.reserve(snippets.size());
  for (const auto& s : snippets) texts.push_back(s.text);
  return train_with_features(snippets, TfidfModel::fit_utf8(texts), config);
}

TrainResult train_with_features(std::span<const LabeledSnippet> snippets, TfidfModel tfidf,
                                const TrainConfig& config) {
  if (snippets.empty()) throw TrainingError("train: no training snippets");
  config.validate();

  // Identical texts become one example carrying the union of their labels,
  // so co-occurring constructs never appear as their own negatives.
  std::vector<LabeledSnippet> merged;
  std::unordered_map<std::string_view, std::size_t> first_seen;
  for (const auto& s : snippets) {
    auto [it, fresh] = first_seen.try_emplace(s.text, merged.size());
    if (fresh) {
      merged.push_back(s);
    } else {
      merged[it->second].labels = TopicSet::from_bits(merged[it->second].labels.bits() | s.labels.bits());
    }
  }

  TrainResult result;
  result.sample_count = merged.size();
  std::vector<SparseVector> features;
  features.reserve(merged.size());
  for (const auto& s : merged) features.push_back(tfidf.transform_utf8(s.text));

  result.model.training_config = config;
  for (Topic topic : kAllTopics) {
    std::vector<std::int8_t> labels(merged.size());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      const bool pos = merged[i].labels.contains(topic);
      labels[i] = pos ? 1 : -1;
      positives += pos ? 1 : 0;
    }
    result.positives[topic_index(topic)] = positives;
    if (positives == 0) {
      result.warnings.push_back({topic, "no positive examples; topic omitted"});
      continue;
    }
    if (positives == merged.size()) {
      result.warnings.push_back({topic, "no negative examples; topic omitted"});
      continue;
    }
    result.model.per_topic.emplace(topic, train_binary(topic, features, labels, tfidf.size(), config));
  }
  if (result.model.per_topic.empty()) {
    throw TrainingError("train: no topic has both positive and negative examples");
  }
  result.model.tfidf = std::move(tfidf);
  return result;
}

PredictionSet predict(const MultiLabelModel& model, const SparseVector& features) {
  PredictionSet out{};
  for (const auto& [topic, clf] : model.per_topic) {
    const double m = clf.margin(features);
    out[topic_index(topic)] = Prediction{m >= 0.0, m};
  }
  return out;
}

PredictionSet predict(const MultiLabelModel& model, std::u32string_view text) {
  return predict(model, model.tfidf.transform(text));
}

}  // namespace codetopic
