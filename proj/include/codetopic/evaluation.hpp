#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "codetopic/classifier.hpp"
#include "codetopic/corpus.hpp"
#include "codetopic/highlighter.hpp"
#include "codetopic/topic.hpp"

namespace codetopic {

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TopicMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double support = 0.0;
};

struct MetricsReport {
  std::map<Topic, TopicMetrics> per_topic;
  double avg_precision = 0.0;
  double avg_recall = 0.0;
  double avg_f1 = 0.0;
  std::vector<std::string> warnings;

  /// Average row: unweighted mean of each column over topics with support > 0.
  void recompute_average();
};

/// 2pr / (p + r), or 0 when p + r == 0.
double f1_score(double precision, double recall);

struct FoldAssignment {
  std::size_t fold_count = 0;
  std::vector<std::size_t> assignment;  // sample index -> fold

  std::vector<std::size_t> members(std::size_t fold) const;
};

/// Iterative stratification: the rarest remaining label is distributed first,
/// each example going to the fold that still wants that label most (ties:
/// most remaining capacity, then seeded random choice). Throws
/// std::invalid_argument when k < 2 or there are fewer samples than folds.
FoldAssignment stratified_folds(std::span<const TopicSet> labels, std::size_t k, std::uint64_t seed);

/// A fitted predictor over raw snippet text.
using Predictor = std::function<PredictionSet(std::string_view)>;
/// Fits a predictor on a training split.
using Trainer = std::function<Predictor(std::span<const LabeledSnippet>)>;

/// Trainer that runs train() with the given config.
Trainer svm_trainer(const TrainConfig& config);

/// k-fold file-level evaluation. Per-fold precision and recall are averaged
/// across folds and F1 is taken from those averages; support is the mean count
/// of test positives per fold.
/// Topics with fewer than k positives are excluded with a warning.
MetricsReport cross_validate(std::span<const LabeledSnippet> snippets, std::size_t k, const TrainConfig& config);
MetricsReport cross_validate(std::span<const LabeledSnippet> snippets, std::size_t k, std::uint64_t fold_seed,
                             const Trainer& trainer);

/// Raw character counts behind char_metrics.
struct CharCounts {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
  std::size_t gold_documents = 0;
};

std::map<Topic, CharCounts> char_counts(std::span<const DocumentHighlight> predicted,
                                        std::span<const GroundTruthAnnotation> gold,
                                        const std::map<std::string, std::size_t>& doc_lengths);

/// Character-level precision/recall/F1 per topic over all documents.
/// Same-topic spans are unioned per document before counting; support is the
/// number of documents with gold characters for the topic. Throws
/// EvaluationError for unknown doc_ids or spans past the document end.
MetricsReport char_metrics(std::span<const DocumentHighlight> predicted, std::span<const GroundTruthAnnotation> gold,
                           const std::map<std::string, std::size_t>& doc_lengths);

/// Per topic, the documents with at least one gold annotation, capped at
/// per_topic_cap by a seeded uniform sample.
std::map<Topic, std::set<std::string>> sample_eval_set(std::span<const GroundTruthAnnotation> gold,
                                                       std::size_t per_topic_cap, std::uint64_t seed);

/// Text table with columns Class, Precision, Recall, F1-Score, Support.
std::string format_table(const MetricsReport& report);

}  // namespace codetopic
