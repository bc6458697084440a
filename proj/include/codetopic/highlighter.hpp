#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "codetopic/classifier.hpp"
#include "codetopic/text.hpp"
#include "codetopic/topic.hpp"

namespace codetopic {

struct HighlightConfig {
  std::array<std::size_t, kTopicCount> window_size = default_window_sizes();
  std::size_t step_size = 1;
  double threshold = 0.8;
  bool expand_boundaries = true;

  /// OperatorOverload 20 and VirtualFunction 40; the rest are tuned defaults.
  static constexpr std::array<std::size_t, kTopicCount> default_window_sizes() {
    std::array<std::size_t, kTopicCount> w{};
    w[topic_index(Topic::Classes)] = 60;
    w[topic_index(Topic::Friend)] = 20;
    w[topic_index(Topic::Inheritance)] = 40;
    w[topic_index(Topic::Inline)] = 20;
    w[topic_index(Topic::Namespaces)] = 25;
    w[topic_index(Topic::OperatorOverload)] = 20;
    w[topic_index(Topic::Templates)] = 25;
    w[topic_index(Topic::TryCatch)] = 40;
    w[topic_index(Topic::VirtualFunction)] = 40;
    return w;
  }

  std::size_t window_for(Topic t) const { return window_size[topic_index(t)]; }
  /// Throws std::invalid_argument when a window is 0, the step is 0 or the
  /// threshold is outside [0, 1].
  void validate() const;
  friend bool operator==(const HighlightConfig&, const HighlightConfig&) = default;
};

/// Eq. 1 tally for one character and one topic.
struct CharVote {
  std::uint32_t highlight_count = 0;
  std::uint32_t window_num = 0;

  double confidence() const {
    return window_num == 0 ? 0.0 : static_cast<double>(highlight_count) / static_cast<double>(window_num);
  }
  friend bool operator==(const CharVote&, const CharVote&) = default;
};

struct ScoredSpan {
  Span span;
  double confidence = 0.0;
  friend bool operator==(const ScoredSpan&, const ScoredSpan&) = default;
};

struct HighlightSpan {
  Topic topic = Topic::Classes;
  Span span;
  double confidence = 0.0;  // minimum per-character confidence before expansion
  friend bool operator==(const HighlightSpan&, const HighlightSpan&) = default;
};

/// A highlight tied to its document; the `.hl.jsonl` record.
struct DocumentHighlight {
  std::string doc_id;
  Topic topic = Topic::Classes;
  Span span;
  double confidence = 0.0;
  friend bool operator==(const DocumentHighlight&, const DocumentHighlight&) = default;
};

/// [i, i+w) for i = 0, step, ... while i + w <= length; a document shorter
/// than the window yields the single window [0, length).
std::vector<Span> windows(std::size_t length, std::size_t w, std::size_t step = 1);
inline std::vector<Span> windows(const SourceDocument& doc, std::size_t w) { return windows(doc.length(), w); }

/// Feature vectors for arbitrary windows of one text without re-hashing the
/// n-grams for every window.
class WindowFeatures {
 public:
  WindowFeatures(const TfidfModel& model, std::u32string_view text);
  SparseVector features(Span window) const;

 private:
  const TfidfModel* model_;
  std::size_t length_;
  std::vector<std::vector<std::int32_t>> table_;  // [n - ngram_min][start] -> feature index or -1
};

std::vector<CharVote> vote(const SourceDocument& doc, const MultiLabelModel& model, Topic topic,
                           const HighlightConfig& cfg);
std::vector<CharVote> vote(const WindowFeatures& features, std::size_t length, const MultiLabelModel& model,
                           Topic topic, const HighlightConfig& cfg);

/// Maximal runs with confidence >= threshold; each carries its minimum.
std::vector<ScoredSpan> threshold_spans(std::span<const CharVote> votes, double threshold);

/// Grows spans to the brace blocks of function-like definitions they touch
/// (header or closing brace) or, failing that, to the innermost enclosing
/// function or try/catch body; merges overlapping results. Runs to a fixed
/// point, so it is extensive and idempotent.
std::vector<Span> expand_boundaries(const SourceDocument& doc, std::span<const Span> spans);
std::vector<ScoredSpan> expand_boundaries(const SourceDocument& doc, std::span<const ScoredSpan> spans);

/// windows -> vote -> threshold -> optional expansion, per topic; sorted by
/// (topic, start).
std::vector<HighlightSpan> highlight(const SourceDocument& doc, const MultiLabelModel& model, TopicSet topics,
                                     const HighlightConfig& cfg);

}  // namespace codetopic
