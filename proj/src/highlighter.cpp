#include "codetopic/highlighter.hpp"

#include <algorithm>
#include <stdexcept>

#include "codetopic/lexer.hpp"

namespace codetopic {

void HighlightConfig::validate() const {
  for (Topic t : kAllTopics) {
    if (window_size[topic_index(t)] < 1) {
      throw std::invalid_argument("window_size for " + std::string(topic_name(t)) + " must be >= 1");
    }
  }
  if (step_size < 1) throw std::invalid_argument("step_size must be >= 1");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must be in [0, 1]");
}

std::vector<Span> windows(std::size_t length, std::size_t w, std::size_t step) {
  if (w == 0 || step == 0) throw std::invalid_argument("windows: size and step must be >= 1");
  std::vector<Span> out;
  if (length == 0) return out;
  if (length < w) {
    out.push_back(Span{0, length});
    return out;
  }
  out.reserve((length - w) / step + 1);
  for (std::size_t i = 0; i + w <= length; i += step) out.push_back(Span{i, i + w});
  return out;
}

WindowFeatures::WindowFeatures(const TfidfModel& model, std::u32string_view text)
    : model_(&model), length_(text.size()) {
  const std::size_t lo = model.ngram_min();
  const std::size_t hi = model.ngram_max();
  table_.resize(hi - lo + 1);
  for (std::size_t n = lo; n <= hi; ++n) {
    auto& row = table_[n - lo];
    row.assign(length_ >= n ? length_ - n + 1 : 0, -1);
    for (std::size_t i = 0; i + n <= length_; ++i) {
      row[i] = static_cast<std::int32_t>(model.index_of(text.substr(i, n)));
    }
  }
}

SparseVector WindowFeatures::features(Span window) const {
  std::vector<std::uint32_t> indices;
  const std::size_t lo = model_->ngram_min();
  for (std::size_t r = 0; r < table_.size(); ++r) {
    const std::size_t n = lo + r;
    const auto& row = table_[r];
    for (std::size_t i = window.start; i + n <= window.end; ++i) {
      if (row[i] >= 0) indices.push_back(static_cast<std::uint32_t>(row[i]));
    }
  }
  return model_->weigh(indices);
}

std::vector<CharVote> vote(const WindowFeatures& features, std::size_t length, const MultiLabelModel& model,
                           Topic topic, const HighlightConfig& cfg) {
  std::vector<CharVote> votes(length);
  if (length == 0) return votes;
  const TopicClassifier* clf = model.classifier(topic);
  // Difference arrays over window coverage.
  std::vector<std::int64_t> covered(length + 1, 0);
  std::vector<std::int64_t> positive(length + 1, 0);
  for (const Span& w : windows(length, cfg.window_for(topic), cfg.step_size)) {
    ++covered[w.start];
    --covered[w.end];
    if (clf != nullptr && clf->margin(features.features(w)) >= 0.0) {
      ++positive[w.start];
      --positive[w.end];
    }
  }
  std::int64_t c = 0;
  std::int64_t p = 0;
  for (std::size_t i = 0; i < length; ++i) {
    c += covered[i];
    p += positive[i];
    votes[i] = CharVote{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(c)};
  }
  return votes;
}

std::vector<CharVote> vote(const SourceDocument& doc, const MultiLabelModel& model, Topic topic,
                           const HighlightConfig& cfg) {
  const WindowFeatures features(model.tfidf, doc.content);
  return vote(features, doc.length(), model, topic, cfg);
}

std::vector<ScoredSpan> threshold_spans(std::span<const CharVote> votes, double threshold) {
  std::vector<ScoredSpan> out;
  std::size_t i = 0;
  while (i < votes.size()) {
    if (votes[i].confidence() < threshold) {
      ++i;
      continue;
    }
    ScoredSpan run{Span{i, i}, 1.0};
    while (i < votes.size() && votes[i].confidence() >= threshold) {
      run.confidence = std::min(run.confidence, votes[i].confidence());
      ++i;
    }
    run.span.end = i;
    out.push_back(run);
  }
  return out;
}

namespace {

Span expand_once(const std::vector<BraceBlock>& blocks, Span s) {
  Span out = s;
  bool touched = false;
  for (const BraceBlock& b : blocks) {
    if (!b.function_like()) continue;
    const Span header{b.header_start, b.open + 1};
    const Span closing{b.close, b.close + 1};
    if (s.intersects(header) || s.intersects(closing)) {
      out.start = std::min(out.start, b.extent_start);
      out.end = std::max(out.end, b.extent_end);
      touched = true;
    }
  }
  if (touched) return out;
  const BraceBlock* inner = nullptr;
  for (const BraceBlock& b : blocks) {
    if (!b.function_like() || b.type_or_namespace()) continue;
    if (b.open < s.start && s.end <= b.close && (inner == nullptr || b.open > inner->open)) inner = &b;
  }
  if (inner != nullptr) {
    out.start = std::min(out.start, inner->extent_start);
    out.end = std::max(out.end, inner->extent_end);
  }
  return out;
}

std::vector<ScoredSpan> merge_touching(std::vector<ScoredSpan> spans) {
  std::sort(spans.begin(), spans.end(),
            [](const ScoredSpan& a, const ScoredSpan& b) { return a.span < b.span; });
  std::vector<ScoredSpan> out;
  for (const ScoredSpan& s : spans) {
    if (!out.empty() && s.span.start <= out.back().span.end) {
      out.back().span.end = std::max(out.back().span.end, s.span.end);
      out.back().confidence = std::min(out.back().confidence, s.confidence);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

std::vector<ScoredSpan> expand_boundaries(const SourceDocument& doc, std::span<const ScoredSpan> spans) {
  const LexedSource src(doc.content);
  const auto blocks = brace_blocks(src);
  std::vector<ScoredSpan> current = merge_touching({spans.begin(), spans.end()});
  for (;;) {
    std::vector<ScoredSpan> next = current;
    for (auto& s : next) s.span = expand_once(blocks, s.span);
    next = merge_touching(std::move(next));
    if (next == current) return current;
    current = std::move(next);
  }
}

std::vector<Span> expand_boundaries(const SourceDocument& doc, std::span<const Span> spans) {
  std::vector<ScoredSpan> scored;
  scored.reserve(spans.size());
  for (const Span& s : spans) scored.push_back(ScoredSpan{s, 1.0});
  std::vector<Span> out;
  for (const auto& s : expand_boundaries(doc, std::span<const ScoredSpan>(scored))) out.push_back(s.span);
  return out;
}

std::vector<HighlightSpan> highlight(const SourceDocument& doc, const MultiLabelModel& model, TopicSet topics,
                                     const HighlightConfig& cfg) {
  cfg.validate();
  std::vector<HighlightSpan> out;
  if (doc.length() == 0 || topics.empty()) return out;
  const WindowFeatures features(model.tfidf, doc.content);
  for (Topic t : topics.to_vector()) {
    const auto votes = vote(features, doc.length(), model, t, cfg);
    auto spans = threshold_spans(votes, cfg.threshold);
    if (cfg.expand_boundaries && !spans.empty()) spans = expand_boundaries(doc, std::span<const ScoredSpan>(spans));
    for (const auto& s : spans) out.push_back(HighlightSpan{t, s.span, s.confidence});
  }
  return out;
}

}  // namespace codetopic
