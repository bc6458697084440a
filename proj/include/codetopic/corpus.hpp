#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "codetopic/text.hpp"
#include "codetopic/topic.hpp"

namespace codetopic {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundTruthAnnotation {
  std::string doc_id;
  Topic topic = Topic::Classes;
  Span span;

  friend bool operator==(const GroundTruthAnnotation&, const GroundTruthAnnotation&) = default;
};

struct LabeledSnippet {
  std::string text;  // UTF-8
  TopicSet labels;

  friend bool operator==(const LabeledSnippet&, const LabeledSnippet&) = default;
};

/// The set of enabled topic rules. Immutable once built.
class RuleSet {
 public:
  RuleSet() : enabled_(TopicSet::from_bits(0x1FF)) {}
  explicit RuleSet(TopicSet enabled) : enabled_(enabled) {}

  bool enabled(Topic t) const { return enabled_.contains(t); }
  TopicSet topics() const { return enabled_; }

 private:
  TopicSet enabled_;
};

/// Mines construct instances from one document. Output is sorted by
/// (start, topic); same-topic overlaps are merged into their union.
std::vector<GroundTruthAnnotation> extract_annotations(const SourceDocument& doc,
                                                       const RuleSet& rules = RuleSet{});

/// Spans for one topic only, before merging; exposed for tests.
std::vector<Span> match_topic(const SourceDocument& doc, Topic topic);

/// One singleton-labelled snippet per annotation, in document order.
std::vector<LabeledSnippet> extract_snippets(std::span<const SourceDocument> corpus,
                                             const RuleSet& rules = RuleSet{});

/// Grows every topic with fewer than target_per_topic snippets by rewriting
/// existing ones: consistent identifier renaming, whitespace perturbation and
/// comment insertion. Originals come first and are untouched; labels are
/// copied verbatim. Throws std::invalid_argument when target_per_topic is 0.
std::vector<LabeledSnippet> augment(std::span<const LabeledSnippet> snippets,
                                    std::size_t target_per_topic, std::uint64_t seed);

/// A single semantics-preserving rewrite of a snippet; used by augment.
std::string rewrite_snippet(std::string_view text, std::uint64_t seed);

/// Unlabelled snippets drawn from regions of the documents that no
/// annotation touches. Useful as negatives for the window classifier.
std::vector<LabeledSnippet> background_snippets(std::span<const SourceDocument> corpus,
                                                std::span<const GroundTruthAnnotation> annotations,
                                                std::size_t per_document, std::size_t length,
                                                std::uint64_t seed);

struct LoadedCorpus {
  std::vector<SourceDocument> documents;  // sorted by doc_id
  std::vector<std::string> skipped;       // doc_ids that could not be read
  std::size_t invalid_utf8 = 0;           // replaced byte sequences, all files
};

/// Reads every `.cpp` file under root; doc_id is the `/`-separated relative
/// path. Throws CorpusError when root is not a directory.
LoadedCorpus load_corpus_dir(const std::filesystem::path& root);

}  // namespace codetopic
