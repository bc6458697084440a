#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace codetopic {

struct U32Hash {
  using is_transparent = void;
  std::size_t operator()(std::u32string_view s) const { return std::hash<std::u32string_view>{}(s); }
};

/// Sparse vector sorted by feature index.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double norm() const;
  double dot(std::span<const double> dense) const;
};

/// Character n-gram vocabulary with smoothed inverse document frequencies.
/// Immutable once fit; safe to share across threads.
class TfidfModel {
 public:
  static constexpr std::size_t kDefaultMinN = 1;
  static constexpr std::size_t kDefaultMaxN = 5;

  TfidfModel() = default;

  /// idf(t) = ln((1 + N) / (1 + df(t))) + 1. Vocabulary indices follow
  /// lexicographic code point order. min_df drops rarer n-grams.
  static TfidfModel fit(std::span<const std::u32string> corpus, std::size_t min_df = 1);
  static TfidfModel fit_utf8(std::span<const std::string> corpus, std::size_t min_df = 1);

  /// Rebuilds a model from persisted parts; validates every invariant.
  static TfidfModel from_parts(std::size_t ngram_min, std::size_t ngram_max, std::size_t document_count,
                               std::vector<std::u32string> ngrams_by_index, std::vector<double> idf);

  /// Raw-count tf times idf, L2-normalised; unknown n-grams are dropped.
  SparseVector transform(std::u32string_view text) const;
  SparseVector transform_utf8(std::string_view text) const;

  /// Feature index of an n-gram, or -1.
  std::int64_t index_of(std::u32string_view ngram) const;

  std::size_t ngram_min() const { return ngram_min_; }
  std::size_t ngram_max() const { return ngram_max_; }
  std::size_t document_count() const { return document_count_; }
  std::size_t size() const { return ngrams_.size(); }
  const std::vector<double>& idf() const { return idf_; }
  const std::u32string& ngram(std::size_t index) const { return ngrams_[index]; }

  /// Turns a multiset of feature indices into the normalised tf-idf vector.
  /// Shared by transform and the sliding-window scorer so both produce
  /// bit-identical weights.
  SparseVector weigh(std::vector<std::uint32_t>& indices) const;

 private:
  void build_index();

  std::size_t ngram_min_ = kDefaultMinN;
  std::size_t ngram_max_ = kDefaultMaxN;
  std::size_t document_count_ = 0;
  std::vector<std::u32string> ngrams_;
  std::vector<double> idf_;
  std::unordered_map<std::u32string, std::uint32_t, U32Hash, std::equal_to<>> index_;
};

}  // namespace codetopic
