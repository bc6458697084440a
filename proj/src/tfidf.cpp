#include "codetopic/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "codetopic/text.hpp"

namespace codetopic {

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& [idx, w] : entries) sum += w * w;
  return std::sqrt(sum);
}

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto& [idx, w] : entries) sum += w * dense[idx];
  return sum;
}

TfidfModel TfidfModel::fit(std::span<const std::u32string> corpus, std::size_t min_df) {
  if (corpus.empty()) throw std::invalid_argument("tfidf fit: corpus is empty");
  TfidfModel model;
  std::unordered_map<std::u32string, std::size_t, U32Hash, std::equal_to<>> df;
  std::unordered_map<std::u32string_view, std::size_t> seen_in;  // last doc index + 1
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const std::u32string_view text = corpus[d];
    for (std::size_t n = model.ngram_min_; n <= model.ngram_max_; ++n) {
      for (std::size_t i = 0; i + n <= text.size(); ++i) {
        const auto gram = text.substr(i, n);
        auto it = df.find(gram);
        if (it == df.end()) it = df.emplace(std::u32string(gram), 0).first;
        auto& last = seen_in[std::u32string_view(it->first)];
        if (last != d + 1) {
          last = d + 1;
          ++it->second;
        }
      }
    }
  }
  std::vector<std::pair<std::u32string, std::size_t>> grams;
  grams.reserve(df.size());
  for (auto& [gram, count] : df) {
    if (count >= min_df) grams.emplace_back(gram, count);
  }
  std::sort(grams.begin(), grams.end());

  model.document_count_ = corpus.size();
  const double n_docs = static_cast<double>(corpus.size());
  model.ngrams_.reserve(grams.size());
  model.idf_.reserve(grams.size());
  for (auto& [gram, count] : grams) {
    model.ngrams_.push_back(std::move(gram));
    model.idf_.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  model.build_index();
  return model;
}

TfidfModel TfidfModel::fit_utf8(std::span<const std::string> corpus, std::size_t min_df) {
  std::vector<std::u32string> decoded;
  decoded.reserve(corpus.size());
  for (const auto& s : corpus) decoded.push_back(decode_utf8(s));
  return fit(decoded, min_df);
}

TfidfModel TfidfModel::from_parts(std::size_t ngram_min, std::size_t ngram_max, std::size_t document_count,
                                  std::vector<std::u32string> ngrams_by_index, std::vector<double> idf) {
  if (ngram_min < 1 || ngram_min > ngram_max) throw std::invalid_argument("tfidf: bad n-gram range");
  if (ngrams_by_index.size() != idf.size()) throw std::invalid_argument("tfidf: idf length mismatch");
  for (std::size_t i = 0; i < idf.size(); ++i) {
    const auto len = ngrams_by_index[i].size();
    if (len < ngram_min || len > ngram_max) throw std::invalid_argument("tfidf: n-gram length out of range");
    if (!(idf[i] > 0.0) || !std::isfinite(idf[i])) throw std::invalid_argument("tfidf: idf must be positive");
    if (i > 0 && !(ngrams_by_index[i - 1] < ngrams_by_index[i])) {
      throw std::invalid_argument("tfidf: vocabulary is not in strictly increasing order");
    }
  }
  TfidfModel model;
  model.ngram_min_ = ngram_min;
  model.ngram_max_ = ngram_max;
  model.document_count_ = document_count;
  model.ngrams_ = std::move(ngrams_by_index);
  model.idf_ = std::move(idf);
  model.build_index();
  return model;
}

void TfidfModel::build_index() {
  index_.clear();
  index_.reserve(ngrams_.size());
  for (std::size_t i = 0; i < ngrams_.size(); ++i) index_.emplace(ngrams_[i], static_cast<std::uint32_t>(i));
}

std::int64_t TfidfModel::index_of(std::u32string_view ngram) const {
  auto it = index_.find(ngram);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

SparseVector TfidfModel::weigh(std::vector<std::uint32_t>& indices) const {
  std::sort(indices.begin(), indices.end());
  SparseVector v;
  double sum = 0.0;
  for (std::size_t i = 0; i < indices.size();) {
    std::size_t j = i;
    while (j < indices.size() && indices[j] == indices[i]) ++j;
    const double w = static_cast<double>(j - i) * idf_[indices[i]];
    v.entries.emplace_back(indices[i], w);
    sum += w * w;
    i = j;
  }
  if (v.entries.empty()) return v;
  const double norm = std::sqrt(sum);
  for (auto& e : v.entries) e.second /= norm;
  return v;
}

SparseVector TfidfModel::transform(std::u32string_view text) const {
  std::vector<std::uint32_t> indices;
  for (std::size_t n = ngram_min_; n <= ngram_max_; ++n) {
    for (std::size_t i = 0; i + n <= text.size(); ++i) {
      auto it = index_.find(text.substr(i, n));
      if (it != index_.end()) indices.push_back(it->second);
    }
  }
  return weigh(indices);
}

SparseVector TfidfModel::transform_utf8(std::string_view text) const { return transform(decode_utf8(text)); }

}  // namespace codetopic
