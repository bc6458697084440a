#include "codetopic/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

namespace codetopic {
namespace {

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::vector<Span> union_spans(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<Span> out;
  for (const Span& s : spans) {
    if (!out.empty() && s.start <= out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::size_t total_length(const std::vector<Span>& spans) {
  std::size_t n = 0;
  for (const Span& s : spans) n += s.length();
  return n;
}

/// Overlap length of two sorted disjoint interval lists.
std::size_t overlap(const std::vector<Span>& a, const std::vector<Span>& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t n = 0;
  while (i < a.size() && j < b.size()) {
    const std::size_t lo = std::max(a[i].start, b[j].start);
    const std::size_t hi = std::min(a[i].end, b[j].end);
    if (lo < hi) n += hi - lo;
    if (a[i].end < b[j].end) ++i;
    else ++j;
  }
  return n;
}

void check_span(const std::map<std::string, std::size_t>& doc_lengths, const std::string& doc_id, Span span) {
  auto it = doc_lengths.find(doc_id);
  if (it == doc_lengths.end()) throw EvaluationError("unknown doc_id: " + doc_id);
  if (!span.valid_for(it->second)) {
    throw EvaluationError("span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                          ") out of range for " + doc_id);
  }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed ^ (salt + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2));
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double f1_score(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

void MetricsReport::recompute_average() {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;
  std::size_t n = 0;
  for (const auto& [topic, m] : per_topic) {
    if (m.support <= 0.0) continue;
    p += m.precision;
    r += m.recall;
    f += m.f1;
    ++n;
  }
  avg_precision = n > 0 ? p / static_cast<double>(n) : 0.0;
  avg_recall = n > 0 ? r / static_cast<double>(n) : 0.0;
  avg_f1 = n > 0 ? f / static_cast<double>(n) : 0.0;
}

std::vector<std::size_t> FoldAssignment::members(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) out.push_back(i);
  }
  return out;
}

FoldAssignment stratified_folds(std::span<const TopicSet> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_folds: k must be >= 2");
  const std::size_t n = labels.size();
  if (n < k) throw std::invalid_argument("stratified_folds: fewer samples than folds");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> capacity(k, static_cast<double>(n) / static_cast<double>(k));
  std::array<std::vector<double>, kTopicCount> wanted;
  std::array<std::size_t, kTopicCount> remaining{};
  for (const TopicSet& s : labels) {
    for (Topic t : s.to_vector()) ++remaining[topic_index(t)];
  }
  for (Topic t : kAllTopics) {
    wanted[topic_index(t)].assign(k, static_cast<double>(remaining[topic_index(t)]) / static_cast<double>(k));
  }

  FoldAssignment out;
  out.fold_count = k;
  out.assignment.assign(n, k);
  constexpr double kEps = 1e-9;

  auto pick_fold = [&](const std::vector<double>* label_wants) {
    std::vector<std::size_t> best;
    for (std::size_t f = 0; f < k; ++f) {
      if (best.empty()) {
        best.push_back(f);
        continue;
      }
      const std::size_t b = best.front();
      double diff = 0.0;
      if (label_wants != nullptr) diff = (*label_wants)[f] - (*label_wants)[b];
      if (std::abs(diff) <= kEps) diff = capacity[f] - capacity[b];
      if (std::abs(diff) <= kEps) {
        best.push_back(f);
      } else if (diff > 0.0) {
        best.assign(1, f);
      }
    }
    if (best.size() == 1) return best.front();
    std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
    return best[pick(rng)];
  };
  auto assign = [&](std::size_t sample, std::size_t fold) {
    out.assignment[sample] = fold;
    capacity[fold] -= 1.0;
    for (Topic t : labels[sample].to_vector()) {
      wanted[topic_index(t)][fold] -= 1.0;
      --remaining[topic_index(t)];
    }
  };

  for (;;) {
    std::size_t label = kTopicCount;
    for (std::size_t l = 0; l < kTopicCount; ++l) {
      if (remaining[l] > 0 && (label == kTopicCount || remaining[l] < remaining[label])) label = l;
    }
    if (label == kTopicCount) break;
    const Topic topic = kAllTopics[label];
    for (std::size_t sample : order) {
      if (out.assignment[sample] != k || !labels[sample].contains(topic)) continue;
      assign(sample, pick_fold(&wanted[label]));
    }
  }
  for (std::size_t sample : order) {
    if (out.assignment[sample] == k) assign(sample, pick_fold(nullptr));
  }
  return out;
}

Trainer svm_trainer(const TrainConfig& config) {
  return [config](std::span<const LabeledSnippet> train_split) -> Predictor {
    auto model = std::make_shared<MultiLabelModel>(train(train_split, config).model);
    return [model](std::string_view text) { return predict(*model, model->tfidf.transform_utf8(text)); };
  };
}

MetricsReport cross_validate(std::span<const LabeledSnippet> snippets, std::size_t k, const TrainConfig& config) {
  return cross_validate(snippets, k, config.seed, svm_trainer(config));
}

MetricsReport cross_validate(std::span<const LabeledSnippet> snippets, std::size_t k, std::uint64_t fold_seed,
                             const Trainer& trainer) {
  std::vector<TopicSet> labels;
  labels.reserve(snippets.size());
  std::array<std::size_t, kTopicCount> positives{};
  for (const auto& s : snippets) {
    labels.push_back(s.labels);
    for (Topic t : s.labels.to_vector()) ++positives[topic_index(t)];
  }
  MetricsReport report;
  TopicSet evaluated;
  for (Topic t : kAllTopics) {
    const std::size_t p = positives[topic_index(t)];
    if (p >= k) {
      evaluated.insert(t);
    } else if (p > 0) {
      report.warnings.push_back(std::string(topic_name(t)) + ": only " + std::to_string(p) +
                                " positive examples for " + std::to_string(k) + " folds; excluded");
    }
  }

  const FoldAssignment folds = stratified_folds(labels, k, fold_seed);
  std::array<TopicMetrics, kTopicCount> sums{};
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<LabeledSnippet> train_split;
    std::vector<std::size_t> test_idx;
    for (std::size_t i = 0; i < snippets.size(); ++i) {
      if (folds.assignment[i] == f) test_idx.push_back(i);
      else train_split.push_back(snippets[i]);
    }
    const Predictor predictor = trainer(train_split);
    std::array<std::size_t, kTopicCount> tp{};
    std::array<std::size_t, kTopicCount> fp{};
    std::array<std::size_t, kTopicCount> fn{};
    for (std::size_t i : test_idx) {
      const PredictionSet pred = predictor(snippets[i].text);
      for (Topic t : evaluated.to_vector()) {
        const std::size_t ti = topic_index(t);
        const bool truth = snippets[i].labels.contains(t);
        const bool said = pred[ti].decision;
        if (said && truth) ++tp[ti];
        if (said && !truth) ++fp[ti];
        if (!said && truth) ++fn[ti];
      }
    }
    for (Topic t : evaluated.to_vector()) {
      const std::size_t ti = topic_index(t);
      const double p = safe_ratio(static_cast<double>(tp[ti]), static_cast<double>(tp[ti] + fp[ti]));
      const double r = safe_ratio(static_cast<double>(tp[ti]), static_cast<double>(tp[ti] + fn[ti]));
      sums[ti].precision += p;
      sums[ti].recall += r;
      sums[ti].support += static_cast<double>(tp[ti] + fn[ti]);
    }
  }
  const double kd = static_cast<double>(k);
  for (Topic t : evaluated.to_vector()) {
    const auto& s = sums[topic_index(t)];
    const double p = s.precision / kd;
    const double r = s.recall / kd;
    report.per_topic[t] = TopicMetrics{p, r, f1_score(p, r), s.support / kd};
  }
  report.recompute_average();
  return report;
}

std::map<Topic, CharCounts> char_counts(std::span<const DocumentHighlight> predicted,
                                        std::span<const GroundTruthAnnotation> gold,
                                        const std::map<std::string, std::size_t>& doc_lengths) {
  using Key = std::pair<Topic, std::string>;
  std::map<Key, std::vector<Span>> pred_spans;
  std::map<Key, std::vector<Span>> gold_spans;
  for (const auto& h : predicted) {
    check_span(doc_lengths, h.doc_id, h.span);
    pred_spans[{h.topic, h.doc_id}].push_back(h.span);
  }
  for (const auto& g : gold) {
    check_span(doc_lengths, g.doc_id, g.span);
    gold_spans[{g.topic, g.doc_id}].push_back(g.span);
  }
  std::set<Key> keys;
  for (const auto& [k, v] : pred_spans) keys.insert(k);
  for (const auto& [k, v] : gold_spans) keys.insert(k);

  std::map<Topic, CharCounts> counts;
  for (const Key& key : keys) {
    auto p_it = pred_spans.find(key);
    auto g_it = gold_spans.find(key);
    const auto p = union_spans(p_it == pred_spans.end() ? std::vector<Span>{} : p_it->second);
    const auto g = union_spans(g_it == gold_spans.end() ? std::vector<Span>{} : g_it->second);
    const std::size_t both = overlap(p, g);
    CharCounts& c = counts[key.first];
    c.true_positive += both;
    c.false_positive += total_length(p) - both;
    c.false_negative += total_length(g) - both;
    if (!g.empty()) ++c.gold_documents;
  }
  return counts;
}

MetricsReport char_metrics(std::span<const DocumentHighlight> predicted, std::span<const GroundTruthAnnotation> gold,
                           const std::map<std::string, std::size_t>& doc_lengths) {
  MetricsReport report;
  for (const auto& [topic, c] : char_counts(predicted, gold, doc_lengths)) {
    const double tp = static_cast<double>(c.true_positive);
    const double p = safe_ratio(tp, tp + static_cast<double>(c.false_positive));
    const double r = safe_ratio(tp, tp + static_cast<double>(c.false_negative));
    report.per_topic[topic] = TopicMetrics{p, r, f1_score(p, r), static_cast<double>(c.gold_documents)};
  }
  report.recompute_average();
  return report;
}

std::map<Topic, std::set<std::string>> sample_eval_set(std::span<const GroundTruthAnnotation> gold,
                                                       std::size_t per_topic_cap, std::uint64_t seed) {
  if (per_topic_cap < 1) throw std::invalid_argument("sample_eval_set: per_topic_cap must be >= 1");
  std::map<Topic, std::set<std::string>> docs;
  for (const auto& g : gold) docs[g.topic].insert(g.doc_id);
  for (auto& [topic, ids] : docs) {
    if (ids.size() <= per_topic_cap) continue;
    std::vector<std::string> pool(ids.begin(), ids.end());
    std::mt19937_64 rng(mix(seed, topic_index(topic)));
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(per_topic_cap);
    ids = std::set<std::string>(pool.begin(), pool.end());
  }
  return docs;
}

std::string format_table(const MetricsReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(18) << "Class" << std::right << std::setw(10) << "Precision" << std::setw(8)
      << "Recall" << std::setw(10) << "F1-Score" << std::setw(10) << "Support" << '\n';
  out << std::fixed;
  for (const auto& [topic, m] : report.per_topic) {
    out << std::left << std::setw(18) << topic_name(topic) << std::right << std::setprecision(2) << std::setw(10)
        << m.precision << std::setw(8) << m.recall << std::setw(10) << m.f1 << std::setprecision(1)
        << std::setw(10) << m.support << '\n';
  }
  out << std::left << std::setw(18) << "Average" << std::right << std::setprecision(2) << std::setw(10)
      << report.avg_precision << std::setw(8) << report.avg_recall << std::setw(10) << report.avg_f1 << '\n';
  return out.str();
}

}  // namespace codetopic
