#include <gtest/gtest.h>

#include <random>

#include "codetopic/highlighter.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace codetopic;

namespace {

std::vector<CharVote> votes_from(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> counts) {
  std::vector<CharVote> v;
  for (auto [h, n] : counts) v.push_back(CharVote{h, n});
  return v;
}

std::vector<Span> spans_of(const std::vector<ScoredSpan>& s) {
  std::vector<Span> out;
  for (const auto& x : s) out.push_back(x.span);
  return out;
}

/// Offset of the first occurrence of needle in the document text.
std::size_t find(const SourceDocument& doc, std::u32string_view needle) {
  const auto pos = doc.content.find(needle);
  EXPECT_NE(pos, std::u32string::npos);
  return pos;
}

// One weight on the letter 'P' makes every window containing it positive.
MultiLabelModel marker_model() {
  MultiLabelModel model;
  model.tfidf = TfidfModel::fit(std::vector<std::u32string>{U"P", U"a"}, 1);
  TopicClassifier clf;
  clf.topic = Topic::OperatorOverload;
  clf.weights.assign(model.tfidf.size(), 0.0);
  clf.weights[static_cast<std::size_t>(model.tfidf.index_of(U"P"))] = 10.0;
  clf.bias = -0.5;
  model.per_topic[Topic::OperatorOverload] = clf;
  return model;
}

HighlightConfig raw_config(Topic t, std::size_t w, double threshold) {
  HighlightConfig cfg;
  cfg.window_size[topic_index(t)] = w;
  cfg.threshold = threshold;
  cfg.expand_boundaries = false;
  return cfg;
}

}  // namespace

TEST(Windows, Examples) {
  EXPECT_EQ(windows(5, 3), (std::vector<Span>{{0, 3}, {1, 4}, {2, 5}}));
  EXPECT_EQ(windows(2, 3), (std::vector<Span>{{0, 2}}));
  EXPECT_EQ(windows(3, 3), (std::vector<Span>{{0, 3}}));
  EXPECT_TRUE(windows(0, 3).empty());
  EXPECT_THROW(windows(5, 0), std::invalid_argument);
}

TEST(Windows, FeaturesMatchDirectTransform) {
  const MultiLabelModel& model = fixtures::synthetic_model();
  const auto files = fixtures::synthetic_files(1, 17, "wf");
  std::mt19937_64 rng(3);
  for (const auto& f : files) {
    const WindowFeatures wf(model.tfidf, f.doc.content);
    for (int i = 0; i < 20; ++i) {
      const std::size_t len = 1 + rng() % 60;
      if (len > f.doc.length()) continue;
      const std::size_t start = rng() % (f.doc.length() - len + 1);
      const SparseVector got = wf.features(Span{start, start + len});
      const SparseVector want = model.tfidf.transform(std::u32string_view(f.doc.content).substr(start, len));
      ASSERT_EQ(got.entries.size(), want.entries.size());
      for (std::size_t k = 0; k < got.entries.size(); ++k) {
        EXPECT_EQ(got.entries[k].first, want.entries[k].first);
        EXPECT_NEAR(got.entries[k].second, want.entries[k].second, 1e-12);
      }
    }
  }
}

TEST(Vote, MarkerExample) {
  std::u32string text(19, U'a');
  text[7] = U'P';
  const auto votes = vote(SourceDocument("d", text), marker_model(), Topic::OperatorOverload,
                          raw_config(Topic::OperatorOverload, 10, 0.8));
  ASSERT_EQ(votes.size(), 19u);
  EXPECT_EQ(votes[9], (CharVote{8, 10}));
  EXPECT_DOUBLE_EQ(votes[9].confidence(), 0.8);
  // Windows 0..7 contain the marker; the first character is only in window 0.
  EXPECT_EQ(votes[0], (CharVote{1, 1}));
  EXPECT_EQ(votes[18], (CharVote{0, 1}));
}

TEST(Vote, UntrainedTopicNeverVotes) {
  const auto votes =
      vote(SourceDocument("d", U"template <class T> T f();"), marker_model(), Topic::Templates, HighlightConfig{});
  for (const auto& v : votes) EXPECT_EQ(v.highlight_count, 0u);
}

TEST(Vote, MatchesBruteForceOnSyntheticSlices) {
  const MultiLabelModel& model = fixtures::synthetic_model();
  const auto files = fixtures::synthetic_files(1, 23, "vo");
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    const auto& content = files[rng() % files.size()].doc.content;
    const std::size_t len = std::min<std::size_t>(content.size(), 1 + rng() % 200);
    const std::size_t from = rng() % (content.size() - len + 1);
    const SourceDocument doc("s", content.substr(from, len));
    const Topic topic = kAllTopics[rng() % kTopicCount];
    const std::size_t w = 1 + rng() % 20;
    const auto votes = vote(doc, model, topic, raw_config(topic, w, 0.8));
    const auto tally = oracle::vote(doc.content, w, [&](const std::u32string& s) {
      return predict(model, s)[topic_index(topic)].decision;
    });
    for (std::size_t c = 0; c < doc.length(); ++c) {
      ASSERT_EQ(votes[c].highlight_count, tally.highlight_count[c]) << "round " << round << " char " << c;
      ASSERT_EQ(votes[c].window_num, tally.window_num[c]);
    }
  }
}

TEST(VoteProperties, CoverageClosedForm) {
  const MultiLabelModel model = marker_model();
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    const std::size_t w = 1 + rng() % 30;
    const std::size_t length = w + rng() % 100;
    const auto votes = vote(SourceDocument("c", std::u32string(length, U'a')), model, Topic::OperatorOverload,
                            raw_config(Topic::OperatorOverload, w, 0.8));
    for (std::size_t i = 0; i < length; ++i) {
      ASSERT_EQ(votes[i].window_num, oracle::coverage(i, length, w)) << "length " << length << " w " << w;
      ASSERT_LE(votes[i].highlight_count, votes[i].window_num);
    }
  }
}

TEST(VoteProperties, ShortDocumentIsOneWindow) {
  const auto votes = vote(SourceDocument("s", U"aPa"), marker_model(), Topic::OperatorOverload,
                          raw_config(Topic::OperatorOverload, 10, 0.8));
  for (const auto& v : votes) EXPECT_EQ(v, (CharVote{1, 1}));
}

TEST(Threshold, Examples) {
  const auto votes = votes_from({{1, 1}, {1, 1}, {0, 1}, {1, 1}});
  EXPECT_EQ(spans_of(threshold_spans(votes, 0.8)), (std::vector<Span>{{0, 2}, {3, 4}}));
  EXPECT_EQ(spans_of(threshold_spans(votes, 0.0)), (std::vector<Span>{{0, 4}}));
  EXPECT_TRUE(threshold_spans(votes_from({{0, 1}, {0, 2}}), 0.5).empty());
  EXPECT_TRUE(threshold_spans(std::vector<CharVote>{}, 0.5).empty());
}

TEST(Threshold, ExactlyAtThresholdQualifies) {
  const auto spans = threshold_spans(votes_from({{7, 10}, {8, 10}, {9, 10}, {8, 10}, {3, 10}}), 0.8);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].span, (Span{1, 4}));
  EXPECT_DOUBLE_EQ(spans[0].confidence, 0.8);
}

TEST(ThresholdProperties, Monotone) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 200; ++round) {
    std::vector<CharVote> votes;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 60); i < n; ++i) {
      const std::uint32_t num = 1 + rng() % 10;
      votes.push_back(CharVote{static_cast<std::uint32_t>(rng() % (num + 1)), num});
    }
    double t1 = static_cast<double>(rng() % 101) / 100.0;
    double t2 = static_cast<double>(rng() % 101) / 100.0;
    if (t1 > t2) std::swap(t1, t2);
    std::vector<bool> low(votes.size(), false);
    for (const auto& s : threshold_spans(votes, t1)) {
      for (std::size_t c = s.span.start; c < s.span.end; ++c) low[c] = true;
    }
    for (const auto& s : threshold_spans(votes, t2)) {
      EXPECT_GE(s.confidence, t2);
      for (std::size_t c = s.span.start; c < s.span.end; ++c) {
        ASSERT_TRUE(low[c]);
        ASSERT_GE(votes[c].confidence(), t2);
      }
    }
  }
}

TEST(Expand, OperatorSpanGrowsToFunction) {
  const SourceDocument doc("e", U"int operator+(const A& a, const A& b) {\n  return 1;\n}\nint x;\n");
  const std::size_t at = find(doc, U"operator+");
  const std::size_t close = find(doc, U"}\nint x") + 1;
  const auto out = expand_boundaries(doc, std::vector<Span>{{at, at + 9}});
  EXPECT_EQ(out, (std::vector<Span>{{0, close}}));
}

TEST(Expand, SpanOutsideBlocksUnchanged) {
  const SourceDocument doc("e", U"#include <x>\nusing namespace std;\nint main() { return 0; }\n");
  const Span s{find(doc, U"using"), find(doc, U"std;") + 4};
  EXPECT_EQ(expand_boundaries(doc, std::vector<Span>{s}), std::vector<Span>{s});
}

TEST(Expand, TwoSpansInOneFunctionMerge) {
  const SourceDocument doc("e", U"void f() {\n  int a = 1;\n  int b = 2;\n}\n");
  const auto out = expand_boundaries(doc, std::vector<Span>{{find(doc, U"a ="), find(doc, U"a =") + 1},
                                                            {find(doc, U"b ="), find(doc, U"b =") + 1}});
  EXPECT_EQ(out, (std::vector<Span>{{0, find(doc, U"}\n") + 1}}));
}

TEST(Expand, UnbalancedBracesPassThrough) {
  const SourceDocument doc("e", U"void f() {\n  int a = 1;\n");
  const Span s{find(doc, U"a ="), find(doc, U"a =") + 5};
  EXPECT_EQ(expand_boundaries(doc, std::vector<Span>{s}), std::vector<Span>{s});
}

TEST(Expand, MemberInsideClassGrowsToMemberOnly) {
  const SourceDocument doc("e", U"class A {\npublic:\n  bool operator==(const A&) const {\n    return true;\n  }\n  int x;\n};\n");
  const std::size_t at = find(doc, U"operator==");
  const auto out = expand_boundaries(doc, std::vector<Span>{{at, at + 4}});
  EXPECT_EQ(out, (std::vector<Span>{{find(doc, U"bool"), find(doc, U"  }\n") + 3}}));
}

TEST(ExpandProperties, ExtensiveAndIdempotent) {
  const auto files = fixtures::synthetic_files(2, 31, "ex");
  std::mt19937_64 rng(13);
  for (const auto& f : files) {
    for (int round = 0; round < 5; ++round) {
      std::vector<Span> spans;
      for (int i = 0, n = 1 + static_cast<int>(rng() % 4); i < n; ++i) {
        const std::size_t a = rng() % f.doc.length();
        spans.push_back({a, std::min(f.doc.length(), a + 1 + rng() % 40)});
      }
      const auto once = expand_boundaries(f.doc, std::span<const Span>(spans));
      for (const auto& s : spans) {
        EXPECT_TRUE(std::any_of(once.begin(), once.end(), [&](const Span& o) { return o.contains(s); }));
      }
      EXPECT_EQ(expand_boundaries(f.doc, std::span<const Span>(once)), once);
      EXPECT_TRUE(std::is_sorted(once.begin(), once.end()));
      for (std::size_t i = 1; i < once.size(); ++i) EXPECT_LT(once[i - 1].end, once[i].start);
    }
  }
}

TEST(Highlight, OperatorOverloadFixture) {
  const SourceDocument doc("fx.cpp",
                           U"#include <iostream>\n\nstruct Money {\n    long cents;\n};\n\n"
                           U"Money operator+(Money a, Money b) {\n    return Money{a.cents + b.cents};\n}\n\n"
                           U"int main() {\n    Money m = Money{1} + Money{2};\n    std::cout << m.cents << '\\n';\n"
                           U"    return 0;\n}\n");
  HighlightConfig cfg;
  cfg.window_size[topic_index(Topic::OperatorOverload)] = 20;
  const auto out = highlight(doc, fixtures::synthetic_model(), TopicSet{Topic::OperatorOverload}, cfg);
  ASSERT_EQ(out.size(), 1u);
  const Span function{find(doc, U"Money operator+"), find(doc, U"}\n\nint main") + 1};
  EXPECT_EQ(out[0].topic, Topic::OperatorOverload);
  EXPECT_TRUE(out[0].span.contains(function)) << out[0].span.start << ".." << out[0].span.end;
  EXPECT_GE(out[0].confidence, cfg.threshold);
}

TEST(Highlight, EmptyInputs) {
  const auto& model = fixtures::synthetic_model();
  EXPECT_TRUE(highlight(SourceDocument("e", U""), model, TopicSet::from_bits(0x1FF), {}).empty());
  EXPECT_TRUE(highlight(SourceDocument("e", U"int operator+(A, A);"), model, TopicSet{}, {}).empty());
}

TEST(Highlight, SortedByTopicThenStartAndDeterministic) {
  const auto& model = fixtures::synthetic_model();
  for (const auto& f : fixtures::synthetic_files(1, 41, "hs")) {
    const auto a = highlight(f.doc, model, TopicSet::from_bits(0x1FF), {});
    EXPECT_EQ(a, highlight(f.doc, model, TopicSet::from_bits(0x1FF), {}));
    for (std::size_t i = 1; i < a.size(); ++i) {
      EXPECT_TRUE(a[i - 1].topic < a[i].topic ||
                  (a[i - 1].topic == a[i].topic && a[i - 1].span.start < a[i].span.start));
    }
    for (const auto& h : a) {
      EXPECT_LE(h.span.end, f.doc.length());
      EXPECT_GE(h.confidence, 0.8);
      EXPECT_LE(h.confidence, 1.0);
    }
  }
}

TEST(HighlightConfigTest, Validation) {
  HighlightConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.threshold = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = HighlightConfig{};
  cfg.window_size[0] = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_EQ(HighlightConfig{}.window_for(Topic::OperatorOverload), 20u);
  EXPECT_EQ(HighlightConfig{}.window_for(Topic::VirtualFunction), 40u);
}
