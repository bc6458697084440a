#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "codetopic/corpus.hpp"
#include "codetopic/lexer.hpp"

namespace codetopic {
namespace {

// C++ keywords, alternative tokens and a handful of contextual words.
constexpr auto kReserved = std::to_array<std::u32string_view>({
    U"alignas", U"alignof", U"and", U"and_eq", U"asm", U"auto", U"bitand", U"bitor", U"bool",
    U"break", U"case", U"catch", U"char", U"char8_t", U"char16_t", U"char32_t", U"class",
    U"compl", U"concept", U"const", U"consteval", U"constexpr", U"constinit", U"const_cast",
    U"continue", U"co_await", U"co_return", U"co_yield", U"decltype", U"default", U"delete",
    U"do", U"double", U"dynamic_cast", U"else", U"enum", U"explicit", U"export", U"extern",
    U"false", U"float", U"for", U"friend", U"goto", U"if", U"inline", U"int", U"long",
    U"mutable", U"namespace", U"new", U"noexcept", U"not", U"not_eq", U"nullptr", U"operator",
    U"or", U"or_eq", U"private", U"protected", U"public", U"register", U"reinterpret_cast",
    U"requires", U"return", U"short", U"signed", U"sizeof", U"static", U"static_assert",
    U"static_cast", U"struct", U"switch", U"template", U"this", U"thread_local", U"throw",
    U"true", U"try", U"typedef", U"typeid", U"typename", U"union", U"unsigned", U"using",
    U"virtual", U"void", U"volatile", U"wchar_t", U"while", U"xor", U"xor_eq", U"override",
    U"final", U"import", U"module", U"main", U"std", U"size_t", U"int64_t", U"uint64_t",
    U"int32_t", U"uint32_t", U"nullptr_t", U"NULL",
});

// Library names that appear unqualified after `using namespace std;`.
constexpr auto kLibraryNames = std::to_array<std::u32string_view>({
    U"cout", U"cin", U"cerr", U"endl", U"string", U"vector", U"map", U"set", U"pair",
    U"make_pair", U"queue", U"stack", U"deque", U"list", U"priority_queue", U"unordered_map",
    U"unordered_set", U"multiset", U"multimap", U"array", U"bitset", U"sort", U"min", U"max",
    U"swap", U"abs", U"sqrt", U"pow", U"printf", U"scanf", U"puts", U"getline", U"ostream",
    U"istream", U"iostream", U"exception", U"runtime_error", U"logic_error", U"out_of_range",
    U"invalid_argument", U"what", U"begin", U"end", U"size", U"push_back", U"pop_back",
    U"emplace_back", U"first", U"second", U"reverse", U"fill", U"memset", U"unique_ptr",
    U"shared_ptr", U"make_unique", U"make_shared", U"move", U"forward", U"to_string", U"stoi",
    U"accumulate", U"lower_bound", U"upper_bound", U"greater",
});

constexpr auto kWordList = std::to_array<std::u32string_view>({
    U"alpha",  U"bravo",  U"cedar",  U"delta", U"ember",  U"fjord", U"grove", U"harbor",
    U"iris",   U"juniper", U"kelp",  U"lumen", U"maple",  U"nectar", U"onyx", U"pebble",
    U"quartz", U"raven",  U"sable",  U"tundra", U"umber", U"vale",  U"willow", U"xenon",
    U"yarrow", U"zephyr", U"amber",  U"birch", U"coral",  U"dune",  U"elm",   U"flint",
});

constexpr auto kComments = std::to_array<std::u32string_view>({
    U"/* note */", U"/* step */", U"/* see above */", U"/* keep */", U"/* check */", U"/* done */",
});

template <std::size_t N>
bool listed(const std::array<std::u32string_view, N>& list, std::u32string_view word) {
  return std::find(list.begin(), list.end(), word) != list.end();
}

bool pure_whitespace(std::u32string_view gap) {
  return std::all_of(gap.begin(), gap.end(), [](char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r';
  });
}

std::u32string perturb_gap(std::u32string_view gap, std::mt19937_64& rng) {
  const auto newlines = static_cast<std::size_t>(std::count(gap.begin(), gap.end(), U'\n'));
  std::uniform_int_distribution<int> spaces(1, 3);
  if (newlines == 0) return std::u32string(static_cast<std::size_t>(spaces(rng)), U' ');
  std::u32string out(newlines, U'\n');
  std::uniform_int_distribution<int> indent(0, 8);
  out.append(static_cast<std::size_t>(indent(rng)), U' ');
  return out;
}

}  // namespace

std::string rewrite_snippet(std::string_view text, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::u32string source = decode_utf8(text);
  const LexedSource src(source);
  const std::size_t n = src.size();

  // Identifiers seen in a position tied to something outside the snippet.
  std::set<std::u32string> pinned;
  std::set<std::u32string> present;
  for (std::size_t i = 0; i < n; ++i) {
    if (!src.is_ident(i)) continue;
    const auto word = std::u32string(src.spelling(i));
    present.insert(word);
    const bool after_member = i > 0 && (src.is_punct(i - 1, U'.') ||
                                        (src.is_punct(i - 1, U'>') && i > 1 && src.is_punct(i - 2, U'-')));
    const bool after_scope = i > 1 && src.is_punct(i - 1, U':') && src.is_punct(i - 2, U':');
    if (after_member || after_scope || word.starts_with(U"__")) pinned.insert(word);
  }

  std::map<std::u32string, std::u32string> renames;
  std::set<std::u32string> used = present;
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::size_t> pick(0, kWordList.size() - 1);
  for (const auto& word : present) {
    if (pinned.count(word) != 0 || listed(kReserved, word) || listed(kLibraryNames, word)) continue;
    if (!coin(rng)) continue;
    std::u32string name(kWordList[pick(rng)]);
    for (int suffix = 2; used.count(name) != 0; ++suffix) {
      name = std::u32string(kWordList[pick(rng)]) + decode_utf8(std::to_string(suffix));
    }
    used.insert(name);
    renames.emplace(word, std::move(name));
  }

  std::bernoulli_distribution add_comment(0.25);
  std::bernoulli_distribution reshape(0.5);
  std::uniform_int_distribution<std::size_t> comment_pick(0, kComments.size() - 1);
  bool commented = false;

  std::u32string out;
  out.reserve(source.size() + 32);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Token& tok = src[i];
    const std::u32string_view gap = std::u32string_view(source).substr(cursor, tok.begin - cursor);
    if (i > 0 && !gap.empty() && pure_whitespace(gap) && reshape(rng)) {
      out += perturb_gap(gap, rng);
    } else if (i > 0 && gap.empty() && reshape(rng) &&
               (src[i - 1].kind == Token::Kind::Punct) != (tok.kind == Token::Kind::Punct) &&
               (src[i - 1].kind == Token::Kind::Punct || tok.kind == Token::Kind::Punct)) {
      out += U' ';
    } else {
      out += gap;
    }
    const std::u32string_view spelling = src.spelling(i);
    if (tok.kind == Token::Kind::Identifier) {
      auto it = renames.find(std::u32string(spelling));
      out += it != renames.end() ? std::u32string_view(it->second) : spelling;
    } else {
      out += spelling;
    }
    const bool boundary = src.is_punct(i, U';') || src.is_punct(i, U'{') || src.is_punct(i, U'}');
    if (boundary && add_comment(rng)) {
      out += U' ';
      out += kComments[comment_pick(rng)];
      commented = true;
    }
    cursor = tok.end;
  }
  out += std::u32string_view(source).substr(cursor);
  if (!commented) {
    out += U' ';
    out += kComments[comment_pick(rng)];
  }
  return encode_utf8(out);
}

std::vector<LabeledSnippet> augment(std::span<const LabeledSnippet> snippets,
                                    std::size_t target_per_topic, std::uint64_t seed) {
  if (target_per_topic == 0) throw std::invalid_argument("augment: target_per_topic must be positive");
  std::vector<LabeledSnippet> out(snippets.begin(), snippets.end());

  std::array<std::size_t, kTopicCount> counts{};
  for (const auto& s : snippets) {
    for (Topic t : s.labels.to_vector()) ++counts[topic_index(t)];
  }

  std::mt19937_64 rng(seed);
  for (Topic t : kAllTopics) {
    if (counts[topic_index(t)] >= target_per_topic) continue;
    std::vector<std::size_t> sources;
    for (std::size_t i = 0; i < snippets.size(); ++i) {
      if (snippets[i].labels == TopicSet{t}) sources.push_back(i);
    }
    if (sources.empty()) {
      for (std::size_t i = 0; i < snippets.size(); ++i) {
        if (snippets[i].labels.contains(t)) sources.push_back(i);
      }
    }
    if (sources.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
    while (counts[topic_index(t)] < target_per_topic) {
      const LabeledSnippet& src = snippets[sources[pick(rng)]];
      out.push_back(LabeledSnippet{rewrite_snippet(src.text, rng()), src.labels});
      for (Topic u : src.labels.to_vector()) ++counts[topic_index(u)];
    }
  }
  return out;
}

}  // namespace codetopic
