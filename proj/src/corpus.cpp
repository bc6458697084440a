#include "codetopic/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "codetopic/lexer.hpp"

namespace codetopic {
namespace {

constexpr std::u32string_view kOperatorChars = U"+-*/%^&|~!=<>,";

bool is_operator_punct(const LexedSource& src, std::size_t tok) {
  return tok < src.size() && src[tok].kind == Token::Kind::Punct &&
         kOperatorChars.find(src.text()[src[tok].begin]) != std::u32string_view::npos;
}

/// `::` starting at tok.
bool is_scope(const LexedSource& src, std::size_t tok) {
  return src.is_punct(tok, U':') && src.adjacent(tok) && src.is_punct(tok + 1, U':');
}

/// First `{` or `;` at parenthesis/bracket depth 0 from tok onward.
std::size_t find_body_or_semicolon(const LexedSource& src, std::size_t tok) {
  int depth = 0;
  for (std::size_t k = tok; k < src.size(); ++k) {
    if (src.is_punct(k, U'(') || src.is_punct(k, U'[')) {
      ++depth;
    } else if (src.is_punct(k, U')') || src.is_punct(k, U']')) {
      if (depth > 0) --depth;
    } else if (depth == 0 && (src.is_punct(k, U'{') || src.is_punct(k, U';'))) {
      return k;
    } else if (src.is_punct(k, U'}')) {
      return kNoToken;  // left the enclosing scope
    }
  }
  return kNoToken;
}

/// End offset of the declaration/definition terminating at `{`/`;` token k.
std::optional<std::size_t> terminator_end(const LexedSource& src, std::size_t k) {
  if (k == kNoToken) return std::nullopt;
  if (src.is_punct(k, U';')) return src[k].end;
  const std::size_t close = src.brace_partner(k);
  if (close == kNoToken) return std::nullopt;
  return src[close].end;
}

std::optional<Span> declaration_span(const LexedSource& src, std::size_t anchor, std::size_t from) {
  const auto end = terminator_end(src, find_body_or_semicolon(src, from));
  if (!end) return std::nullopt;
  return Span{src[src.statement_start(anchor)].begin, *end};
}

/// Matching `>` for the `<` at tok, or kNoToken.
std::size_t match_angle(const LexedSource& src, std::size_t tok) {
  int angle = 0;
  int paren = 0;
  for (std::size_t k = tok; k < src.size(); ++k) {
    if (src.is_punct(k, U'(')) ++paren;
    else if (src.is_punct(k, U')')) --paren;
    else if (src.is_punct(k, U'{') || src.is_punct(k, U';') || src.is_punct(k, U'}')) return kNoToken;
    else if (paren == 0 && src.is_punct(k, U'<')) ++angle;
    else if (paren == 0 && src.is_punct(k, U'>')) {
      if (k > 0 && src.is_punct(k - 1, U'-') && src.adjacent(k - 1)) continue;  // ->
      if (--angle == 0) return k;
    }
  }
  return kNoToken;
}

// --- one function per topic rule -------------------------------------------

void match_operator_overload(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_ident(i, U"operator")) continue;
    if (i > 0 && (src.is_punct(i - 1, U'.') ||
                  (src.is_punct(i - 1, U'>') && i > 1 && src.is_punct(i - 2, U'-')))) {
      continue;  // explicit call through an object
    }
    std::size_t j = i + 1;
    std::size_t params = kNoToken;
    if (src.is_punct(j, U'(') && src.is_punct(j + 1, U')') && src.is_punct(j + 2, U'(')) {
      params = j + 2;
    } else if (src.is_punct(j, U'[') && src.is_punct(j + 1, U']') && src.is_punct(j + 2, U'(')) {
      params = j + 2;
    } else if (src.is_ident(j, U"new") || src.is_ident(j, U"delete")) {
      ++j;
      if (src.is_punct(j, U'[') && src.is_punct(j + 1, U']')) j += 2;
      if (src.is_punct(j, U'(')) params = j;
    } else if (src.is_ident(j, U"co_await")) {
      if (src.is_punct(j + 1, U'(')) params = j + 1;
    } else {
      std::size_t k = j;
      while (k < j + 3 && is_operator_punct(src, k)) ++k;
      if (k > j && src.is_punct(k, U'(')) params = k;
    }
    if (params == kNoToken) continue;
    const std::size_t close = src.paren_partner(params);
    if (close == kNoToken) continue;
    if (auto span = declaration_span(src, i, close + 1)) out.push_back(*span);
  }
}

void match_friend(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_ident(i, U"friend")) continue;
    if (auto span = declaration_span(src, i, i + 1)) out.push_back(*span);
  }
}

void match_inline(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_ident(i, U"inline") || src.is_ident(i + 1, U"namespace")) continue;
    // The declarator's parameter list must come before any `=`, `{` or `;`.
    std::size_t params = kNoToken;
    for (std::size_t k = i + 1; k < src.size(); ++k) {
      if (src.is_punct(k, U'(')) {
        params = k;
        break;
      }
      if (src.is_punct(k, U'=') || src.is_punct(k, U'{') || src.is_punct(k, U';') ||
          src.is_punct(k, U'}')) {
        break;
      }
    }
    if (params == kNoToken || src.paren_partner(params) == kNoToken) continue;
    const std::size_t term = find_body_or_semicolon(src, src.paren_partner(params) + 1);
    if (term == kNoToken || !src.is_punct(term, U'{')) continue;  // declaration only
    if (auto end = terminator_end(src, term)) {
      out.push_back(Span{src[src.statement_start(i)].begin, *end});
    }
  }
}

void match_templates(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_ident(i, U"template") || !src.is_punct(i + 1, U'<')) continue;
    const std::size_t close = match_angle(src, i + 1);
    if (close == kNoToken) continue;
    if (auto span = declaration_span(src, i, close + 1)) out.push_back(*span);
  }
}

void match_virtual(const LexedSource& src, const std::vector<BraceBlock>& blocks,
                   std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_ident(i, U"virtual")) continue;
    const std::size_t body = src.enclosing_brace(i);
    if (body == kNoToken) continue;
    auto it = std::find_if(blocks.begin(), blocks.end(),
                           [&](const BraceBlock& b) { return b.open_token == body; });
    if (it == blocks.end() || it->kind != BraceBlock::Kind::Class) continue;
    const std::size_t start = src.statement_start(i);
    bool in_base_clause = false;
    for (std::size_t k = start; k < i; ++k) {
      if (src.is_ident(k, U"class") || src.is_ident(k, U"struct")) in_base_clause = true;
    }
    if (in_base_clause) continue;
    if (auto span = declaration_span(src, i, i + 1)) out.push_back(*span);
  }
}

/// For `class|struct NAME [final]` at tok, the token after the head, or kNoToken.
std::size_t class_head_end(const LexedSource& src, std::size_t tok) {
  if (!(src.is_ident(tok, U"class") || src.is_ident(tok, U"struct"))) return kNoToken;
  if (tok > 0 && src.is_ident(tok - 1, U"enum")) return kNoToken;
  std::size_t k = tok + 1;
  if (!src.is_ident(k)) return kNoToken;
  ++k;
  if (src.is_ident(k, U"final")) ++k;
  return k;
}

void match_inheritance(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t k = class_head_end(src, i);
    if (k == kNoToken || !src.is_punct(k, U':') || is_scope(src, k)) continue;
    const std::size_t base = k + 1;
    if (!(src.is_ident(base) || is_scope(src, base))) continue;
    const std::size_t term = find_body_or_semicolon(src, base);
    if (term == kNoToken || !src.is_punct(term, U'{')) continue;
    if (auto end = terminator_end(src, term)) {
      out.push_back(Span{src[src.statement_start(i)].begin, *end});
    }
  }
}

void match_classes(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t k = class_head_end(src, i);
    if (k == kNoToken || !src.is_punct(k, U'{')) continue;
    if (auto end = terminator_end(src, k)) {
      out.push_back(Span{src[src.statement_start(i)].begin, *end});
    }
  }
}

void match_namespaces(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_ident(i, U"namespace")) continue;
    if (i > 0 && src.is_ident(i - 1, U"using")) {
      const std::size_t term = find_body_or_semicolon(src, i + 1);
      if (term != kNoToken && src.is_punct(term, U';')) out.push_back(Span{src[i - 1].begin, src[term].end});
      continue;
    }
    std::size_t k = i + 1;
    if (!src.is_ident(k)) continue;
    ++k;
    while (is_scope(src, k) && src.is_ident(k + 2)) k += 3;
    if (!src.is_punct(k, U'{')) continue;
    if (auto end = terminator_end(src, k)) {
      out.push_back(Span{src[src.statement_start(i)].begin, *end});
    }
  }
}

void match_try_catch(const LexedSource& src, std::vector<Span>& out) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_ident(i, U"try") || !src.is_punct(i + 1, U'{')) continue;
    std::size_t close = src.brace_partner(i + 1);
    if (close == kNoToken) continue;
    bool has_handler = false;
    bool broken = false;
    while (src.is_ident(close + 1, U"catch") && src.is_punct(close + 2, U'(')) {
      const std::size_t rparen = src.paren_partner(close + 2);
      if (rparen == kNoToken || !src.is_punct(rparen + 1, U'{')) {
        broken = true;
        break;
      }
      const std::size_t handler_close = src.brace_partner(rparen + 1);
      if (handler_close == kNoToken) {
        broken = true;
        break;
      }
      close = handler_close;
      has_handler = true;
    }
    if (broken || !has_handler) continue;
    out.push_back(Span{src[i].begin, src[close].end});
  }
}

std::vector<Span> match_with(const LexedSource& src, const std::vector<BraceBlock>& blocks, Topic topic) {
  std::vector<Span> spans;
  switch (topic) {
    case Topic::Classes: match_classes(src, spans); break;
    case Topic::Friend: match_friend(src, spans); break;
    case Topic::Inheritance: match_inheritance(src, spans); break;
    case Topic::Inline: match_inline(src, spans); break;
    case Topic::Namespaces: match_namespaces(src, spans); break;
    case Topic::OperatorOverload: match_operator_overload(src, spans); break;
    case Topic::Templates: match_templates(src, spans); break;
    case Topic::TryCatch: match_try_catch(src, spans); break;
    case Topic::VirtualFunction: match_virtual(src, blocks, spans); break;
  }
  return spans;
}

std::vector<Span> merge_overlapping(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<Span> merged;
  for (const Span& s : spans) {
    if (s.start >= s.end) continue;
    if (!merged.empty() && s.start < merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

}  // namespace

std::vector<Span> match_topic(const SourceDocument& doc, Topic topic) {
  const LexedSource src(doc.content);
  return match_with(src, brace_blocks(src), topic);
}

std::vector<GroundTruthAnnotation> extract_annotations(const SourceDocument& doc, const RuleSet& rules) {
  const LexedSource src(doc.content);
  const auto blocks = brace_blocks(src);
  std::vector<GroundTruthAnnotation> out;
  for (Topic t : kAllTopics) {
    if (!rules.enabled(t)) continue;
    for (const Span& s : merge_overlapping(match_with(src, blocks, t))) {
      out.push_back(GroundTruthAnnotation{doc.doc_id, t, s});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.span.start != b.span.start ? a.span.start < b.span.start : a.topic < b.topic;
  });
  return out;
}

std::vector<LabeledSnippet> extract_snippets(std::span<const SourceDocument> corpus, const RuleSet& rules) {
  std::vector<LabeledSnippet> out;
  for (const SourceDocument& doc : corpus) {
    for (const auto& ann : extract_annotations(doc, rules)) {
      const auto text = std::u32string_view(doc.content).substr(ann.span.start, ann.span.length());
      out.push_back(LabeledSnippet{encode_utf8(text), TopicSet{ann.topic}});
    }
  }
  return out;
}

std::vector<LabeledSnippet> background_snippets(std::span<const SourceDocument> corpus,
                                                std::span<const GroundTruthAnnotation> annotations,
                                                std::size_t per_document, std::size_t length,
                                                std::uint64_t seed) {
  std::vector<LabeledSnippet> out;
  if (per_document == 0 || length == 0) return out;
  std::mt19937_64 rng(seed);
  for (const SourceDocument& doc : corpus) {
    if (doc.length() < length) continue;
    std::vector<Span> busy;
    for (const auto& a : annotations) {
      if (a.doc_id == doc.doc_id) busy.push_back(a.span);
    }
    std::vector<std::size_t> free_starts;
    for (std::size_t s = 0; s + length <= doc.length(); ++s) {
      const Span w{s, s + length};
      if (std::none_of(busy.begin(), busy.end(), [&](const Span& b) { return b.intersects(w); })) {
        free_starts.push_back(s);
      }
    }
    // Draw non-overlapping windows.
    std::shuffle(free_starts.begin(), free_starts.end(), rng);
    std::vector<Span> taken;
    for (std::size_t s : free_starts) {
      if (taken.size() == per_document) break;
      const Span w{s, s + length};
      if (std::any_of(taken.begin(), taken.end(), [&](const Span& t) { return t.intersects(w); })) continue;
      taken.push_back(w);
    }
    std::sort(taken.begin(), taken.end());
    for (const Span& w : taken) {
      out.push_back(LabeledSnippet{encode_utf8(std::u32string_view(doc.content).substr(w.start, w.length())), {}});
    }
  }
  return out;
}

LoadedCorpus load_corpus_dir(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw CorpusError("corpus directory not found: " + root.string());

  std::vector<std::pair<std::string, fs::path>> files;
  for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    const fs::path& p = it->path();
    if (p.extension() != ".cpp") continue;
    std::error_code dir_ec;
    if (it->is_directory(dir_ec)) continue;
    files.emplace_back(fs::relative(p, root).generic_string(), p);
  }
  std::sort(files.begin(), files.end());

  LoadedCorpus corpus;
  for (const auto& [doc_id, path] : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      corpus.skipped.push_back(doc_id);
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
      corpus.skipped.push_back(doc_id);
      continue;
    }
    std::size_t replaced = 0;
    corpus.documents.emplace_back(doc_id, decode_utf8(buf.str(), &replaced));
    corpus.invalid_utf8 += replaced;
  }
  return corpus;
}

}  // namespace codetopic
