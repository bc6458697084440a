#include "codetopic/lexer.hpp"

#include <algorithm>
#include <array>

namespace codetopic {
namespace {

bool is_ident_start(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c == U'_' || c >= 0x80;
}
bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool is_ident_char(char32_t c) { return is_ident_start(c) || is_digit(c); }
bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v';
}

bool is_literal_prefix(std::u32string_view s) {
  static constexpr std::array<std::u32string_view, 9> kPrefixes = {
      U"u8", U"u", U"U", U"L", U"R", U"u8R", U"uR", U"UR", U"LR"};
  return std::find(kPrefixes.begin(), kPrefixes.end(), s) != kPrefixes.end();
}

constexpr std::array<std::u32string_view, 7> kTrailingQualifiers = {
    U"const", U"volatile", U"override", U"final", U"noexcept", U"mutable", U"throw"};

}  // namespace

LexedSource::LexedSource(std::u32string_view text) : text_(text), mask_(text.size(), LexClass::Code) {
  scan();
  match_pairs();
}

void LexedSource::scan() {
  const std::u32string_view s = text_;
  const std::size_t n = s.size();
  std::size_t i = 0;
  bool line_has_content = false;  // non-whitespace seen on the current line
  bool in_directive = false;
  bool directive_seen = false;    // a directive ended since the last token

  auto emit = [&](Token::Kind kind, std::size_t b, std::size_t e) {
    if (in_directive) return;
    tokens_.push_back(Token{kind, b, e, directive_seen});
    directive_seen = false;
  };
  auto fill = [&](std::size_t b, std::size_t e, LexClass c) {
    std::fill(mask_.begin() + static_cast<std::ptrdiff_t>(b), mask_.begin() + static_cast<std::ptrdiff_t>(e), c);
  };
  // Quoted literal starting at the quote character q; returns the end offset.
  auto scan_quoted = [&](std::size_t q) {
    const char32_t quote = s[q];
    std::size_t j = q + 1;
    while (j < n && s[j] != quote && s[j] != U'\n') {
      if (s[j] == U'\\' && j + 1 < n) ++j;
      ++j;
    }
    return j < n && s[j] == quote ? j + 1 : j;
  };
  auto scan_raw = [&](std::size_t q) {
    // q points at the opening quote of R"delim( ... )delim"
    std::size_t j = q + 1;
    std::u32string delim;
    while (j < n && s[j] != U'(' && s[j] != U'\n' && delim.size() < 16) delim.push_back(s[j++]);
    if (j >= n || s[j] != U'(') return scan_quoted(q);
    std::u32string closing = U")" + delim + U"\"";
    const std::size_t found = s.find(closing, j + 1);
    return found == std::u32string_view::npos ? n : found + closing.size();
  };

  while (i < n) {
    const char32_t c = s[i];
    if (c == U'\n') {
      if (in_directive) {
        std::size_t k = i;
        while (k > 0 && s[k - 1] == U'\r') --k;
        if (!(k > 0 && s[k - 1] == U'\\')) {
          in_directive = false;
          directive_seen = true;
        }
      }
      line_has_content = false;
      ++i;
      continue;
    }
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == U'/' && i + 1 < n && s[i + 1] == U'/') {
      std::size_t j = i;
      while (j < n && s[j] != U'\n') ++j;
      fill(i, j, LexClass::LineComment);
      i = j;
      continue;
    }
    if (c == U'/' && i + 1 < n && s[i + 1] == U'*') {
      const std::size_t found = s.find(U"*/", i + 2);
      const std::size_t j = found == std::u32string_view::npos ? n : found + 2;
      fill(i, j, LexClass::BlockComment);
      i = j;
      continue;
    }
    const bool first_on_line = !line_has_content;
    line_has_content = true;
    if (c == U'#' && first_on_line && !in_directive) {
      in_directive = true;
      ++i;
      continue;
    }
    if (c == U'"') {
      const std::size_t j = scan_quoted(i);
      fill(i, j, LexClass::String);
      emit(Token::Kind::String, i, j);
      i = j;
      continue;
    }
    if (c == U'\'') {
      const std::size_t j = scan_quoted(i);
      fill(i, j, LexClass::CharLiteral);
      emit(Token::Kind::Char, i, j);
      i = j;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < n && is_ident_char(s[j])) ++j;
      const std::u32string_view word = s.substr(i, j - i);
      if (j < n && (s[j] == U'"' || s[j] == U'\'') && is_literal_prefix(word)) {
        const bool raw = s[j] == U'"' && word.back() == U'R';
        const std::size_t e = raw ? scan_raw(j) : scan_quoted(j);
        const bool is_char = s[j] == U'\'';
        fill(i, e, is_char ? LexClass::CharLiteral : LexClass::String);
        emit(is_char ? Token::Kind::Char : Token::Kind::String, i, e);
        i = e;
        continue;
      }
      emit(Token::Kind::Identifier, i, j);
      i = j;
      continue;
    }
    if (is_digit(c) || (c == U'.' && i + 1 < n && is_digit(s[i + 1]))) {
      std::size_t j = i + 1;
      while (j < n) {
        const char32_t d = s[j];
        if (is_ident_char(d) || d == U'.') {
          ++j;
        } else if (d == U'\'' && j + 1 < n && is_ident_char(s[j + 1])) {
          j += 2;  // digit separator
        } else if ((d == U'+' || d == U'-') &&
                   (s[j - 1] == U'e' || s[j - 1] == U'E' || s[j - 1] == U'p' || s[j - 1] == U'P')) {
          ++j;
        } else {
          break;
        }
      }
      emit(Token::Kind::Number, i, j);
      i = j;
      continue;
    }
    emit(Token::Kind::Punct, i, i + 1);
    ++i;
  }
}

void LexedSource::match_pairs() {
  const std::size_t n = tokens_.size();
  brace_partner_.assign(n, kNoToken);
  paren_partner_.assign(n, kNoToken);
  enclosing_.assign(n, kNoToken);
  std::vector<std::size_t> braces;
  std::vector<std::size_t> parens;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_punct(i, U'}')) {
      if (!braces.empty()) {
        brace_partner_[i] = braces.back();
        brace_partner_[braces.back()] = i;
        braces.pop_back();
      }
      enclosing_[i] = braces.empty() ? kNoToken : braces.back();
      continue;
    }
    enclosing_[i] = braces.empty() ? kNoToken : braces.back();
    if (is_punct(i, U'{')) {
      braces.push_back(i);
    } else if (is_punct(i, U'(')) {
      parens.push_back(i);
    } else if (is_punct(i, U')') && !parens.empty()) {
      paren_partner_[i] = parens.back();
      paren_partner_[parens.back()] = i;
      parens.pop_back();
    }
  }
}

std::u32string_view LexedSource::spelling(std::size_t tok) const {
  const Token& t = tokens_[tok];
  return text_.substr(t.begin, t.end - t.begin);
}

bool LexedSource::is_ident(std::size_t tok, std::u32string_view word) const {
  return tok < tokens_.size() && tokens_[tok].kind == Token::Kind::Identifier && spelling(tok) == word;
}

bool LexedSource::is_ident(std::size_t tok) const {
  return tok < tokens_.size() && tokens_[tok].kind == Token::Kind::Identifier;
}

bool LexedSource::is_punct(std::size_t tok, char32_t c) const {
  return tok < tokens_.size() && tokens_[tok].kind == Token::Kind::Punct && text_[tokens_[tok].begin] == c;
}

bool LexedSource::adjacent(std::size_t tok) const {
  return tok + 1 < tokens_.size() && tokens_[tok].end == tokens_[tok + 1].begin;
}

std::size_t LexedSource::statement_start(std::size_t tok) const {
  std::size_t i = tok;
  while (i > 0) {
    if (tokens_[i].after_directive) break;
    const std::size_t prev = i - 1;
    if (is_punct(prev, U';') || is_punct(prev, U'{') || is_punct(prev, U'}')) break;
    if (is_punct(prev, U':') && prev > 0 &&
        (is_ident(prev - 1, U"public") || is_ident(prev - 1, U"private") ||
         is_ident(prev - 1, U"protected"))) {
      break;
    }
    if (is_punct(prev, U')') && paren_partner_[prev] != kNoToken) {
      i = paren_partner_[prev];
      continue;
    }
    i = prev;
  }
  return i;
}

std::size_t LexedSource::first_token_at_or_after(std::size_t offset) const {
  auto it = std::lower_bound(tokens_.begin(), tokens_.end(), offset,
                             [](const Token& t, std::size_t off) { return t.begin < off; });
  return static_cast<std::size_t>(it - tokens_.begin());
}

std::vector<BraceBlock> brace_blocks(const LexedSource& src) {
  std::vector<BraceBlock> blocks;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src.is_punct(i, U'{')) continue;
    const std::size_t close = src.brace_partner(i);
    if (close == kNoToken) continue;

    BraceBlock block;
    block.open = src[i].begin;
    block.close = src[close].begin;
    block.open_token = i;
    const std::size_t start = src.statement_start(i);
    block.header_start = src[start].begin;

    // Walk back over trailing qualifiers to the token that introduces the body.
    std::size_t p = i;
    while (p > start) {
      const std::size_t prev = p - 1;
      const bool qualifier =
          (src.is_ident(prev) &&
           std::find(kTrailingQualifiers.begin(), kTrailingQualifiers.end(), src.spelling(prev)) !=
               kTrailingQualifiers.end()) ||
          src.is_punct(prev, U'&');
      if (qualifier) {
        p = prev;
        continue;
      }
      // noexcept(...) / throw(...)
      if (src.is_punct(prev, U')') && src.paren_partner(prev) != kNoToken) {
        const std::size_t open = src.paren_partner(prev);
        if (open > 0 && (src.is_ident(open - 1, U"noexcept") || src.is_ident(open - 1, U"throw"))) {
          p = open - 1;
          continue;
        }
      }
      break;
    }

    bool has_trailing_return = false;
    bool has_class_key = false;
    bool has_enum = false;
    bool has_namespace = false;
    for (std::size_t k = start; k < i; ++k) {
      if (src.is_punct(k, U'-') && src.adjacent(k) && src.is_punct(k + 1, U'>') && k > start &&
          src.is_punct(k - 1, U')')) {
        has_trailing_return = true;
      }
      if (src.is_ident(k, U"class") || src.is_ident(k, U"struct") || src.is_ident(k, U"union")) {
        has_class_key = true;
      }
      if (src.is_ident(k, U"enum")) has_enum = true;
      if (src.is_ident(k, U"namespace")) has_namespace = true;
    }

    if (p > 0 && src.is_punct(p - 1, U')')) {
      const std::size_t open = src.paren_partner(p - 1);
      block.kind = (open != kNoToken && open > 0 && src.is_ident(open - 1, U"catch"))
                       ? BraceBlock::Kind::Catch
                       : BraceBlock::Kind::Function;
    } else if (p > 0 && src.is_ident(p - 1, U"try")) {
      block.kind = BraceBlock::Kind::Try;
      block.header_start = src[p - 1].begin;
    } else if (has_trailing_return) {
      block.kind = BraceBlock::Kind::Function;
    } else if (has_namespace) {
      block.kind = BraceBlock::Kind::Namespace;
    } else if (has_class_key && !has_enum) {
      block.kind = BraceBlock::Kind::Class;
    }
    if (block.kind == BraceBlock::Kind::Catch) {
      // catch header begins at the `catch` keyword
      block.header_start = src[src.paren_partner(p - 1) - 1].begin;
    }
    block.extent_start = block.header_start;
    block.extent_end = block.close + 1;
    blocks.push_back(block);
  }

  // A try body and its handlers expand as one statement.
  std::vector<std::size_t> by_token(src.size(), kNoToken);
  for (std::size_t b = 0; b < blocks.size(); ++b) by_token[blocks[b].open_token] = b;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].kind != BraceBlock::Kind::Try) continue;
    std::vector<std::size_t> chain{b};
    std::size_t close = src.brace_partner(blocks[b].open_token);
    while (src.is_ident(close + 1, U"catch") && src.is_punct(close + 2, U'(')) {
      const std::size_t rparen = src.paren_partner(close + 2);
      if (rparen == kNoToken || !src.is_punct(rparen + 1, U'{')) break;
      const std::size_t handler = by_token[rparen + 1];
      if (handler == kNoToken) break;
      chain.push_back(handler);
      close = src.brace_partner(rparen + 1);
    }
    const std::size_t end = src[close].end;
    for (std::size_t k : chain) {
      blocks[k].extent_start = blocks[b].header_start;
      blocks[k].extent_end = end;
    }
  }
  return blocks;
}

std::pair<std::size_t, std::size_t> count_code_braces(const LexedSource& src, Span span) {
  std::size_t open = 0;
  std::size_t close = 0;
  for (std::size_t i = src.first_token_at_or_after(span.start); i < src.size() && src[i].begin < span.end; ++i) {
    if (src.is_punct(i, U'{')) ++open;
    if (src.is_punct(i, U'}')) ++close;
  }
  return {open, close};
}

}  // namespace codetopic
