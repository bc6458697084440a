#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "codetopic/text.hpp"

namespace codetopic {

/// Lexical class of every character; rules and brace matching only look at
/// Code characters.
enum class LexClass : std::uint8_t { Code, LineComment, BlockComment, String, CharLiteral };

struct Token {
  enum class Kind : std::uint8_t { Identifier, Number, Punct, String, Char };

  Kind kind = Kind::Punct;
  std::size_t begin = 0;
  std::size_t end = 0;
  /// A preprocessor directive line separates this token from the previous one.
  bool after_directive = false;
};

inline constexpr std::size_t kNoToken = static_cast<std::size_t>(-1);

/// Lexical pre-pass over C++ text: character mask, a token stream that skips
/// whitespace, comments and preprocessor directives, and matched brace pairs.
/// Holds a view of the text, which must outlive it.
class LexedSource {
 public:
  explicit LexedSource(std::u32string_view text);

  std::u32string_view text() const { return text_; }
  const std::vector<LexClass>& mask() const { return mask_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }

  std::u32string_view spelling(std::size_t tok) const;
  bool is_ident(std::size_t tok, std::u32string_view word) const;
  bool is_ident(std::size_t tok) const;
  bool is_punct(std::size_t tok, char32_t c) const;
  /// True when token tok+1 starts exactly where tok ends.
  bool adjacent(std::size_t tok) const;

  /// Partner of a `{` or `}` token, or kNoToken when unmatched.
  std::size_t brace_partner(std::size_t tok) const { return brace_partner_[tok]; }
  /// Partner of a `(` or `)` token, or kNoToken when unmatched.
  std::size_t paren_partner(std::size_t tok) const { return paren_partner_[tok]; }
  /// Innermost `{` token enclosing tok (exclusive of tok itself), or kNoToken.
  std::size_t enclosing_brace(std::size_t tok) const { return enclosing_[tok]; }

  /// First token of the declaration or statement containing tok: scans back
  /// to the previous `;`, `{`, `}`, access specifier label or directive line.
  std::size_t statement_start(std::size_t tok) const;

  /// Index of the first token whose begin >= offset (size() if none).
  std::size_t first_token_at_or_after(std::size_t offset) const;

 private:
  void scan();
  void match_pairs();

  std::u32string_view text_;
  std::vector<LexClass> mask_;
  std::vector<Token> tokens_;
  std::vector<std::size_t> brace_partner_;
  std::vector<std::size_t> paren_partner_;
  std::vector<std::size_t> enclosing_;
};

/// A matched `{...}` pair in character offsets.
struct BraceBlock {
  std::size_t open = 0;   // offset of `{`
  std::size_t close = 0;  // offset of `}`
  std::size_t header_start = 0;
  std::size_t open_token = 0;
  /// Region an expansion grows to: header through closing brace, or the whole
  /// try statement for try and catch bodies.
  std::size_t extent_start = 0;
  std::size_t extent_end = 0;
  enum class Kind : std::uint8_t { Plain, Function, Class, Namespace, Try, Catch } kind = Kind::Plain;

  bool function_like() const { return kind != Kind::Plain; }
  bool type_or_namespace() const { return kind == Kind::Class || kind == Kind::Namespace; }
};

/// Every matched brace block with its header classified.
std::vector<BraceBlock> brace_blocks(const LexedSource& src);

/// Counts `{` and `}` code tokens (outside comments, literals and directives)
/// that begin inside span.
std::pair<std::size_t, std::size_t> count_code_braces(const LexedSource& src, Span span);

}  // namespace codetopic
