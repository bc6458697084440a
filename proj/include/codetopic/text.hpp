#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace codetopic {

/// Decodes UTF-8 into code points. Invalid sequences become U+FFFD; the
/// optional counter receives the number of replacements made.
std::u32string decode_utf8(std::string_view bytes, std::size_t* replacements = nullptr);
std::string encode_utf8(std::u32string_view text);

/// Half-open character interval [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool contains(const Span& o) const { return start <= o.start && o.end <= end; }
  bool intersects(const Span& o) const { return start < o.end && o.start < end; }
  bool valid_for(std::size_t doc_length) const { return start < end && end <= doc_length; }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

/// A raw source file. Offsets everywhere are code point offsets into content.
struct SourceDocument {
  std::string doc_id;
  std::u32string content;

  SourceDocument() = default;
  SourceDocument(std::string id, std::u32string text)
      : doc_id(std::move(id)), content(std::move(text)) {}
  SourceDocument(std::string id, std::string_view utf8)
      : doc_id(std::move(id)), content(decode_utf8(utf8)) {}

  std::size_t length() const { return content.size(); }
};

}  // namespace codetopic
