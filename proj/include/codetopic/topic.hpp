#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codetopic {

/// The nine C++ construct labels. Enumerator order is alphabetical by name and
/// doubles as the bit position in the binary label encoding.
enum class Topic : std::uint8_t {
  Classes = 0,
  Friend,
  Inheritance,
  Inline,
  Namespaces,
  OperatorOverload,
  Templates,
  TryCatch,
  VirtualFunction,
};

inline constexpr std::size_t kTopicCount = 9;

inline constexpr std::array<Topic, kTopicCount> kAllTopics = {
    Topic::Classes,          Topic::Friend,    Topic::Inheritance,
    Topic::Inline,           Topic::Namespaces, Topic::OperatorOverload,
    Topic::Templates,        Topic::TryCatch,  Topic::VirtualFunction,
};

constexpr std::size_t topic_index(Topic t) { return static_cast<std::size_t>(t); }

std::string_view topic_name(Topic t);
std::optional<Topic> parse_topic(std::string_view name);

/// Comma-separated list of every valid topic name, for diagnostics.
std::string valid_topic_names();

/// Set of topics stored as a 9-bit mask.
class TopicSet {
 public:
  constexpr TopicSet() = default;
  constexpr TopicSet(std::initializer_list<Topic> topics) {
    for (Topic t : topics) insert(t);
  }

  static constexpr TopicSet from_bits(std::uint16_t bits) {
    TopicSet s;
    s.bits_ = bits & kMask;
    return s;
  }

  constexpr void insert(Topic t) { bits_ |= bit(t); }
  constexpr void erase(Topic t) { bits_ &= static_cast<std::uint16_t>(~bit(t)); }
  constexpr bool contains(Topic t) const { return (bits_ & bit(t)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint16_t bits() const { return bits_; }
  std::size_t size() const;

  std::vector<Topic> to_vector() const;
  /// Binary relevance row: element i is 1 iff topic i is present.
  std::array<std::uint8_t, kTopicCount> to_binary() const;

  friend constexpr bool operator==(TopicSet, TopicSet) = default;

 private:
  static constexpr std::uint16_t kMask = (1u << kTopicCount) - 1;
  static constexpr std::uint16_t bit(Topic t) {
    return static_cast<std::uint16_t>(1u << topic_index(t));
  }
  std::uint16_t bits_ = 0;
};

}  // namespace codetopic
