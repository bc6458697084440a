#include "codetopic/topic.hpp"

#include <bit>

namespace codetopic {
namespace {

constexpr std::array<std::string_view, kTopicCount> kNames = {
    "Classes",    "Friend",           "Inheritance", "Inline",          "Namespaces",
    "OperatorOverload", "Templates",  "TryCatch",    "VirtualFunction",
};

}  // namespace

std::string_view topic_name(Topic t) { return kNames[topic_index(t)]; }

std::optional<Topic> parse_topic(std::string_view name) {
  for (Topic t : kAllTopics) {
    if (kNames[topic_index(t)] == name) return t;
  }
  return std::nullopt;
}

std::string valid_topic_names() {
  std::string out;
  for (Topic t : kAllTopics) {
    if (!out.empty()) out += ", ";
    out += topic_name(t);
  }
  return out;
}

std::size_t TopicSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<Topic> TopicSet::to_vector() const {
  std::vector<Topic> out;
  for (Topic t : kAllTopics) {
    if (contains(t)) out.push_back(t);
  }
  return out;
}

std::array<std::uint8_t, kTopicCount> TopicSet::to_binary() const {
  std::array<std::uint8_t, kTopicCount> row{};
  for (Topic t : kAllTopics) row[topic_index(t)] = contains(t) ? 1 : 0;
  return row;
}

}  // namespace codetopic
