#include "codetopic/config.hpp"

#include <initializer_list>

#include "codetopic/io.hpp"

namespace codetopic {
namespace {

void reject_unknown(const json& j, const std::string& section, std::initializer_list<const char*> known) {
  if (!j.is_object()) throw ConfigError("config section '" + section + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key '" + (section.empty() ? key : section + "." + key) + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, const std::string& section, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + section + "." + key + "' has the wrong type");
  }
}

Topic topic_or_throw(const std::string& name, const std::string& where) {
  auto t = parse_topic(name);
  if (!t) throw ConfigError("unknown topic '" + name + "' in " + where + " (valid: " + valid_topic_names() + ")");
  return *t;
}

}  // namespace

HighlightConfig apply_highlight_overrides(HighlightConfig c, const json& j) {
  const std::string s = "highlight";
  reject_unknown(j, s, {"window_size", "step_size", "threshold", "expand_boundaries"});
  if (j.contains("window_size")) {
    const json& w = j.at("window_size");
    if (!w.is_object()) throw ConfigError("config key 'highlight.window_size' must be an object");
    for (const auto& [name, value] : w.items()) {
      const Topic t = topic_or_throw(name, "highlight.window_size");
      if (!value.is_number_unsigned()) throw ConfigError("window_size for " + name + " must be a positive integer");
      c.window_size[topic_index(t)] = value.get<std::size_t>();
    }
  }
  read(j, "step_size", s, c.step_size);
  read(j, "threshold", s, c.threshold);
  read(j, "expand_boundaries", s, c.expand_boundaries);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

PipelineConfig parse_config(const json& j) {
  PipelineConfig c;
  reject_unknown(j, "", {"corpus", "train", "highlight", "evaluation", "service"});

  if (j.contains("corpus")) {
    const json& s = j.at("corpus");
    reject_unknown(s, "corpus", {"topics", "augment_target", "background_per_doc", "background_length", "seed"});
    if (s.contains("topics")) {
      std::vector<std::string> names;
      read(s, "topics", "corpus", names);
      c.corpus.topics = TopicSet{};
      for (const auto& n : names) c.corpus.topics.insert(topic_or_throw(n, "corpus.topics"));
    }
    read(s, "augment_target", "corpus", c.corpus.augment_target);
    read(s, "background_per_doc", "corpus", c.corpus.background_per_doc);
    read(s, "background_length", "corpus", c.corpus.background_length);
    read(s, "seed", "corpus", c.corpus.seed);
  }
  if (j.contains("train")) {
    const json& s = j.at("train");
    reject_unknown(s, "train", {"regularization_strength", "epochs", "seed", "tolerance"});
    read(s, "regularization_strength", "train", c.train.regularization_strength);
    read(s, "epochs", "train", c.train.epochs);
    read(s, "seed", "train", c.train.seed);
    read(s, "tolerance", "train", c.train.tolerance);
    try {
      c.train.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("highlight")) c.highlight = apply_highlight_overrides(c.highlight, j.at("highlight"));
  if (j.contains("evaluation")) {
    const json& s = j.at("evaluation");
    reject_unknown(s, "evaluation", {"folds", "per_topic_cap", "seed", "filtered"});
    read(s, "folds", "evaluation", c.evaluation.folds);
    read(s, "per_topic_cap", "evaluation", c.evaluation.per_topic_cap);
    read(s, "seed", "evaluation", c.evaluation.seed);
    read(s, "filtered", "evaluation", c.evaluation.filtered);
    if (c.evaluation.folds < 2) throw ConfigError("evaluation.folds must be >= 2");
    if (c.evaluation.per_topic_cap < 1) throw ConfigError("evaluation.per_topic_cap must be >= 1");
  }
  if (j.contains("service")) {
    const json& s = j.at("service");
    reject_unknown(s, "service", {"bind", "port", "max_code_chars", "static_dir", "cors_origin"});
    read(s, "bind", "service", c.service.bind);
    read(s, "port", "service", c.service.port);
    read(s, "max_code_chars", "service", c.service.max_code_chars);
    read(s, "static_dir", "service", c.service.static_dir);
    read(s, "cors_origin", "service", c.service.cors_origin);
    if (c.service.port < 0 || c.service.port > 65535) throw ConfigError("service.port must be in 0..65535");
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  try {
    return parse_config(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json config_to_json(const PipelineConfig& c) {
  json topics = json::array();
  for (Topic t : c.corpus.topics.to_vector()) topics.push_back(topic_name(t));
  return json{
      {"corpus",
       {{"topics", topics},
        {"augment_target", c.corpus.augment_target},
        {"background_per_doc", c.corpus.background_per_doc},
        {"background_length", c.corpus.background_length},
        {"seed", c.corpus.seed}}},
      {"train", train_config_to_json(c.train)},
      {"highlight", highlight_config_to_json(c.highlight)},
      {"evaluation",
       {{"folds", c.evaluation.folds},
        {"per_topic_cap", c.evaluation.per_topic_cap},
        {"seed", c.evaluation.seed},
        {"filtered", c.evaluation.filtered}}},
      {"service",
       {{"bind", c.service.bind},
        {"port", c.service.port},
        {"max_code_chars", c.service.max_code_chars},
        {"static_dir", c.service.static_dir},
        {"cors_origin", c.service.cors_origin}}},
  };
}

}  // namespace codetopic
