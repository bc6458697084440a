#include "fixtures.hpp"

#include <stdlib.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace codetopic::fixtures {

namespace fs = std::filesystem;

AnnotatedFixture parse_annotated(std::string doc_id, std::string_view utf8, Topic topic) {
  const std::u32string marked = decode_utf8(utf8);
  AnnotatedFixture f;
  f.topic = topic;
  std::u32string text;
  std::vector<std::size_t> open;
  for (char32_t c : marked) {
    if (c == U'⟦') {
      open.push_back(text.size());
    } else if (c == U'⟧') {
      if (open.empty()) throw std::runtime_error(doc_id + ": unbalanced annotation marker");
      f.spans.push_back(Span{open.back(), text.size()});
      open.pop_back();
    } else {
      text += c;
    }
  }
  if (!open.empty()) throw std::runtime_error(doc_id + ": unclosed annotation marker");
  std::sort(f.spans.begin(), f.spans.end());
  f.doc = SourceDocument(std::move(doc_id), std::move(text));
  return f;
}

fs::path fixture_dir() { return CODETOPIC_FIXTURE_DIR; }

std::vector<AnnotatedFixture> load_heuristic_fixtures() {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(fixture_dir() / "heuristic")) {
    if (entry.is_regular_file() && entry.path().extension() == ".cpp") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<AnnotatedFixture> out;
  for (const auto& p : paths) {
    const auto topic = parse_topic(p.parent_path().filename().string());
    if (!topic) throw std::runtime_error("fixture directory is not a topic: " + p.string());
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(parse_annotated(p.parent_path().filename().string() + "/" + p.filename().string(), ss.str(), *topic));
  }
  return out;
}

std::vector<synth::SyntheticFile> synthetic_files(std::size_t per_topic, std::uint64_t seed, const std::string& prefix) {
  synth::Generator gen(seed);
  std::vector<synth::SyntheticFile> files;
  for (Topic t : kAllTopics) {
    for (std::size_t i = 0; i < per_topic; ++i) {
      files.push_back(gen.file(t, prefix + "_" + std::string(topic_name(t)) + "_" + std::to_string(i) + ".cpp"));
    }
  }
  return files;
}

std::vector<LabeledSnippet> pipeline_snippets(const std::vector<synth::SyntheticFile>& files, std::uint64_t seed) {
  std::vector<SourceDocument> docs;
  for (const auto& f : files) docs.push_back(f.doc);
  std::vector<LabeledSnippet> snippets = extract_snippets(docs);
  std::array<std::size_t, kTopicCount> counts{};
  for (const auto& s : snippets) {
    for (Topic t : s.labels.to_vector()) ++counts[topic_index(t)];
  }
  return augment(snippets, *std::max_element(counts.begin(), counts.end()), seed);
}

const MultiLabelModel& synthetic_model() {
  static const MultiLabelModel model = [] {
    const auto files = synthetic_files(20, 9001, "train");
    return train(pipeline_snippets(files, 9001), TrainConfig{}).model;
  }();
  return model;
}

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "codetopic-test-XXXXXX").string();
  if (mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, std::string_view text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace codetopic::fixtures
