#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "codetopic/classifier.hpp"
#include "codetopic/corpus.hpp"
#include "synthetic.hpp"

namespace codetopic::fixtures {

/// A hand-annotated file: `⟦` and `⟧` delimit the spans of its topic.
struct AnnotatedFixture {
  SourceDocument doc;
  Topic topic = Topic::Classes;
  std::vector<Span> spans;
};

AnnotatedFixture parse_annotated(std::string doc_id, std::string_view utf8, Topic topic);

/// tests/fixtures/heuristic/<Topic>/*.cpp, sorted by path.
std::vector<AnnotatedFixture> load_heuristic_fixtures();

std::filesystem::path fixture_dir();

/// Synthetic training files for every topic, `per_topic` each.
std::vector<synth::SyntheticFile> synthetic_files(std::size_t per_topic, std::uint64_t seed,
                                                  const std::string& prefix = "file");

/// The extract pipeline over synthetic files: one snippet per annotation,
/// augmented until every topic matches the largest one.
std::vector<LabeledSnippet> pipeline_snippets(const std::vector<synth::SyntheticFile>& files, std::uint64_t seed);

/// Model trained once per process on synthetic files; shared by end-to-end tests.
const MultiLabelModel& synthetic_model();

/// Self-deleting temporary directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace codetopic::fixtures
