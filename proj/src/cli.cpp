#include "codetopic/cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "codetopic/config.hpp"
#include "codetopic/corpus.hpp"
#include "codetopic/evaluation.hpp"
#include "codetopic/io.hpp"
#include "codetopic/service.hpp"

namespace codetopic {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string topics;
  std::string out;
};

/// Loaded configuration plus the raw document, so sections can be applied
/// only when present.
struct LoadedConfig {
  PipelineConfig config;
  json raw = json::object();
};

LoadedConfig load_config_opt(const std::string& path) {
  LoadedConfig c;
  if (path.empty()) return c;
  c.config = load_config(path);
  c.raw = json::parse(read_file(path));
  return c;
}

TopicSet parse_topic_list(const std::string& list) {
  TopicSet out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string name = list.substr(pos, comma - pos);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (!name.empty()) {
      auto t = parse_topic(name);
      if (!t) throw UsageError("unknown topic '" + name + "'; valid topics: " + valid_topic_names());
      out.insert(*t);
    }
    pos = comma + 1;
  }
  return out;
}

std::string html_escape(std::u32string_view text) {
  std::string out;
  for (char32_t c : text) {
    switch (c) {
      case U'<': out += "&lt;"; break;
      case U'>': out += "&gt;"; break;
      case U'&': out += "&amp;"; break;
      case U'"': out += "&quot;"; break;
      default: out += encode_utf8(std::u32string_view(&c, 1));
    }
  }
  return out;
}

// --- extract -------------------------------------------------------------------

int cmd_extract(const std::string& corpus_dir, const CommonOptions& common, std::optional<std::size_t> augment_target,
                std::optional<std::size_t> background, std::ostream& out, std::ostream& err) {
  LoadedConfig lc = load_config_opt(common.config_path);
  CorpusSettings settings = lc.config.corpus;
  if (!common.topics.empty()) settings.topics = parse_topic_list(common.topics);
  if (common.seed) settings.seed = *common.seed;
  if (augment_target) settings.augment_target = *augment_target;
  if (background) settings.background_per_doc = *background;

  const LoadedCorpus corpus = load_corpus_dir(corpus_dir);
  for (const auto& id : corpus.skipped) err << "warning: cannot read " << id << '\n';
  if (corpus.documents.empty()) {
    err << "error: no source files found in " << corpus_dir << '\n';
    return kExitData;
  }
  if (corpus.invalid_utf8 > 0) {
    err << "warning: replaced " << corpus.invalid_utf8 << " invalid UTF-8 sequence(s)\n";
  }

  const RuleSet rules(settings.topics);
  std::vector<GroundTruthAnnotation> annotations;
  std::vector<LabeledSnippet> snippets;
  for (const auto& doc : corpus.documents) {
    for (auto& a : extract_annotations(doc, rules)) {
      snippets.push_back(LabeledSnippet{
          encode_utf8(std::u32string_view(doc.content).substr(a.span.start, a.span.length())), TopicSet{a.topic}});
      annotations.push_back(std::move(a));
    }
  }
  std::array<std::size_t, kTopicCount> mined{};
  for (const auto& a : annotations) ++mined[topic_index(a.topic)];
  if (settings.augment_target > 0) snippets = augment(snippets, settings.augment_target, settings.seed);
  std::size_t background_count = 0;
  if (settings.background_per_doc > 0) {
    auto bg = background_snippets(corpus.documents, annotations, settings.background_per_doc,
                                  settings.background_length, settings.seed);
    background_count = bg.size();
    snippets.insert(snippets.end(), bg.begin(), bg.end());
  }

  const fs::path out_dir = common.out.empty() ? fs::path(".") : fs::path(common.out);
  write_jsonl(out_dir / "corpus.ann.jsonl", annotations);
  write_jsonl(out_dir / "corpus.snip.jsonl", snippets);

  out << "documents: " << corpus.documents.size() << '\n';
  for (Topic t : kAllTopics) {
    if (!rules.enabled(t)) continue;
    std::size_t total = 0;
    for (const auto& s : snippets) total += s.labels.contains(t) ? 1 : 0;
    out << topic_name(t) << ": " << mined[topic_index(t)] << " annotations, " << total << " snippets\n";
  }
  if (background_count > 0) out << "background snippets: " << background_count << '\n';
  out << "skipped files: " << corpus.skipped.size() << '\n';
  return kExitOk;
}

// --- train -----------------------------------------------------------------------

int cmd_train(const std::string& snippets_path, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  LoadedConfig lc = load_config_opt(common.config_path);
  PipelineConfig& cfg = lc.config;
  if (common.seed) cfg.train.seed = *common.seed;

  const auto snippets = read_jsonl<LabeledSnippet>(snippets_path);
  const TrainResult result = train(snippets, cfg.train);
  for (const auto& w : result.warnings) err << "warning: " << topic_name(w.topic) << ": " << w.message << '\n';

  ModelBundle bundle;
  bundle.model = result.model;
  bundle.highlight_config = cfg.highlight;
  bundle.provenance.seed = cfg.train.seed;
  bundle.provenance.config_hash = fnv1a_hex(config_to_json(cfg).dump());
  bundle.provenance.corpus_document_count = snippets.size();
  const fs::path model_path = common.out.empty() ? fs::path("model.json") : fs::path(common.out);
  save_bundle(model_path, bundle);

  out << "training snippets: " << snippets.size() << '\n';
  for (const auto& [topic, clf] : result.model.per_topic) {
    out << topic_name(topic) << ": " << result.positives[topic_index(topic)] << " positives, objective "
        << (clf.objective_history.empty() ? 0.0 : clf.objective_history.back()) << " after "
        << clf.objective_history.size() << " epochs\n";
  }
  out << "model written to " << model_path.string() << '\n';
  return kExitOk;
}

// --- highlight -------------------------------------------------------------------

HighlightConfig effective_highlight_config(const ModelBundle& bundle, const LoadedConfig& lc) {
  if (lc.raw.contains("highlight")) return apply_highlight_overrides(bundle.highlight_config, lc.raw.at("highlight"));
  return bundle.highlight_config;
}

int cmd_highlight(const std::string& model_path, const std::string& input, const CommonOptions& common, bool html,
                  std::ostream& out, std::ostream& err) {
  const TopicSet topics = common.topics.empty() ? TopicSet::from_bits(0x1FF) : parse_topic_list(common.topics);
  LoadedConfig lc = load_config_opt(common.config_path);
  const ModelBundle bundle = load_bundle(model_path);
  const HighlightConfig cfg = effective_highlight_config(bundle, lc);

  std::vector<SourceDocument> docs;
  if (fs::is_directory(input)) {
    LoadedCorpus corpus = load_corpus_dir(input);
    for (const auto& id : corpus.skipped) err << "warning: cannot read " << id << '\n';
    docs = std::move(corpus.documents);
  } else {
    docs.emplace_back(fs::path(input).filename().generic_string(), std::string_view(read_file(input)));
  }

  const fs::path out_dir = common.out.empty() ? fs::path(".") : fs::path(common.out);
  std::size_t total = 0;
  for (const auto& doc : docs) {
    const auto spans = highlight(doc, bundle.model, topics, cfg);
    std::vector<DocumentHighlight> records;
    for (const auto& s : spans) records.push_back(DocumentHighlight{doc.doc_id, s.topic, s.span, s.confidence});
    fs::path base = out_dir / doc.doc_id;
    write_jsonl(fs::path(base).replace_extension(".hl.jsonl"), records);
    if (html) write_file(fs::path(base).replace_extension(".html"), render_html(doc, spans));
    total += spans.size();
    out << doc.doc_id << ": " << spans.size() << " span(s)\n";
  }
  out << "documents: " << docs.size() << ", spans: " << total << '\n';
  return kExitOk;
}

// --- evaluate --------------------------------------------------------------------

struct EvaluateOptions {
  std::string corpus_dir;
  std::string model_path;
  std::string gold_path;
  std::string mode;
  std::string pred_path;
  std::string snippets_path;
};

int cmd_evaluate(const EvaluateOptions& o, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  if (o.mode != "classifier" && o.mode != "highlight") throw UsageError("--mode must be classifier or highlight");
  LoadedConfig lc = load_config_opt(common.config_path);
  PipelineConfig& cfg = lc.config;
  if (common.seed) cfg.evaluation.seed = *common.seed;

  LoadedCorpus corpus = load_corpus_dir(o.corpus_dir);
  for (const auto& id : corpus.skipped) err << "warning: cannot read " << id << '\n';
  std::map<std::string, const SourceDocument*> by_id;
  std::map<std::string, std::size_t> lengths;
  for (const auto& d : corpus.documents) {
    by_id[d.doc_id] = &d;
    lengths[d.doc_id] = d.length();
  }
  const auto gold = read_jsonl<GroundTruthAnnotation>(o.gold_path);
  for (const auto& g : gold) {
    auto it = lengths.find(g.doc_id);
    if (it == lengths.end()) throw DataError("gold annotation references unknown doc_id '" + g.doc_id + "'");
    if (!g.span.valid_for(it->second)) throw DataError("gold span out of range in doc_id '" + g.doc_id + "'");
  }

  std::optional<ModelBundle> bundle;
  if (!o.model_path.empty()) bundle = load_bundle(o.model_path);

  MetricsReport report;
  if (o.mode == "classifier") {
    std::vector<LabeledSnippet> snippets;
    if (!o.snippets_path.empty()) {
      snippets = read_jsonl<LabeledSnippet>(o.snippets_path);
    } else {
      for (const auto& g : gold) {
        const auto& text = by_id.at(g.doc_id)->content;
        snippets.push_back(LabeledSnippet{encode_utf8(std::u32string_view(text).substr(g.span.start, g.span.length())),
                                          TopicSet{g.topic}});
      }
    }
    TrainConfig train_cfg = bundle && !lc.raw.contains("train") ? bundle->model.training_config : cfg.train;
    report = cross_validate(snippets, cfg.evaluation.folds, cfg.evaluation.seed, svm_trainer(train_cfg));
  } else {
    std::map<Topic, std::set<std::string>> eval_set;
    if (cfg.evaluation.filtered) {
      eval_set = sample_eval_set(gold, cfg.evaluation.per_topic_cap, cfg.evaluation.seed);
    } else {
      for (const auto& g : gold) eval_set[g.topic];
      for (auto& [topic, ids] : eval_set) {
        for (const auto& d : corpus.documents) ids.insert(d.doc_id);
      }
    }
    auto selected = [&](Topic t, const std::string& id) {
      auto it = eval_set.find(t);
      return it != eval_set.end() && it->second.count(id) != 0;
    };

    std::vector<DocumentHighlight> predicted;
    if (!o.pred_path.empty()) {
      for (auto& h : read_jsonl<DocumentHighlight>(o.pred_path)) {
        if (selected(h.topic, h.doc_id)) predicted.push_back(std::move(h));
      }
    } else {
      if (!bundle) throw UsageError("highlight mode needs --model or --pred");
      const HighlightConfig hcfg = effective_highlight_config(*bundle, lc);
      for (const auto& [topic, ids] : eval_set) {
        for (const auto& id : ids) {
          for (const auto& s : highlight(*by_id.at(id), bundle->model, TopicSet{topic}, hcfg)) {
            predicted.push_back(DocumentHighlight{id, s.topic, s.span, s.confidence});
          }
        }
      }
    }
    std::vector<GroundTruthAnnotation> gold_subset;
    for (const auto& g : gold) {
      if (selected(g.topic, g.doc_id)) gold_subset.push_back(g);
    }
    report = char_metrics(predicted, gold_subset, lengths);
  }

  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  const std::string table = format_table(report);
  const fs::path report_path = common.out.empty() ? fs::path("report.json") : fs::path(common.out);
  write_file(report_path, report_to_json(report).dump(2) + "\n");
  write_file(fs::path(report_path).replace_extension(".txt"), table);
  out << table;
  return kExitOk;
}

// --- serve -----------------------------------------------------------------------

int cmd_serve(const std::string& model_path, const CommonOptions& common, std::optional<int> port,
              const std::string& bind, const std::string& static_dir, std::ostream& out, std::ostream& err) {
  LoadedConfig lc = load_config_opt(common.config_path);
  ServiceSettings settings = lc.config.service;
  if (port) settings.port = *port;
  if (!bind.empty()) settings.bind = bind;
  if (!static_dir.empty()) settings.static_dir = static_dir;
  ModelBundle bundle = load_bundle(model_path);
  bundle.highlight_config = effective_highlight_config(bundle, lc);
  const HighlightService service(std::move(bundle), settings);
  out << "serving on http://" << settings.bind << ':' << settings.port << '\n' << std::flush;
  if (!serve(service)) {
    err << "error: cannot bind " << settings.bind << ':' << settings.port << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

std::string render_html(const SourceDocument& doc, std::span<const HighlightSpan> spans) {
  std::set<std::size_t> cuts{0, doc.length()};
  for (const auto& s : spans) {
    cuts.insert(std::min(s.span.start, doc.length()));
    cuts.insert(std::min(s.span.end, doc.length()));
  }
  std::string body;
  const std::vector<std::size_t> points(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Span seg{points[i], points[i + 1]};
    std::string topics;
    std::string title;
    for (const auto& s : spans) {
      if (!s.span.contains(seg)) continue;
      if (!topics.empty()) topics += ' ';
      topics += topic_name(s.topic);
      if (!title.empty()) title += ", ";
      title += std::string(topic_name(s.topic)) + " " + std::to_string(s.confidence).substr(0, 4);
    }
    const std::string text = html_escape(std::u32string_view(doc.content).substr(seg.start, seg.length()));
    if (topics.empty()) {
      body += text;
    } else {
      body += "<mark data-topics=\"" + topics + "\" title=\"" + title + "\">" + text + "</mark>";
    }
  }
  return "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>" +
         html_escape(decode_utf8(doc.doc_id)) +
         "</title>\n<style>mark{background:#ffe08a}mark[data-topics~=\" \"]{outline:1px solid #c60}</style>"
         "</head>\n<body><pre>" +
         body + "</pre></body></html>\n";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"C++ construct topic classification and highlighting", "codetopic"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON configuration file");
    sub->add_option("--seed", common.seed, "random seed override");
    sub->add_option("--out", common.out, "output path");
  };

  std::string corpus_dir;
  std::optional<std::size_t> augment_target;
  std::optional<std::size_t> background;
  CLI::App* extract = app.add_subcommand("extract", "mine annotations and snippets from a directory of .cpp files");
  extract->add_option("corpus_dir", corpus_dir, "corpus root")->required();
  extract->add_option("--topics", common.topics, "comma-separated topic rules to run");
  extract->add_option("--augment", augment_target, "grow every topic to this many snippets");
  extract->add_option("--background", background, "unlabelled snippets to draw per file");
  add_common(extract);

  std::string snippets_path;
  CLI::App* train_cmd = app.add_subcommand("train", "train the tf-idf + one-vs-rest model");
  train_cmd->add_option("snippets", snippets_path, ".snip.jsonl file")->required();
  add_common(train_cmd);

  std::string model_path;
  std::string input;
  bool html = false;
  CLI::App* highlight_cmd = app.add_subcommand("highlight", "highlight topics in a file or directory");
  highlight_cmd->add_option("input", input, "source file or directory")->required();
  highlight_cmd->add_option("--model", model_path, "model file")->required();
  highlight_cmd->add_option("--topics", common.topics, "comma-separated topics");
  highlight_cmd->add_flag("--html", html, "also write a static HTML page per document");
  add_common(highlight_cmd);

  EvaluateOptions eval;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "cross-validate the classifier or score highlights");
  evaluate_cmd->add_option("corpus_dir", eval.corpus_dir, "corpus root")->required();
  evaluate_cmd->add_option("--gold", eval.gold_path, ".ann.jsonl gold annotations")->required();
  evaluate_cmd->add_option("--mode", eval.mode, "classifier or highlight")->required();
  evaluate_cmd->add_option("--model", eval.model_path, "model file");
  evaluate_cmd->add_option("--pred", eval.pred_path, "score an existing .hl.jsonl instead of running the model");
  evaluate_cmd->add_option("--snippets", eval.snippets_path, "snippets for classifier mode");
  add_common(evaluate_cmd);

  std::optional<int> port;
  std::string bind;
  std::string static_dir;
  CLI::App* serve_cmd = app.add_subcommand("serve", "run the HTTP highlight service");
  serve_cmd->add_option("--model", model_path, "model file")->required();
  serve_cmd->add_option("--port", port, "TCP port");
  serve_cmd->add_option("--bind", bind, "bind address");
  serve_cmd->add_option("--static-dir", static_dir, "web UI assets");
  add_common(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*extract) return cmd_extract(corpus_dir, common, augment_target, background, out, err);
    if (*train_cmd) return cmd_train(snippets_path, common, out, err);
    if (*highlight_cmd) return cmd_highlight(model_path, input, common, html, out, err);
    if (*evaluate_cmd) return cmd_evaluate(eval, common, out, err);
    if (*serve_cmd) return cmd_serve(model_path, common, port, bind, static_dir, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const TrainingError& e) {
    err << "training error: " << e.what() << '\n';
    return kExitData;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace codetopic
