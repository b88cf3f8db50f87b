// SPDX-License-Identifier: Apache-2.0
#include "apirec/pipeline/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "apirec/eval/evaluate.hpp"
#include "apirec/nn/checkpoint.hpp"
#include "apirec/nn/kernels.hpp"
#include "apirec/nn/predict.hpp"
#include "apirec/nn/trainer.hpp"
#include "apirec/pipeline/config.hpp"
#include "apirec/pipeline/ingest.hpp"
#include "apirec/source/errors.hpp"
#include "apirec/source/parser.hpp"

namespace fs = std::filesystem;

namespace apirec::pipeline {
namespace {

struct Common {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out;
};

struct SourceArgs {
  std::string file;
  std::string method;
  int hole_line = 0;

  MethodSelector selector() const {
    MethodSelector sel;
    if (!method.empty()) sel.name = method;
    if (hole_line > 0) sel.hole_line = hole_line;
    return sel;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_file, "Flat key=value configuration file");
  cmd->add_option("--set", c.overrides, "Override a configuration key (key=value)");
}

PipelineConfig load_config(const Common& c) {
  PipelineConfig cfg = default_config();
  if (!c.config_file.empty()) apply_keys(cfg, read_key_values(c.config_file));
  std::map<std::string, std::string> kv;
  for (const auto& o : c.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + o + "'");
    kv[o.substr(0, eq)] = o.substr(eq + 1);
  }
  apply_keys(cfg, kv);
  return cfg;
}

void require_file(const fs::path& p, const char* what) {
  if (!fs::exists(p)) throw IoError(std::string(what) + " not found: " + p.string());
}

/// Writes to --out when given, else to `out`.
void emit(const std::string& data, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << data;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw IoError("cannot write " + out_path);
  f << data;
  if (!f) throw IoError("write failed: " + out_path);
}

nn::AnyNetwork load_model(const PipelineConfig& cfg, const fs::path& path) {
  if (!fs::exists(path)) throw nn::CheckpointError("checkpoint not found: " + path.string());
  nn::AnyNetwork net = nn::load_checkpoint(path);
  const auto have = nn::to_key_values(nn::config_of(net));
  const auto want = nn::to_key_values(cfg.model);
  for (const auto& [key, value] : want) {
    if (!cfg.explicit_keys.count(key)) continue;
    if (have.at(key) != value)
      throw CheckpointMismatchError("checkpoint has " + key + "=" + have.at(key) + " but configuration asks for " + value);
  }
  return net;
}

int cmd_extract_graph(const Common& c, const SourceArgs& s, std::ostream& out, std::ostream&) {
  const auto cfg = load_config(c);
  const auto catalog = ApiCatalog::load(cfg.catalog);
  const auto vocab = TokenVocabulary::load(cfg.vocabulary);
  const auto m = load_method(s.file, s.selector(), catalog, vocab);
  emit(dump_graph(m.graph), c.out, out);
  return kExitOk;
}

int cmd_tokens(const Common& c, const SourceArgs& s, std::ostream& out, std::ostream&) {
  const auto cfg = load_config(c);
  const auto catalog = ApiCatalog::load(cfg.catalog);
  const auto vocab = TokenVocabulary::load(cfg.vocabulary);
  const auto m = load_method(s.file, s.selector(), catalog, vocab);
  std::string data;
  for (const auto& t : m.tokens.full()) data += t + "\n";
  emit(data, c.out, out);
  return kExitOk;
}

int cmd_build_corpus(const Common& c, const std::string& root, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(c);
  const auto catalog = ApiCatalog::load(cfg.catalog);
  const auto vocab = TokenVocabulary::load(cfg.vocabulary);
  const auto res = ingest(root, cfg, catalog, vocab, [&](const std::string& m) { err << m << "\n"; });
  write_corpus(res.train, cfg.train_corpus);
  write_corpus(res.valid, cfg.valid_corpus);
  const auto& st = res.stats;
  err << "files " << st.files << ", methods " << st.methods << ", projects " << st.projects << " ("
      << st.valid_projects << " held out)"
      << ", skipped: " << st.skipped_large << " large, " << st.skipped_syntax << " unparsable, " << st.skipped_no_api
      << " without API\n";
  if (res.valid_is_train) err << "warning: no project held out; validation uses the training set\n";
  out << "train\t" << res.train.size() << "\t" << cfg.train_corpus.string() << "\n";
  out << "valid\t" << res.valid.size() << "\t" << cfg.valid_corpus.string() << "\n";
  return kExitOk;
}

int cmd_train(const Common& c, const std::string& log_path, std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(c);
  require_file(cfg.train_corpus, "training corpus");
  require_file(cfg.valid_corpus, "validation corpus");
  const auto train_set = load_corpus(cfg.train_corpus);
  const auto valid_set = load_corpus(cfg.valid_corpus);
  err << "train " << train_set.size() << " instances, valid " << valid_set.size() << ", kernels "
      << kernels::to_string(kernels::active_backend()) << "\n";

  std::string log_text = "epoch\ttrain_loss\tvalid_top1\n";
  auto on_epoch = [&](const nn::EpochLog& e) {
    char line[128];
    std::snprintf(line, sizeof line, "%d\t%.9g\t%.6f\n", e.epoch, e.train_loss, e.valid_top1);
    log_text += line;
    err << "epoch " << line;
  };
  int best_epoch = 0;
  double best = 0;
  if (cfg.model.precision == nn::Precision::F64) {
    auto r = nn::train<double>(train_set, valid_set, cfg.model, on_epoch);
    nn::save_checkpoint(r.model, cfg.checkpoint);
    best_epoch = r.best_epoch;
    best = r.best_valid_top1;
  } else {
    auto r = nn::train<float>(train_set, valid_set, cfg.model, on_epoch);
    nn::save_checkpoint(r.model, cfg.checkpoint);
    best_epoch = r.best_epoch;
    best = r.best_valid_top1;
  }
  if (!log_path.empty()) emit(log_text, log_path, out);
  char line[160];
  std::snprintf(line, sizeof line, "best_epoch\t%d\nbest_valid_top1\t%.6f\n", best_epoch, best);
  out << line << "checkpoint\t" << cfg.checkpoint.string() << "\n";
  return kExitOk;
}

int cmd_recommend(const Common& c, const SourceArgs& s, int k, std::ostream& out, std::ostream&) {
  const auto cfg = load_config(c);
  if (k < 1) throw std::invalid_argument("-k must be at least 1");
  const auto catalog = ApiCatalog::load(cfg.catalog);
  const auto vocab = TokenVocabulary::load(cfg.vocabulary);
  const auto m = load_method(s.file, s.selector(), catalog, vocab);
  if (!m.graph.hole) throw MissingHoleError("no " + std::string(kHoleMarker) + " marker and no --hole-line");
  const auto net = load_model(cfg, cfg.checkpoint);
  const auto recs = std::visit([&](const auto& n) { return nn::predict(n, m.graph, m.tokens.full(), k); }, net);
  std::string data;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    char prob[32];
    std::snprintf(prob, sizeof prob, "%.6f", recs[i].probability);
    data += std::to_string(i + 1) + "\t" + recs[i].label + "\t" + prob + "\n";
  }
  emit(data, c.out, out);
  return kExitOk;
}

int cmd_evaluate(const Common& c, const std::string& baseline, const std::string& format, std::ostream& out,
                 std::ostream& err) {
  const auto cfg = load_config(c);
  if (cfg.test_corpus.empty()) throw std::invalid_argument("test_corpus is not configured");
  require_file(cfg.test_corpus, "test corpus");
  const auto test = load_corpus(cfg.test_corpus);
  const auto net = load_model(cfg, cfg.checkpoint);
  err << "evaluating " << test.size() << " instances\n";

  const auto results = std::visit([&](const auto& n) { return eval::rank_instances(n, test); }, net);
  std::vector<eval::EvalReport> reports;
  reports.push_back(eval::make_report(cfg.model.structure_only ? "structure-only" : "model", results, eval::kDefaultKs));
  if (!baseline.empty()) {
    require_file(baseline, "baseline corpus");
    const auto fb = eval::FrequencyBaseline::build(load_corpus(fs::path(baseline)));
    const auto base_results = fb.rank_instances(test);
    reports.push_back(eval::make_report("frequency", base_results, eval::kDefaultKs));
    reports.front().comparisons.push_back(
        {"frequency", eval::mann_whitney_u(eval::reciprocal_ranks(results), eval::reciprocal_ranks(base_results))});
  }
  const std::string text = format == "json" ? eval::format_json(reports) : eval::format_text(reports);
  emit(text, c.out.empty() && !cfg.report.empty() ? cfg.report.string() : c.out, out);
  return kExitOk;
}

}  // namespace

int exit_code_for(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const MultipleHolesError&) {
    return kExitHole;
  } catch (const SyntaxError&) {
    return kExitParse;
  } catch (const MissingHoleError&) {
    return kExitHole;
  } catch (const nn::NoHoleError&) {
    return kExitHole;
  } catch (const nn::CheckpointError&) {
    return kExitCheckpoint;
  } catch (const CheckpointMismatchError&) {
    return kExitCheckpoint;
  } catch (...) {
    return kExitGeneric;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"API recommendation from API context graphs and code tokens", "apirec"};
  app.require_subcommand(1);

  Common common;
  SourceArgs src;
  std::string root, log_path, baseline, format = "text";
  int k = 10;

  auto* extract = app.add_subcommand("extract-graph", "Print the API context graph of a method");
  auto* tokens = app.add_subcommand("tokens", "Print the code-token bag of a method");
  for (auto* cmd : {extract, tokens}) {
    add_common(cmd, common);
    cmd->add_option("file", src.file, "Java source file")->required();
    cmd->add_option("--method", src.method, "Method name (default: the one with a hole, else the first)");
    cmd->add_option("--hole-line", src.hole_line, "Insert a hole marker at this 1-based line")->check(CLI::PositiveNumber);
    cmd->add_option("--out", common.out, "Write output to a file");
  }

  auto* build = app.add_subcommand("build-corpus", "Build train/valid corpora from a source tree");
  add_common(build, common);
  build->add_option("root", root, "Directory of projects")->required();

  auto* train = app.add_subcommand("train", "Train a model and write a checkpoint");
  add_common(train, common);
  train->add_option("--log", log_path, "Write the per-epoch log (epoch, loss, valid top-1)");

  auto* recommend = app.add_subcommand("recommend", "Rank APIs for the hole of a method");
  add_common(recommend, common);
  recommend->add_option("file", src.file, "Java source file")->required();
  recommend->add_option("--method", src.method, "Method name");
  recommend->add_option("--hole-line", src.hole_line, "Insert a hole marker at this 1-based line")
      ->check(CLI::PositiveNumber);
  recommend->add_option("-k,--top", k, "Number of recommendations")->capture_default_str();
  recommend->add_option("--out", common.out, "Write output to a file");

  auto* evaluate = app.add_subcommand("evaluate", "Report top-k accuracy and MRR on a test corpus");
  add_common(evaluate, common);
  evaluate->add_option("--baseline", baseline, "Training corpus for a frequency baseline comparison");
  evaluate->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  evaluate->add_option("--out", common.out, "Write the report to a file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitGeneric;
  }

  try {
    if (extract->parsed()) return cmd_extract_graph(common, src, out, err);
    if (tokens->parsed()) return cmd_tokens(common, src, out, err);
    if (build->parsed()) return cmd_build_corpus(common, root, out, err);
    if (train->parsed()) return cmd_train(common, log_path, out, err);
    if (recommend->parsed()) return cmd_recommend(common, src, k, out, err);
    if (evaluate->parsed()) return cmd_evaluate(common, baseline, format, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(std::current_exception());
  }
  return kExitGeneric;
}

}  // namespace apirec::pipeline
