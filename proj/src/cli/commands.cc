// Copyright 2026 The dner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "dner/corpus.h"
#include "dner/error.h"
#include "dner/eval.h"
#include "dner/neural/checkpoint.h"
#include "dner/neural/trainer.h"
#include "dner/run_config.h"
#include "dner/schemas.h"
#include "dner/text.h"
#include "dner/transitions.h"

namespace dner::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string format = "inline";
};

// Loads the config file and applies the global overrides.
RunConfig LoadConfig(const Globals &g) {
  RunConfig rc;
  if (!g.config_path.empty()) {
    try {
      rc = ParseRunConfig(ReadFile(g.config_path));
    } catch (const Error &e) {
      throw Error(g.config_path + ": " + e.what());
    }
  }
  if (g.seed) rc.scorer.seed = *g.seed;
  return rc;
}

std::string ReplaceExtension(const std::string &path, const std::string &ext) {
  fs::path p(path);
  p.replace_extension(ext);
  return p.string();
}

Corpus ReadStandoffPair(const std::string &txt, std::ostream &err) {
  const std::string ann = ReplaceExtension(txt, ".ann");
  StandoffResult r;
  try {
    r = ParseStandoff(ReadFile(txt), ReadFile(ann), {},
                      fs::path(txt).stem().string());
  } catch (const Error &e) {
    throw Error(ann + ": " + e.what());
  }
  for (const std::string &w : r.warnings) {
    err << "warning: " << ann << ": " << w << "\n";
  }
  return std::move(r.corpus);
}

Corpus ReadCorpus(const std::string &path, const std::string &format,
                  std::ostream &err) {
  if (format == "inline") {
    try {
      return ParseInline(ReadFile(path));
    } catch (const Error &e) {
      throw Error(path + ": " + e.what());
    }
  }
  if (format == "standoff") {
    if (fs::is_directory(path)) {
      std::vector<std::string> texts;
      for (const auto &entry : fs::directory_iterator(path)) {
        if (entry.path().extension() == ".txt") {
          texts.push_back(entry.path().string());
        }
      }
      std::sort(texts.begin(), texts.end());
      Corpus all;
      for (const std::string &t : texts) {
        Corpus c = ReadStandoffPair(t, err);
        for (Sentence &s : c.sentences) all.sentences.push_back(std::move(s));
      }
      return all;
    }
    const std::string txt = fs::path(path).extension() == ".ann"
                                ? ReplaceExtension(path, ".txt")
                                : path;
    return ReadStandoffPair(txt, err);
  }
  if (format == "tags") {
    Corpus c;
    try {
      int index = 0;
      for (TaggedSentence &t : ParseConll(ReadFile(path))) {
        Sentence s;
        s.mentions = DecodeBiohd(t.tags);
        s.tokens = std::move(t.tokens);
        s.sent_index = index++;
        c.sentences.push_back(std::move(s));
      }
    } catch (const Error &e) {
      throw Error(path + ": " + e.what());
    }
    return c;
  }
  throw Error("unknown format '" + format + "'");
}

std::string TagText(const Corpus &corpus, bool plain_bio) {
  std::string out;
  for (const Sentence &s : corpus.sentences) {
    out += FormatConll(s.tokens, plain_bio ? EncodeBio(s) : EncodeBiohd(s));
  }
  return out;
}

void WriteOutput(const std::string &path, const std::string &content,
                 std::ostream &out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    WriteFile(path, content);
  }
}

void WriteCorpus(const Corpus &corpus, const std::string &format,
                 const std::string &path, std::ostream &out) {
  if (format == "inline") {
    WriteOutput(path, WriteInline(corpus), out);
  } else if (format == "tags") {
    WriteOutput(path, TagText(corpus, false), out);
  } else if (format == "bio") {
    WriteOutput(path, TagText(corpus, true), out);
  } else if (format == "standoff") {
    if (path.empty() || path == "-") {
      throw Error("standoff output needs a file path");
    }
    const StandoffDocument doc = WriteStandoff(corpus);
    const std::string txt = fs::path(path).extension() == ".txt"
                                ? path
                                : path + ".txt";
    WriteFile(txt, doc.text);
    WriteFile(ReplaceExtension(txt, ".ann"), doc.ann);
  } else {
    throw Error("unknown output format '" + format + "'");
  }
}

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string SentenceId(const Sentence &s, size_t index) {
  if (s.doc_id.empty()) return std::to_string(index);
  return s.doc_id + ":" + std::to_string(s.sent_index);
}

// ---------------------------------------------------------------------------
// Commands.

void CmdStats(const Globals &g, const std::string &path, bool json,
              std::ostream &out, std::ostream &err) {
  const StatsReport r = ComputeStats(ReadCorpus(path, g.format, err));
  out << (json ? FormatStatsJsonLines(r) : FormatStatsText(r));
}

struct ConvertArgs {
  std::string input;
  std::string output = "-";
  std::string to = "inline";
  bool flatten = false;
  std::string resample;
  std::vector<double> split;
};

void CmdConvert(const Globals &g, const ConvertArgs &a, std::ostream &out,
                std::ostream &err) {
  const RunConfig rc = LoadConfig(g);
  Corpus c = ReadCorpus(a.input, g.format, err);
  if (a.flatten) c = FlattenForFlatModel(c);
  if (!a.resample.empty()) {
    ResampleMode mode;
    if (a.resample == "disc-only") {
      mode = ResampleMode::kDiscOnly;
    } else if (a.resample == "under") {
      mode = ResampleMode::kUnderSample;
    } else if (a.resample == "over") {
      mode = ResampleMode::kOverSample;
    } else {
      throw Error("unknown resample mode '" + a.resample + "'");
    }
    c = Resample(c, mode, rc.scorer.seed);
  }
  if (a.split.empty()) {
    WriteCorpus(c, a.to, a.output, out);
    return;
  }
  if (a.split.size() != 2) throw Error("--split takes TRAIN,DEV fractions");
  if (a.output.empty() || a.output == "-") {
    throw Error("--split needs an output path prefix");
  }
  const CorpusSplit parts = Split(c, a.split[0], a.split[1], rc.scorer.seed);
  WriteCorpus(parts.train, a.to, a.output + ".train", out);
  WriteCorpus(parts.dev, a.to, a.output + ".dev", out);
  WriteCorpus(parts.test, a.to, a.output + ".test", out);
}

struct TrainArgs {
  std::string train, dev, checkpoint;
  std::vector<std::string> sets;
};

void ApplySets(RunConfig &rc, const std::vector<std::string> &sets) {
  for (const std::string &kv : sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) throw Error("--set expects key=value");
    rc.Set(std::string(Trim(kv.substr(0, eq))),
           std::string(Trim(kv.substr(eq + 1))));
  }
}

std::optional<ExternalVectors> ReadVectors(const std::string &path,
                                           const Corpus &corpus, int dim) {
  if (dim == 0) return std::nullopt;
  if (path.empty()) throw Error("external_vec_dim is set but no vector file given");
  ExternalVectors v;
  try {
    v = ParseExternalVectors(ReadFile(path));
    CheckExternalVectors(v, corpus, dim);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
  return v;
}

void CmdTrain(const Globals &g, const TrainArgs &a, std::ostream &out,
              std::ostream &err) {
  RunConfig rc = LoadConfig(g);
  ApplySets(rc, a.sets);
  if (g.seed) rc.scorer.seed = *g.seed;
  if (!a.train.empty()) rc.train = a.train;
  if (!a.dev.empty()) rc.dev = a.dev;
  if (!a.checkpoint.empty()) rc.checkpoint = a.checkpoint;
  if (rc.train.empty()) throw Error("no training corpus (set train)");
  if (rc.checkpoint.empty()) throw Error("no checkpoint path (set checkpoint)");
  rc.scorer.Validate();
  err << "# resolved config\n" << rc.Resolved();

  const Corpus train = ReadCorpus(rc.train, g.format, err);
  std::optional<Corpus> dev;
  if (!rc.dev.empty()) dev = ReadCorpus(rc.dev, g.format, err);
  const int dim = rc.scorer.external_vec_dim;
  const std::optional<ExternalVectors> train_vec =
      ReadVectors(rc.train_vectors, train, dim);
  std::optional<ExternalVectors> dev_vec;
  if (dev) dev_vec = ReadVectors(rc.dev_vectors, *dev, dim);

  TrainInputs in;
  in.train = &train;
  in.dev = dev ? &*dev : nullptr;
  in.train_external = train_vec ? &*train_vec : nullptr;
  in.dev_external = dev_vec ? &*dev_vec : nullptr;
  const std::string last_path = rc.checkpoint + ".last";
  in.on_epoch = [&](const EpochLog &log, const Model &model) {
    char buf[128];
    if (log.has_dev) {
      std::snprintf(buf, sizeof(buf), "epoch %d loss %.6f dev_f1 %.6f\n",
                    log.epoch, log.loss, log.dev_f1);
    } else {
      std::snprintf(buf, sizeof(buf), "epoch %d loss %.6f\n", log.epoch,
                    log.loss);
    }
    out << buf << std::flush;
    SaveModel(model, last_path);
  };
  const TrainResult r = Train(in, rc.scorer);
  SaveModel(r.best, rc.checkpoint);
  if (rc.scorer.epochs == 0) SaveModel(r.last, last_path);
  out << "best_epoch " << r.best_epoch << "\n";
  out << "uncovered_mentions " << r.uncovered_mentions << "\n";
  out << "nested_sentences " << r.nested_sentences << "\n";
}

struct PredictArgs {
  std::string input, output = "-", checkpoint, vectors;
};

void CmdPredict(const Globals &g, const PredictArgs &a, std::ostream &out,
                std::ostream &err) {
  const RunConfig rc = LoadConfig(g);
  const std::string ckpt = a.checkpoint.empty() ? rc.checkpoint : a.checkpoint;
  if (ckpt.empty()) throw Error("no checkpoint given");
  const std::string input = a.input.empty() ? rc.test : a.input;
  if (input.empty()) throw Error("no input corpus given");
  const Model model = LoadModel(ckpt);
  const Corpus corpus = ReadCorpus(input, g.format, err);
  const std::optional<ExternalVectors> vec = ReadVectors(
      a.vectors.empty() ? rc.test_vectors : a.vectors, corpus,
      model.config.external_vec_dim);
  const Corpus pred = PredictCorpus(model, corpus, vec ? &*vec : nullptr);
  WriteOutput(a.output, WriteInline(pred), out);
}

struct EvaluateArgs {
  std::string gold, pred, output;
  bool json = false;
  bool count_continuous = false;
};

void CmdEvaluate(const Globals &g, const EvaluateArgs &a, std::ostream &out,
                 std::ostream &err) {
  const RunConfig rc = LoadConfig(g);
  const Corpus gold = ReadCorpus(a.gold, g.format, err);
  const Corpus pred = ReadCorpus(a.pred, "inline", err);
  DiscOnlyOptions opt;
  opt.count_continuous_predictions =
      a.count_continuous || rc.disc_only_count_continuous;
  const EvalReport r = Evaluate(gold, pred, opt);
  const std::string text = a.json ? FormatReportJson(r) : FormatReportText(r);
  WriteOutput(a.output.empty() ? rc.report : a.output, text, out);
}

void CmdOracleCheck(const Globals &g, const std::string &path, bool verbose,
                    std::ostream &out, std::ostream &err) {
  const Corpus c = ReadCorpus(path, g.format, err);
  int64_t mentions = 0, covered = 0, nested = 0, failures = 0;
  int64_t continuous_uncovered = 0;
  std::array<int64_t, kNumOverlapCategories> by_cat{};
  std::string details;
  for (size_t i = 0; i < c.size(); ++i) {
    const Sentence &s = c.sentences[i];
    OracleResult r;
    try {
      r = Oracle(s);
    } catch (const Error &e) {
      ++nested;
      mentions += static_cast<int64_t>(s.mentions.size());
      details += "nested\t" + SentenceId(s, i) + "\t" + e.what() + "\n";
      continue;
    }
    mentions += static_cast<int64_t>(s.mentions.size());
    covered += static_cast<int64_t>(s.mentions.size() - r.uncovered.size());
    std::vector<Mention> gold = s.mentions, missing = r.uncovered, expect;
    std::sort(gold.begin(), gold.end());
    std::sort(missing.begin(), missing.end());
    std::set_difference(gold.begin(), gold.end(), missing.begin(),
                        missing.end(), std::back_inserter(expect));
    if (Decode(r.actions, s.size()) != expect) {
      ++failures;
      details += "roundtrip_failure\t" + SentenceId(s, i) + "\n";
    }
    for (const Mention &m : r.uncovered) {
      std::string cat = "continuous";
      if (m.discontinuous()) {
        const size_t k = std::find(s.mentions.begin(), s.mentions.end(), m) -
                         s.mentions.begin();
        const OverlapCategory oc = ClassifyOverlapAt(s.mentions, k);
        ++by_cat[static_cast<int>(oc)];
        cat = OverlapCategoryName(oc);
      } else {
        ++continuous_uncovered;
      }
      details += "uncovered\t" + SentenceId(s, i) + "\t" + FormatMention(m) +
                 "\t" + cat + "\n";
    }
  }
  out << "sentences " << c.size() << "\n";
  out << "mentions " << mentions << "\n";
  out << "covered " << covered << "\n";
  out << "coverage "
      << Percent(mentions > 0 ? 100.0 * covered / mentions : 100.0) << "\n";
  out << "nested_sentences " << nested << "\n";
  out << "roundtrip_failures " << failures << "\n";
  out << "uncovered_continuous " << continuous_uncovered << "\n";
  for (int k = 0; k < kNumOverlapCategories; ++k) {
    out << "uncovered_" << OverlapCategoryName(static_cast<OverlapCategory>(k))
        << " " << by_cat[k] << "\n";
  }
  if (verbose) out << details;
}

struct TraceArgs {
  std::string input;
  int sentence = 0;
  std::string actions;
  bool json = false;
};

void CmdTrace(const Globals &g, const TraceArgs &a, std::ostream &out,
              std::ostream &err) {
  const Corpus c = ReadCorpus(a.input, g.format, err);
  if (a.sentence < 0 || a.sentence >= static_cast<int>(c.size())) {
    throw Error("sentence index " + std::to_string(a.sentence) +
                " out of range (corpus has " + std::to_string(c.size()) +
                " sentences)");
  }
  const Sentence &s = c.sentences[a.sentence];
  const std::vector<Action> actions =
      a.actions.empty() ? Oracle(s).actions : ParseActions(a.actions);
  const TraceReport r = Trace(s, actions);
  out << (a.json ? FormatTraceJsonLines(r) : FormatTraceTable(r));
}

}  // namespace

int Main(const std::vector<std::string> &args, std::ostream &out,
         std::ostream &err) {
  CLI::App app{"Transition-based recognition of discontinuous mentions"};
  app.name("dner");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "Run configuration file");
  app.add_option("--seed", g.seed, "Random seed (overrides the config)");
  app.add_option("--format", g.format, "Corpus format")
      ->check(CLI::IsMember({"inline", "standoff", "tags"}));

  bool json = false;
  std::string stats_path;
  CLI::App *stats = app.add_subcommand("stats", "Descriptive corpus statistics");
  stats->add_option("corpus", stats_path)->required();
  stats->add_flag("--json", json, "JSON lines instead of key=value");

  ConvertArgs conv;
  CLI::App *convert = app.add_subcommand("convert", "Convert and transform corpora");
  convert->add_option("input", conv.input)->required();
  convert->add_option("-o,--output", conv.output, "Output path, '-' for stdout");
  convert->add_option("--to", conv.to, "Output format")
      ->check(CLI::IsMember({"inline", "standoff", "tags", "bio"}));
  convert->add_flag("--flatten", conv.flatten,
                    "Covering spans for discontinuous mentions, merged overlaps");
  convert->add_option("--resample", conv.resample, "disc-only, under or over")
      ->check(CLI::IsMember({"disc-only", "under", "over"}));
  convert->add_option("--split", conv.split, "TRAIN,DEV fractions")
      ->delimiter(',');

  TrainArgs tr;
  CLI::App *train = app.add_subcommand("train", "Train a scorer");
  train->add_option("--train", tr.train);
  train->add_option("--dev", tr.dev);
  train->add_option("--checkpoint", tr.checkpoint);
  train->add_option("--set", tr.sets, "Config override key=value");

  PredictArgs pr;
  CLI::App *predict = app.add_subcommand("predict", "Tag a corpus");
  predict->add_option("input", pr.input);
  predict->add_option("-o,--output", pr.output);
  predict->add_option("--checkpoint", pr.checkpoint);
  predict->add_option("--vectors", pr.vectors, "External token vectors");

  EvaluateArgs ev;
  CLI::App *evaluate = app.add_subcommand("evaluate", "Score predictions");
  evaluate->add_option("gold", ev.gold)->required();
  evaluate->add_option("pred", ev.pred)->required();
  evaluate->add_option("-o,--output", ev.output);
  evaluate->add_flag("--json", ev.json);
  evaluate->add_flag("--count-continuous", ev.count_continuous,
                     "Keep continuous predictions in disc-only precision");

  std::string oc_path;
  bool verbose = false;
  CLI::App *oracle = app.add_subcommand("oracle-check", "Oracle coverage");
  oracle->add_option("corpus", oc_path)->required();
  oracle->add_flag("-v,--verbose", verbose, "List uncovered mentions");

  TraceArgs ta;
  CLI::App *trace = app.add_subcommand("trace", "Step-by-step parser states");
  trace->add_option("corpus", ta.input)->required();
  trace->add_option("--sentence", ta.sentence, "0-based sentence index");
  trace->add_option("--actions", ta.actions, "Actions, default oracle");
  trace->add_flag("--json", ta.json);

  std::vector<const char *> argv = {"dner"};
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (stats->parsed()) {
      CmdStats(g, stats_path, json, out, err);
    } else if (convert->parsed()) {
      CmdConvert(g, conv, out, err);
    } else if (train->parsed()) {
      CmdTrain(g, tr, out, err);
    } else if (predict->parsed()) {
      CmdPredict(g, pr, out, err);
    } else if (evaluate->parsed()) {
      CmdEvaluate(g, ev, out, err);
    } else if (oracle->parsed()) {
      CmdOracleCheck(g, oc_path, verbose, out, err);
    } else if (trace->parsed()) {
      CmdTrace(g, ta, out, err);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace dner::cli
