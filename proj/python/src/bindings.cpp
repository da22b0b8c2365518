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


// Python bindings over the corpus, transition, schema, evaluation and model
// entry points. Reports cross the boundary as JSON strings and are decoded on
// the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "dner/corpus.h"
#include "dner/error.h"
#include "dner/eval.h"
#include "dner/neural/checkpoint.h"
#include "dner/neural/scorer.h"
#include "dner/neural/trainer.h"
#include "dner/schemas.h"
#include "dner/synthetic.h"
#include "dner/transitions.h"

namespace py = pybind11;

namespace dner {
namespace {

using FragmentList = std::vector<std::pair<int, int>>;

FragmentList ToPairs(const std::vector<Fragment> &fragments) {
  FragmentList out;
  for (const Fragment &f : fragments) out.emplace_back(f.start, f.end);
  return out;
}

Mention MakeMention(const std::string &type, const FragmentList &pairs) {
  std::vector<Fragment> fragments;
  for (const auto &[s, e] : pairs) fragments.push_back({s, e});
  return Mention::Make(type, std::move(fragments));
}

std::vector<std::string> ActionStrings(const std::vector<Action> &actions) {
  std::vector<std::string> out;
  for (const Action &a : actions) out.push_back(a.ToString());
  return out;
}

std::vector<Action> ParseActionList(const std::vector<std::string> &items) {
  std::vector<Action> out;
  for (const std::string &s : items) out.push_back(Action::Parse(s));
  return out;
}

std::vector<std::string> TagStrings(const TagSequence &tags) {
  std::vector<std::string> out;
  for (const Tag &t : tags) out.push_back(t.ToString());
  return out;
}

TagSequence ParseTagList(const std::vector<std::string> &items) {
  TagSequence out;
  for (const std::string &s : items) out.push_back(Tag::Parse(s));
  return out;
}

py::dict StatsDict(const StatsReport &r) {
  py::dict d;
  d["documents"] = r.documents;
  d["sentences"] = r.sentences;
  d["tokens"] = r.tokens;
  d["mentions"] = r.mentions;
  d["disc_mentions"] = r.disc_mentions;
  d["disc_percentage"] = r.disc_percentage;
  d["avg_mention_length"] = r.avg_mention_length;
  d["avg_disc_mention_length"] = r.avg_disc_mention_length;
  d["avg_interval_length"] = r.avg_interval_length;
  d["component_histogram"] = r.component_histogram;
  d["continuous_overlap"] = r.continuous_overlap;
  return d;
}

}  // namespace
}  // namespace dner

PYBIND11_MODULE(_dner, m) {
  using namespace dner;
  m.doc() = "Transition-based recognition of discontinuous mentions.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Mention>(m, "Mention")
      .def(py::init(&MakeMention), py::arg("type"), py::arg("fragments"))
      .def_readonly("type", &Mention::type)
      .def_property_readonly("fragments",
                             [](const Mention &x) { return ToPairs(x.fragments); })
      .def_property_readonly("length", &Mention::length)
      .def_property_readonly("is_discontinuous",
                             [](const Mention &x) { return x.fragments.size() > 1; })
      .def("overlaps", &Mention::Overlaps)
      .def("__eq__", [](const Mention &a, const Mention &b) { return a == b; })
      .def("__hash__",
           [](const Mention &x) { return py::hash(py::str(FormatMention(x))); })
      .def("__repr__",
           [](const Mention &x) { return "Mention(" + FormatMention(x) + ")"; });

  py::class_<Sentence>(m, "Sentence")
      .def(py::init([](std::vector<std::string> tokens,
                       std::vector<Mention> mentions) {
             Sentence s;
             s.tokens = std::move(tokens);
             s.mentions = std::move(mentions);
             Validate(s);
             SortMentions(s);
             return s;
           }),
           py::arg("tokens"), py::arg("mentions") = std::vector<Mention>{})
      .def_readonly("tokens", &Sentence::tokens)
      .def_readonly("mentions", &Sentence::mentions)
      .def_readonly("doc_id", &Sentence::doc_id)
      .def("has_discontinuous", &Sentence::HasDiscontinuous)
      .def("__len__", [](const Sentence &s) { return s.tokens.size(); });

  py::class_<Corpus>(m, "Corpus")
      .def(py::init([](std::vector<Sentence> sentences) {
             Corpus c;
             c.sentences = std::move(sentences);
             return c;
           }),
           py::arg("sentences"))
      .def_readonly("sentences", &Corpus::sentences)
      .def("__len__", [](const Corpus &c) { return c.sentences.size(); })
      .def("__getitem__", [](const Corpus &c, size_t i) {
        if (i >= c.sentences.size()) throw py::index_error();
        return c.sentences[i];
      });

  m.def("parse_inline", [](const std::string &text) { return ParseInline(text); },
        py::arg("text"));
  m.def("write_inline", &WriteInline, py::arg("corpus"));
  m.def("compute_stats",
        [](const Corpus &c) { return StatsDict(ComputeStats(c)); },
        py::arg("corpus"));
  m.def("flatten", &FlattenForFlatModel, py::arg("corpus"));
  m.def(
      "generate_templated",
      [](int n, uint64_t seed, bool long_gap, double disc_rate) {
        TemplateOptions o;
        o.num_sentences = n;
        o.seed = seed;
        o.style = long_gap ? TemplateStyle::kLongGap : TemplateStyle::kStandard;
        o.disc_rate = disc_rate;
        return GenerateTemplated(o);
      },
      py::arg("num_sentences"), py::arg("seed") = 1, py::arg("long_gap") = false,
      py::arg("disc_rate") = 0.5);

  m.def(
      "oracle",
      [](const Sentence &s) {
        OracleResult r = Oracle(s);
        return std::make_pair(ActionStrings(r.actions), r.uncovered);
      },
      py::arg("sentence"),
      "Returns (actions, uncovered mentions).");
  m.def(
      "decode_actions",
      [](const std::vector<std::string> &actions, int n) {
        return Decode(ParseActionList(actions), n);
      },
      py::arg("actions"), py::arg("sentence_len"));

  m.def(
      "encode_bio", [](const Sentence &s) { return TagStrings(EncodeBio(s)); },
      py::arg("sentence"));
  m.def(
      "encode_biohd",
      [](const Sentence &s) { return TagStrings(EncodeBiohd(s)); },
      py::arg("sentence"));
  m.def(
      "decode_biohd",
      [](const std::vector<std::string> &tags) {
        return DecodeBiohd(ParseTagList(tags));
      },
      py::arg("tags"));

  m.def(
      "evaluate_json",
      [](const Corpus &gold, const Corpus &pred) {
        return FormatReportJson(Evaluate(gold, pred));
      },
      py::arg("gold"), py::arg("pred"));

  py::class_<ScorerConfig>(m, "ScorerConfig")
      .def(py::init<>())
      .def_readwrite("word_dim", &ScorerConfig::word_dim)
      .def_readwrite("char_dim", &ScorerConfig::char_dim)
      .def_readwrite("char_cnn_window", &ScorerConfig::char_cnn_window)
      .def_readwrite("char_filters", &ScorerConfig::char_filters)
      .def_readwrite("hidden_dim", &ScorerConfig::hidden_dim)
      .def_readwrite("stack_dim", &ScorerConfig::stack_dim)
      .def_readwrite("action_dim", &ScorerConfig::action_dim)
      .def_readwrite("attention", &ScorerConfig::attention)
      .def_readwrite("buffer_front", &ScorerConfig::buffer_front)
      .def_readwrite("learning_rate", &ScorerConfig::learning_rate)
      .def_readwrite("clip_norm", &ScorerConfig::clip_norm)
      .def_readwrite("epochs", &ScorerConfig::epochs)
      .def_readwrite("seed", &ScorerConfig::seed)
      .def_readwrite("budget_multiplier", &ScorerConfig::budget_multiplier)
      .def("to_json", &ConfigToJson);

  py::class_<Model>(m, "Model")
      .def_readonly("types", &Model::types)
      .def_readonly("config", &Model::config)
      .def("predict", [](const Model &x, const Sentence &s) { return Predict(x, s); },
           py::arg("sentence"))
      .def("predict_corpus",
           [](const Model &x, const Corpus &c) { return PredictCorpus(x, c); },
           py::arg("corpus"))
      .def("save", [](const Model &x, const std::string &p) { SaveModel(x, p); },
           py::arg("path"))
      .def("to_bytes", [](const Model &x) { return py::bytes(SerializeModel(x)); });

  m.def("load_model", &LoadModel, py::arg("path"));
  m.def("model_from_bytes",
        [](const py::bytes &b) { return DeserializeModel(std::string(b)); },
        py::arg("data"));

  m.def(
      "train",
      [](const Corpus &train, const Corpus *dev, const ScorerConfig &config) {
        TrainInputs in;
        in.train = &train;
        in.dev = dev;
        TrainResult r;
        {
          py::gil_scoped_release release;
          r = Train(in, config);
        }
        std::vector<double> losses;
        for (const EpochLog &e : r.log) losses.push_back(e.loss);
        return py::make_tuple(std::move(r.best), r.best_epoch, losses);
      },
      py::arg("train"), py::arg("dev") = nullptr,
      py::arg("config") = ScorerConfig(),
      "Returns (best model, best epoch, per-epoch training loss).");
}
