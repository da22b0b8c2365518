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

// Shift-reduce transition system for discontinuous mentions.
//
// The configuration is a buffer of unread tokens and a stack of spans, each
// span a canonical fragment list. Six actions exist:
//
//   SHIFT          push the first buffer token as a one-token span
//   OUT            drop the first buffer token
//   COMPLETE:y     pop the top span and emit it as a mention of type y
//   REDUCE         pop s0 and s1, push their union
//   LREDUCE        like REDUCE but s1 stays, beneath the new span
//   RREDUCE        like REDUCE but s0 stays, beneath the new span
//
// A sentence of N tokens is given a budget of 8N actions. Past the budget
// only COMPLETE is valid while the stack is non-empty and only OUT while it
// is empty, so every rollout terminates.

#ifndef DNER_TRANSITIONS_H_
#define DNER_TRANSITIONS_H_

#include <string>
#include <string_view>
#include <vector>

#include "dner/corpus.h"

namespace dner {

enum class ActionKind {
  kShift,
  kOut,
  kReduce,
  kLeftReduce,
  kRightReduce,
  kComplete,
};

struct Action {
  ActionKind kind = ActionKind::kShift;
  std::string type;  // COMPLETE only

  static Action Shift() { return {ActionKind::kShift, {}}; }
  static Action Out() { return {ActionKind::kOut, {}}; }
  static Action Reduce() { return {ActionKind::kReduce, {}}; }
  static Action LeftReduce() { return {ActionKind::kLeftReduce, {}}; }
  static Action RightReduce() { return {ActionKind::kRightReduce, {}}; }
  static Action Complete(std::string type) {
    return {ActionKind::kComplete, std::move(type)};
  }

  bool is_reduce() const {
    return kind == ActionKind::kReduce || kind == ActionKind::kLeftReduce ||
           kind == ActionKind::kRightReduce;
  }

  // "SHIFT", "OUT", "COMPLETE:TYPE", "REDUCE", "LREDUCE", "RREDUCE".
  std::string ToString() const;
  static Action Parse(std::string_view token);

  bool operator==(const Action &) const = default;
};

// Space separated action names, one sentence per line.
std::string FormatActions(const std::vector<Action> &actions);
std::vector<Action> ParseActions(std::string_view line);

// Dense numbering of the actions available for a fixed label set:
// SHIFT, OUT, REDUCE, LREDUCE, RREDUCE, then COMPLETE per label.
class ActionInventory {
 public:
  static constexpr int kNumStructural = 5;

  explicit ActionInventory(std::vector<std::string> types);

  int size() const { return kNumStructural + static_cast<int>(types_.size()); }
  const std::vector<std::string> &types() const { return types_; }

  // Throws Error for a COMPLETE label outside the inventory.
  int Index(const Action &action) const;
  Action At(int index) const;

 private:
  std::vector<std::string> types_;
};

struct Span {
  std::vector<Fragment> fragments;
  int id = 0;  // creation order within one rollout

  std::vector<int> tokens() const;
};

struct ParserState {
  int buffer_pos = 0;
  std::vector<Span> stack;  // top is back()
  std::vector<Mention> outputs;
  std::vector<Action> history;
  int step_count = 0;
  int next_span_id = 0;
};

inline int DefaultBudget(int sentence_len) { return 8 * sentence_len; }

ParserState InitialState(int sentence_len);

bool IsTerminal(const ParserState &state, int sentence_len);

// Validity of one action; COMPLETE labels are not checked against a label set.
bool IsValid(const ParserState &state, const Action &action, int sentence_len,
             int budget);

// All valid actions in inventory order.
std::vector<Action> ValidActions(const ParserState &state, int sentence_len,
                                 const std::vector<std::string> &types,
                                 int budget);

// Boolean mask over inventory indices.
std::vector<bool> ValidMask(const ParserState &state, int sentence_len,
                            const ActionInventory &inventory, int budget);

// Pure successor function. Throws Error when the action is invalid.
ParserState Apply(const ParserState &state, const Action &action,
                  int sentence_len, int budget);

// Runs the action sequence from the initial state and returns the sorted,
// duplicate-free output mentions. Throws Error naming the 0-based step of
// the first invalid action, or when the final state is not terminal.
// budget < 0 selects DefaultBudget(sentence_len).
std::vector<Mention> Decode(const std::vector<Action> &actions,
                            int sentence_len, int budget = -1);

struct OracleResult {
  std::vector<Action> actions;
  // Gold mentions the action sequence does not produce.
  std::vector<Mention> uncovered;
};

// Static oracle. Throws Error when one gold mention's tokens are a proper
// subset of another's (nested mentions).
OracleResult Oracle(const Sentence &sentence);

// Throws Error when the sentence contains nested mentions.
void CheckNotNested(const std::vector<Mention> &mentions);

struct TraceRecord {
  int step = 0;
  std::vector<std::string> stack;   // bottom to top, span tokens joined
  std::vector<std::string> buffer;  // unread tokens
  std::vector<Action> valid;
  Action chosen;
};

struct TraceReport {
  std::vector<TraceRecord> records;
  std::vector<Mention> outputs;
};

// Replays actions over the sentence, recording the configuration before
// every step. The label set for validity is the sentence's gold types plus
// the labels used by the actions.
TraceReport Trace(const Sentence &sentence, const std::vector<Action> &actions);

// One JSON object per record.
std::string FormatTraceJsonLines(const TraceReport &report);
// Aligned human readable table.
std::string FormatTraceTable(const TraceReport &report);

}  // namespace dner

#endif  // DNER_TRANSITIONS_H_
