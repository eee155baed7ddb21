// Copyright 2026 The Constellation OLAP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "constellation/algebra.h"
#include "constellation/errors.h"
#include "constellation/restriction.h"
#include "constellation/value.h"

namespace constellation::mdql {

// Position of a command in its source. Spans never take part in AST equality.
struct SourceSpan {
  size_t line = 1;
  size_t column = 1;
  size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) { return true; }
};

// "@current" (index 0) or "@N", the N-th result of the last TSPLIT/SPLIT.
struct ContextRef {
  size_t index = 0;

  friend bool operator==(const ContextRef&, const ContextRef&) = default;
};

struct DisplayCmd {
  std::string fact;
  std::vector<std::string> dims;
  SourceSpan span;
  friend bool operator==(const DisplayCmd&, const DisplayCmd&) = default;
};

struct DRotateCmd {
  std::string fact;
  std::string dim_a;
  std::string dim_b;
  SourceSpan span;
  friend bool operator==(const DRotateCmd&, const DRotateCmd&) = default;
};

// Makes `hier` the current hierarchy of `dim`.
struct HRotateCmd {
  std::string dim;
  std::string hier;
  SourceSpan span;
  friend bool operator==(const HRotateCmd&, const HRotateCmd&) = default;
};

struct FRotateCmd {
  std::string fact_a;
  std::string fact_b;
  SourceSpan span;
  friend bool operator==(const FRotateCmd&, const FRotateCmd&) = default;
};

struct SwitchCmd {
  std::string dim;
  std::string param;
  Literal value_a;
  Literal value_b;
  SourceSpan span;
  friend bool operator==(const SwitchCmd&, const SwitchCmd&) = default;
};

struct DrillDownCmd {
  std::string dim;
  std::string param;
  SourceSpan span;
  friend bool operator==(const DrillDownCmd&, const DrillDownCmd&) = default;
};

struct RollUpCmd {
  std::string dim;
  std::string param;
  SourceSpan span;
  friend bool operator==(const RollUpCmd&, const RollUpCmd&) = default;
};

struct PushCmd {
  std::string dim;
  std::string param;
  std::string fact;
  SourceSpan span;
  friend bool operator==(const PushCmd&, const PushCmd&) = default;
};

struct PullCmd {
  std::string fact;
  std::string measure;
  std::string dim;
  SourceSpan span;
  friend bool operator==(const PullCmd&, const PullCmd&) = default;
};

struct TSplitCmd {
  SourceSpan span;
  friend bool operator==(const TSplitCmd&, const TSplitCmd&) = default;
};

struct SplitCmd {
  std::string dim;
  std::string param;
  SourceSpan span;
  friend bool operator==(const SplitCmd&, const SplitCmd&) = default;
};

// Predicates carry `dim` set to the sliced dimension.
struct SliceCmd {
  std::string dim;
  std::vector<Predicate> preds;
  SourceSpan span;
  friend bool operator==(const SliceCmd&, const SliceCmd&) = default;
};

struct CombineCmd {
  algebra::SetOp op = algebra::SetOp::kUnion;
  ContextRef left;
  ContextRef right;
  SourceSpan span;
  friend bool operator==(const CombineCmd&, const CombineCmd&) = default;
};

struct ShowCmd {
  SourceSpan span;
  friend bool operator==(const ShowCmd&, const ShowCmd&) = default;
};

struct ExportCmd {
  std::string path;
  SourceSpan span;
  friend bool operator==(const ExportCmd&, const ExportCmd&) = default;
};

struct UndoCmd {
  SourceSpan span;
  friend bool operator==(const UndoCmd&, const UndoCmd&) = default;
};

using Command =
    std::variant<DisplayCmd, DRotateCmd, HRotateCmd, FRotateCmd, SwitchCmd, DrillDownCmd,
                 RollUpCmd, PushCmd, PullCmd, TSplitCmd, SplitCmd, SliceCmd, CombineCmd, ShowCmd,
                 ExportCmd, UndoCmd>;

// Lower-case tag: "display", "drotate", ...
std::string_view CommandName(const Command& cmd);
const SourceSpan& SpanOf(const Command& cmd);

// True for commands that never change a session (SHOW, EXPORT).
bool IsQuery(const Command& cmd);

class ParseError : public OlapError {
 public:
  ParseError(size_t line, size_t column, std::set<std::string> expected, const std::string& found);

  size_t line() const { return line_; }
  size_t column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  size_t line_;
  size_t column_;
  std::set<std::string> expected_;
};

// Parses exactly one command; a trailing "#" comment is allowed. `line` is
// the line number reported in spans and errors.
Command Parse(std::string_view text, size_t line = 1);

// One command per line; blank lines and "#" comments are skipped.
std::vector<Command> ParseScript(std::string_view text);

// Canonical text; Parse(PrintCommand(c)) == c.
std::string PrintCommand(const Command& cmd);

// {"op": "drotate", "fact": ..., "dA": ..., "dB": ...}; argument names follow
// the algebra operators.
nlohmann::json EncodeCommand(const Command& cmd);
// Malformed documents raise OlapError with code ParseError.
Command DecodeCommand(const nlohmann::json& doc);

struct Outcome {
  AnalysisContext context;
  std::vector<AnalysisContext> splits;
};

// Applies `cmd` to `ctx`; `splits` resolves "@N" references and is carried
// over unless the command splits. UNDO is a session concern (Unsupported).
Outcome Evaluate(const AnalysisContext& ctx, const std::vector<AnalysisContext>& splits,
                 const Command& cmd);

struct HistoryEntry {
  Command command;
  AnalysisContext context;
  std::vector<AnalysisContext> splits;
};

// History of state-changing commands over an initial context.
class Session {
 public:
  explicit Session(AnalysisContext initial) : initial_(std::move(initial)) {}

  const AnalysisContext& initial() const { return initial_; }
  const AnalysisContext& current() const;
  const std::vector<AnalysisContext>& splits() const;
  const std::vector<HistoryEntry>& history() const { return history_; }

  // Atomic: on error the session is left untouched. UNDO pops one entry
  // (NothingToUndo when empty); SHOW and EXPORT leave the session unchanged.
  void Apply(const Command& cmd);

  // Re-evaluates the history from the initial context.
  Outcome Replay() const;

 private:
  AnalysisContext initial_;
  std::vector<HistoryEntry> history_;
};

}  // namespace constellation::mdql
