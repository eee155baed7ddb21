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

#include "constellation/mdql.h"

#include <cctype>
#include <charconv>
#include <optional>
#include <utility>

namespace constellation::mdql {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string Upper(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string DescribeExpected(const std::set<std::string>& expected) {
  std::string out;
  size_t i = 0;
  for (const auto& e : expected) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += e;
    ++i;
  }
  return out;
}

std::string ParseMessage(size_t line, size_t column, const std::set<std::string>& expected,
                         const std::string& found) {
  std::string where = std::to_string(line) + ":" + std::to_string(column) + ": ";
  if (expected.empty()) return where + "unexpected " + found;
  return where + "expected " + DescribeExpected(expected) + ", found " + found;
}

}  // namespace

ParseError::ParseError(size_t line, size_t column, std::set<std::string> expected,
                       const std::string& found)
    : OlapError(ErrorCode::kParseError, ParseMessage(line, column, expected, found),
                std::to_string(line) + ":" + std::to_string(column)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class TokenKind { kIdent, kString, kNumber, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // identifier, unescaped string, or punctuation
  double number = 0;
  size_t column = 1;
  size_t end = 0;  // offset one past the token

  std::string Describe() const {
    switch (kind) {
      case TokenKind::kIdent: return "'" + text + "'";
      case TokenKind::kString: return "string \"" + text + "\"";
      case TokenKind::kNumber: return "number " + text;
      case TokenKind::kPunct: return "'" + text + "'";
      case TokenKind::kEnd: return "end of input";
    }
    return {};
  }
};

bool IsIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool IsIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> Lex(std::string_view text, size_t line) {
  std::vector<Token> tokens;
  size_t i = 0;
  auto fail = [&](size_t at, const std::string& what) -> void {
    throw ParseError(line, at + 1, {}, what);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '#') break;
    Token tok;
    tok.column = i + 1;
    size_t start = i;
    if (IsIdentStart(c)) {
      while (i < text.size() && IsIdentChar(text[i])) ++i;
      tok.kind = TokenKind::kIdent;
      tok.text = std::string(text.substr(start, i - start));
    } else if (IsDigit(c) || (c == '-' && i + 1 < text.size() && IsDigit(text[i + 1]))) {
      if (c == '-') ++i;
      while (i < text.size() && IsDigit(text[i])) ++i;
      if (i + 1 < text.size() && text[i] == '.' && IsDigit(text[i + 1])) {
        ++i;
        while (i < text.size() && IsDigit(text[i])) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < text.size() && IsDigit(text[j])) {
          i = j;
          while (i < text.size() && IsDigit(text[i])) ++i;
        }
      }
      if (i < text.size() && IsIdentChar(text[i])) {
        fail(start, "malformed number '" + std::string(text.substr(start, i + 1 - start)) + "'");
      }
      tok.kind = TokenKind::kNumber;
      tok.text = std::string(text.substr(start, i - start));
      auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.number);
      if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
        fail(start, "number out of range '" + tok.text + "'");
      }
    } else if (c == '"') {
      ++i;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '"') {
          closed = true;
          ++i;
          break;
        }
        if (d == '\n' || d == '\r') break;
        if (d == '\\') {
          if (i + 1 < text.size() && (text[i + 1] == '"' || text[i + 1] == '\\')) {
            tok.text.push_back(text[i + 1]);
            i += 2;
            continue;
          }
          fail(i, "escape sequence (only \\\" and \\\\ are allowed)");
        }
        tok.text.push_back(d);
        ++i;
      }
      if (!closed) fail(start, "unterminated string literal");
      tok.kind = TokenKind::kString;
    } else {
      static constexpr std::string_view kTwo[] = {"!=", "<>", "<=", ">="};
      tok.kind = TokenKind::kPunct;
      for (auto two : kTwo) {
        if (text.substr(i, 2) == two) tok.text = std::string(two);
      }
      if (tok.text.empty()) {
        if (std::string_view(":,.()@=<>").find(c) == std::string_view::npos) {
          fail(i, "character '" + std::string(1, c) + "'");
        }
        tok.text = std::string(1, c);
      }
      i += tok.text.size();
    }
    tok.end = i;
    tokens.push_back(std::move(tok));
  }
  Token end;
  end.column = tokens.empty() ? 1 : tokens.back().end + 1;
  end.end = end.column - 1;
  tokens.push_back(end);
  return tokens;
}

constexpr std::string_view kCommandKeywords[] = {
    "DISPLAY", "DROTATE", "HROTATE", "FROTATE", "SWITCH", "DRILLDOWN", "ROLLUP", "PUSH",
    "PULL",    "SLICE",   "TSPLIT",  "SPLIT",   "COMBINE", "SHOW",     "EXPORT", "UNDO"};

class Parser {
 public:
  Parser(std::string_view text, size_t line) : tokens_(Lex(text, line)), line_(line) {}

  Command ParseCommand() {
    const Token& head = Peek();
    Command cmd = ParseBody();
    ExpectEnd();
    SourceSpan span{line_, head.column, tokens_[pos_ - 1].end - (head.column - 1)};
    std::visit([&](auto& c) { c.span = span; }, cmd);
    return cmd;
  }

 private:
  Command ParseBody() {
    if (Peek().kind != TokenKind::kIdent) Fail(CommandKeywords());
    std::string kw = Upper(Peek().text);
    if (kw == "DISPLAY") {
      Next();
      DisplayCmd c;
      c.fact = Ident("fact");
      if (AcceptKeyword("ON")) {
        c.dims.push_back(Ident("dimension"));
        if (AcceptPunct(",")) c.dims.push_back(Ident("dimension"));
      }
      return c;
    }
    if (kw == "DROTATE") {
      Next();
      DRotateCmd c;
      c.fact = Ident("fact");
      Punct(":");
      c.dim_a = Ident("dimension");
      Keyword("WITH");
      c.dim_b = Ident("dimension");
      return c;
    }
    if (kw == "HROTATE") {
      Next();
      HRotateCmd c;
      c.dim = Ident("dimension");
      Keyword("TO");
      c.hier = Ident("hierarchy");
      return c;
    }
    if (kw == "FROTATE") {
      Next();
      FRotateCmd c;
      c.fact_a = Ident("fact");
      Keyword("WITH");
      c.fact_b = Ident("fact");
      return c;
    }
    if (kw == "SWITCH") {
      Next();
      SwitchCmd c;
      c.dim = Ident("dimension");
      Punct(".");
      c.param = Ident("parameter");
      Keyword("VALUES");
      c.value_a = ParseLiteral();
      Punct(",");
      c.value_b = ParseLiteral();
      return c;
    }
    if (kw == "DRILLDOWN" || kw == "ROLLUP") {
      Next();
      std::string dim = Ident("dimension");
      Keyword("TO");
      std::string param = Ident("parameter");
      if (kw == "DRILLDOWN") return DrillDownCmd{dim, param, {}};
      return RollUpCmd{dim, param, {}};
    }
    if (kw == "PUSH") {
      Next();
      PushCmd c;
      c.dim = Ident("dimension");
      Punct(".");
      c.param = Ident("parameter");
      Keyword("INTO");
      c.fact = Ident("fact");
      return c;
    }
    if (kw == "PULL") {
      Next();
      PullCmd c;
      c.fact = Ident("fact");
      Punct(".");
      c.measure = Ident("measure");
      Keyword("INTO");
      c.dim = Ident("dimension");
      return c;
    }
    if (kw == "SLICE") {
      Next();
      SliceCmd c;
      c.dim = Ident("dimension");
      Keyword("WHERE");
      do {
        c.preds.push_back(ParsePredicate(c.dim));
      } while (AcceptKeyword("AND"));
      return c;
    }
    if (kw == "TSPLIT") {
      Next();
      return TSplitCmd{};
    }
    if (kw == "SPLIT") {
      Next();
      SplitCmd c;
      c.dim = Ident("dimension");
      Punct(".");
      c.param = Ident("parameter");
      return c;
    }
    if (kw == "COMBINE") {
      Next();
      CombineCmd c;
      std::string op = Peek().kind == TokenKind::kIdent ? Upper(Peek().text) : "";
      if (op == "UNION") {
        c.op = algebra::SetOp::kUnion;
      } else if (op == "INTERSECT") {
        c.op = algebra::SetOp::kIntersect;
      } else if (op == "DIFFERENCE") {
        c.op = algebra::SetOp::kDifference;
      } else {
        Fail({"UNION", "INTERSECT", "DIFFERENCE"});
      }
      Next();
      c.left = ParseContextRef();
      Punct(",");
      c.right = ParseContextRef();
      return c;
    }
    if (kw == "SHOW") {
      Next();
      return ShowCmd{};
    }
    if (kw == "EXPORT") {
      Next();
      if (Peek().kind != TokenKind::kString) Fail({"string"});
      return ExportCmd{Next().text, {}};
    }
    if (kw == "UNDO") {
      Next();
      return UndoCmd{};
    }
    Fail(CommandKeywords());
  }

  Predicate ParsePredicate(const std::string& dim) {
    Predicate p;
    p.dim = dim;
    p.param = Ident("parameter");
    if (AcceptKeyword("IN")) {
      p.op = Comparator::kIn;
      Punct("(");
      if (!AcceptPunct(")")) {
        do {
          p.literals.push_back(ParseLiteral());
        } while (AcceptPunct(","));
        Punct(")");
      }
      return p;
    }
    static const std::set<std::string> kComparators = {"=", "!=", "<>", "<", "<=", ">", ">=", "IN"};
    if (Peek().kind != TokenKind::kPunct) Fail(kComparators);
    auto op = ComparatorFromSymbol(Peek().text);
    if (!op || *op == Comparator::kIn) Fail(kComparators);
    Next();
    p.op = *op;
    p.literals.push_back(ParseLiteral());
    return p;
  }

  // Bare identifiers are accepted as string literals.
  Literal ParseLiteral() {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kNumber: return Next().number;
      case TokenKind::kString:
      case TokenKind::kIdent: return Next().text;
      default: Fail({"string", "number"});
    }
  }

  ContextRef ParseContextRef() {
    Punct("@");
    const Token& t = Peek();
    if (t.kind == TokenKind::kIdent && Upper(t.text) == "CURRENT") {
      Next();
      return ContextRef{0};
    }
    if (t.kind == TokenKind::kNumber && t.number >= 1 && t.number == static_cast<size_t>(t.number) &&
        t.text.find_first_of(".eE-") == std::string::npos) {
      return ContextRef{static_cast<size_t>(Next().number)};
    }
    Fail({"current", "positive integer"});
  }

  static std::set<std::string> CommandKeywords() {
    return std::set<std::string>(std::begin(kCommandKeywords), std::end(kCommandKeywords));
  }

  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_++]; }

  [[noreturn]] void Fail(std::set<std::string> expected) const {
    throw ParseError(line_, Peek().column, std::move(expected), Peek().Describe());
  }

  std::string Ident(const char* what) {
    if (Peek().kind != TokenKind::kIdent) Fail({std::string(what) + " identifier"});
    return Next().text;
  }

  bool AcceptKeyword(std::string_view kw) {
    if (Peek().kind == TokenKind::kIdent && Upper(Peek().text) == kw) {
      Next();
      return true;
    }
    return false;
  }

  void Keyword(std::string_view kw) {
    if (!AcceptKeyword(kw)) Fail({std::string(kw)});
  }

  bool AcceptPunct(std::string_view p) {
    if (Peek().kind == TokenKind::kPunct && Peek().text == p) {
      Next();
      return true;
    }
    return false;
  }

  void Punct(std::string_view p) {
    if (!AcceptPunct(p)) Fail({"'" + std::string(p) + "'"});
  }

  void ExpectEnd() {
    if (Peek().kind != TokenKind::kEnd) Fail({"end of command"});
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  size_t line_;
};

std::string PrintPredicate(const Predicate& p) {
  std::string out = p.param + " ";
  if (p.op == Comparator::kIn) {
    out += "IN (";
    for (size_t i = 0; i < p.literals.size(); ++i) {
      if (i > 0) out += ", ";
      out += QuoteLiteral(p.literals[i]);
    }
    return out + ")";
  }
  out += std::string(ComparatorSymbol(p.op)) + " ";
  if (!p.literals.empty()) out += QuoteLiteral(p.literals.front());
  return out;
}

std::string PrintRef(const ContextRef& ref) {
  return ref.index == 0 ? "@current" : "@" + std::to_string(ref.index);
}

}  // namespace

std::string_view CommandName(const Command& cmd) {
  static constexpr std::string_view kNames[] = {
      "display", "drotate", "hrotate", "frotate", "switch",  "drilldown", "rollup", "push",
      "pull",    "tsplit",  "split",   "slice",   "combine", "show",      "export", "undo"};
  return kNames[cmd.index()];
}

const SourceSpan& SpanOf(const Command& cmd) {
  return std::visit([](const auto& c) -> const SourceSpan& { return c.span; }, cmd);
}

bool IsQuery(const Command& cmd) {
  return std::holds_alternative<ShowCmd>(cmd) || std::holds_alternative<ExportCmd>(cmd);
}

Command Parse(std::string_view text, size_t line) { return Parser(text, line).ParseCommand(); }

std::vector<Command> ParseScript(std::string_view text) {
  std::vector<Command> out;
  size_t line = 1;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(start, end - start);
    size_t first = row.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && row[first] != '#') out.push_back(Parse(row, line));
    start = end + 1;
    ++line;
  }
  return out;
}

std::string PrintCommand(const Command& cmd) {
  return std::visit(
      Overloaded{
          [](const DisplayCmd& c) {
            std::string out = "DISPLAY " + c.fact;
            for (size_t i = 0; i < c.dims.size(); ++i) out += (i == 0 ? " ON " : ", ") + c.dims[i];
            return out;
          },
          [](const DRotateCmd& c) {
            return "DROTATE " + c.fact + ": " + c.dim_a + " WITH " + c.dim_b;
          },
          [](const HRotateCmd& c) { return "HROTATE " + c.dim + " TO " + c.hier; },
          [](const FRotateCmd& c) { return "FROTATE " + c.fact_a + " WITH " + c.fact_b; },
          [](const SwitchCmd& c) {
            return "SWITCH " + c.dim + "." + c.param + " VALUES " + QuoteLiteral(c.value_a) + ", " +
                   QuoteLiteral(c.value_b);
          },
          [](const DrillDownCmd& c) { return "DRILLDOWN " + c.dim + " TO " + c.param; },
          [](const RollUpCmd& c) { return "ROLLUP " + c.dim + " TO " + c.param; },
          [](const PushCmd& c) { return "PUSH " + c.dim + "." + c.param + " INTO " + c.fact; },
          [](const PullCmd& c) { return "PULL " + c.fact + "." + c.measure + " INTO " + c.dim; },
          [](const TSplitCmd&) { return std::string("TSPLIT"); },
          [](const SplitCmd& c) { return "SPLIT " + c.dim + "." + c.param; },
          [](const SliceCmd& c) {
            std::string out = "SLICE " + c.dim + " WHERE ";
            for (size_t i = 0; i < c.preds.size(); ++i) {
              if (i > 0) out += " AND ";
              out += PrintPredicate(c.preds[i]);
            }
            return out;
          },
          [](const CombineCmd& c) {
            return "COMBINE " + Upper(algebra::SetOpName(c.op)) + " " + PrintRef(c.left) + ", " +
                   PrintRef(c.right);
          },
          [](const ShowCmd&) { return std::string("SHOW"); },
          [](const ExportCmd& c) { return "EXPORT " + QuoteLiteral(c.path); },
          [](const UndoCmd&) { return std::string("UNDO"); },
      },
      cmd);
}

namespace {

using nlohmann::json;

json LiteralJson(const Literal& lit) {
  if (const double* d = std::get_if<double>(&lit)) return *d;
  return std::get<std::string>(lit);
}

[[noreturn]] void BadDocument(const std::string& message) {
  throw OlapError(ErrorCode::kParseError, "malformed command document: " + message, "command");
}

std::string StringField(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end() || !it->is_string()) BadDocument(std::string("'") + name + "' must be a string");
  return it->get<std::string>();
}

Literal LiteralField(const json& value, const std::string& name) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return value.get<std::string>();
  BadDocument("'" + name + "' must be a string or number");
}

ContextRef RefField(const json& doc, const char* name) {
  std::string text = StringField(doc, name);
  if (text == "@current") return ContextRef{0};
  if (text.size() > 1 && text[0] == '@') {
    size_t index = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), index);
    if (ec == std::errc() && ptr == text.data() + text.size() && index > 0) return ContextRef{index};
  }
  BadDocument(std::string("'") + name + "' must be \"@current\" or \"@N\"");
}

}  // namespace

json EncodeCommand(const Command& cmd) {
  json out = std::visit(
      Overloaded{
          [](const DisplayCmd& c) { return json{{"fact", c.fact}, {"dims", c.dims}}; },
          [](const DRotateCmd& c) { return json{{"fact", c.fact}, {"dA", c.dim_a}, {"dB", c.dim_b}}; },
          [](const HRotateCmd& c) { return json{{"dim", c.dim}, {"hier", c.hier}}; },
          [](const FRotateCmd& c) { return json{{"fA", c.fact_a}, {"fB", c.fact_b}}; },
          [](const SwitchCmd& c) {
            return json{{"dim", c.dim},
                        {"p", c.param},
                        {"v1", LiteralJson(c.value_a)},
                        {"v2", LiteralJson(c.value_b)}};
          },
          [](const DrillDownCmd& c) { return json{{"dim", c.dim}, {"p", c.param}}; },
          [](const RollUpCmd& c) { return json{{"dim", c.dim}, {"p", c.param}}; },
          [](const PushCmd& c) { return json{{"dim", c.dim}, {"p", c.param}, {"fact", c.fact}}; },
          [](const PullCmd& c) { return json{{"fact", c.fact}, {"m", c.measure}, {"dim", c.dim}}; },
          [](const TSplitCmd&) { return json::object(); },
          [](const SplitCmd& c) { return json{{"dim", c.dim}, {"p", c.param}}; },
          [](const SliceCmd& c) {
            json preds = json::array();
            for (const auto& p : c.preds) {
              json lit;
              if (p.op == Comparator::kIn) {
                lit = json::array();
                for (const auto& l : p.literals) lit.push_back(LiteralJson(l));
              } else if (!p.literals.empty()) {
                lit = LiteralJson(p.literals.front());
              }
              preds.push_back(
                  {{"param", p.param}, {"op", std::string(ComparatorSymbol(p.op))}, {"literal", lit}});
            }
            return json{{"dim", c.dim}, {"preds", std::move(preds)}};
          },
          [](const CombineCmd& c) {
            return json{{"setop", std::string(algebra::SetOpName(c.op))},
                        {"left", PrintRef(c.left)},
                        {"right", PrintRef(c.right)}};
          },
          [](const ShowCmd&) { return json::object(); },
          [](const ExportCmd& c) { return json{{"path", c.path}}; },
          [](const UndoCmd&) { return json::object(); },
      },
      cmd);
  out["op"] = std::string(CommandName(cmd));
  return out;
}

Command DecodeCommand(const json& doc) {
  if (!doc.is_object()) BadDocument("expected an object");
  const std::string op = StringField(doc, "op");
  if (op == "display") {
    DisplayCmd c;
    c.fact = StringField(doc, "fact");
    if (doc.contains("dims")) {
      const json& dims = doc.at("dims");
      if (!dims.is_array()) BadDocument("'dims' must be an array");
      for (const auto& d : dims) {
        if (!d.is_string()) BadDocument("'dims' must hold strings");
        c.dims.push_back(d.get<std::string>());
      }
    }
    return c;
  }
  if (op == "drotate") return DRotateCmd{StringField(doc, "fact"), StringField(doc, "dA"), StringField(doc, "dB"), {}};
  if (op == "hrotate") return HRotateCmd{StringField(doc, "dim"), StringField(doc, "hier"), {}};
  if (op == "frotate") return FRotateCmd{StringField(doc, "fA"), StringField(doc, "fB"), {}};
  if (op == "switch") {
    if (!doc.contains("v1") || !doc.contains("v2")) BadDocument("'v1' and 'v2' are required");
    return SwitchCmd{StringField(doc, "dim"), StringField(doc, "p"), LiteralField(doc.at("v1"), "v1"),
                     LiteralField(doc.at("v2"), "v2"), {}};
  }
  if (op == "drilldown") return DrillDownCmd{StringField(doc, "dim"), StringField(doc, "p"), {}};
  if (op == "rollup") return RollUpCmd{StringField(doc, "dim"), StringField(doc, "p"), {}};
  if (op == "push") return PushCmd{StringField(doc, "dim"), StringField(doc, "p"), StringField(doc, "fact"), {}};
  if (op == "pull") return PullCmd{StringField(doc, "fact"), StringField(doc, "m"), StringField(doc, "dim"), {}};
  if (op == "tsplit") return TSplitCmd{};
  if (op == "split") return SplitCmd{StringField(doc, "dim"), StringField(doc, "p"), {}};
  if (op == "slice") {
    SliceCmd c;
    c.dim = StringField(doc, "dim");
    auto preds = doc.find("preds");
    if (preds == doc.end() || !preds->is_array() || preds->empty()) {
      BadDocument("'preds' must be a non-empty array");
    }
    for (const auto& p : *preds) {
      if (!p.is_object()) BadDocument("predicates must be objects");
      Predicate pred;
      pred.dim = c.dim;
      pred.param = StringField(p, "param");
      auto cmp = ComparatorFromSymbol(StringField(p, "op"));
      if (!cmp) BadDocument("unknown comparator '" + StringField(p, "op") + "'");
      pred.op = *cmp;
      if (!p.contains("literal")) BadDocument("'literal' is required");
      const json& lit = p.at("literal");
      if (pred.op == Comparator::kIn) {
        if (!lit.is_array()) BadDocument("IN requires a literal array");
        for (const auto& l : lit) pred.literals.push_back(LiteralField(l, "literal"));
      } else {
        pred.literals.push_back(LiteralField(lit, "literal"));
      }
      c.preds.push_back(std::move(pred));
    }
    return c;
  }
  if (op == "combine") {
    std::string setop = StringField(doc, "setop");
    CombineCmd c;
    if (setop == "union") {
      c.op = algebra::SetOp::kUnion;
    } else if (setop == "intersect") {
      c.op = algebra::SetOp::kIntersect;
    } else if (setop == "difference") {
      c.op = algebra::SetOp::kDifference;
    } else {
      BadDocument("unknown set operation '" + setop + "'");
    }
    c.left = RefField(doc, "left");
    c.right = RefField(doc, "right");
    return c;
  }
  if (op == "show") return ShowCmd{};
  if (op == "export") return ExportCmd{StringField(doc, "path"), {}};
  if (op == "undo") return UndoCmd{};
  BadDocument("unknown op '" + op + "'");
}

namespace {

const AnalysisContext& Resolve(const AnalysisContext& ctx, const std::vector<AnalysisContext>& splits,
                               const ContextRef& ref) {
  if (ref.index == 0) return ctx;
  if (ref.index > splits.size()) {
    throw OlapError(ErrorCode::kUnknownContext,
                    "no split result @" + std::to_string(ref.index) + " (" +
                        std::to_string(splits.size()) + " available)");
  }
  return splits[ref.index - 1];
}

}  // namespace

Outcome Evaluate(const AnalysisContext& ctx, const std::vector<AnalysisContext>& splits,
                 const Command& cmd) {
  Outcome out{ctx, splits};
  auto take_splits = [&](std::vector<AnalysisContext> results) {
    if (!results.empty()) out.context = results.front();
    out.splits = std::move(results);
  };
  std::visit(
      Overloaded{
          [&](const DisplayCmd& c) { out.context = algebra::Display(ctx, c.fact, c.dims); },
          [&](const DRotateCmd& c) { out.context = algebra::DRotate(ctx, c.fact, c.dim_a, c.dim_b); },
          [&](const HRotateCmd& c) {
            const Dimension* d = ctx.schema.FindDimension(c.dim);
            if (d == nullptr) {
              throw OlapError(ErrorCode::kUnknownDimension, "unknown dimension '" + c.dim + "'");
            }
            out.context = algebra::HRotate(ctx, c.dim, d->current().name, c.hier);
          },
          [&](const FRotateCmd& c) { out.context = algebra::FRotate(ctx, c.fact_a, c.fact_b); },
          [&](const SwitchCmd& c) {
            out.context = algebra::Switch(ctx, c.dim, c.param, c.value_a, c.value_b);
          },
          [&](const DrillDownCmd& c) { out.context = algebra::DrillDown(ctx, c.dim, c.param); },
          [&](const RollUpCmd& c) { out.context = algebra::RollUp(ctx, c.dim, c.param); },
          [&](const PushCmd& c) { out.context = algebra::Push(ctx, c.dim, c.param, c.fact); },
          [&](const PullCmd& c) { out.context = algebra::Pull(ctx, c.fact, c.measure, c.dim); },
          [&](const TSplitCmd&) { take_splits(algebra::TSplit(ctx)); },
          [&](const SplitCmd& c) { take_splits(algebra::Split(ctx, c.dim, c.param)); },
          [&](const SliceCmd& c) {
            for (const auto& p : c.preds) out.context = algebra::Slice(out.context, c.dim, p);
          },
          [&](const CombineCmd& c) {
            out.context =
                algebra::Combine(c.op, Resolve(ctx, splits, c.left), Resolve(ctx, splits, c.right));
          },
          [&](const ShowCmd&) {},
          [&](const ExportCmd&) {},
          [&](const UndoCmd&) {
            throw OlapError(ErrorCode::kUnsupported, "UNDO is only meaningful within a session");
          },
      },
      cmd);
  return out;
}

const AnalysisContext& Session::current() const {
  return history_.empty() ? initial_ : history_.back().context;
}

const std::vector<AnalysisContext>& Session::splits() const {
  static const std::vector<AnalysisContext> kNone;
  return history_.empty() ? kNone : history_.back().splits;
}

void Session::Apply(const Command& cmd) {
  if (std::holds_alternative<UndoCmd>(cmd)) {
    if (history_.empty()) throw OlapError(ErrorCode::kNothingToUndo, "nothing to undo");
    history_.pop_back();
    return;
  }
  if (IsQuery(cmd)) return;
  Outcome next = Evaluate(current(), splits(), cmd);
  history_.push_back(HistoryEntry{cmd, std::move(next.context), std::move(next.splits)});
}

Outcome Session::Replay() const {
  Outcome state{initial_, {}};
  for (const auto& entry : history_) state = Evaluate(state.context, state.splits, entry.command);
  return state;
}

}  // namespace constellation::mdql
