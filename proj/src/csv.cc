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

#include "constellation/csv.h"

#include "constellation/errors.h"

namespace constellation {

namespace {

[[noreturn]] void Malformed(std::string_view source, size_t line, const std::string& message) {
  throw OlapError(ErrorCode::kLoadError, std::string(source) + ":" + std::to_string(line) + ": " + message,
                  std::string(source) + ":" + std::to_string(line));
}

}  // namespace

CsvTable ParseCsv(std::string_view text, std::string_view source) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<size_t> lines;
  std::vector<std::string> record;
  std::string field;
  size_t line = 1;
  size_t record_line = 1;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes an empty line from one empty field

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    if (!(record.empty() && !field_started)) {
      end_field();
      records.push_back(std::move(record));
      lines.push_back(record_line);
    }
    record.clear();
    field_started = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
          if (i + 1 < text.size() && text[i + 1] != ',' && text[i + 1] != '\n' &&
              text[i + 1] != '\r') {
            Malformed(source, line, "unexpected character after closing quote");
          }
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) Malformed(source, line, "quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        field_started = true;
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        field_started = true;
        field.push_back(c);
        break;
    }
  }
  if (in_quotes) Malformed(source, line, "unterminated quoted field");
  end_record();

  CsvTable table;
  if (records.empty()) Malformed(source, 1, "missing header row");
  table.header = std::move(records.front());
  for (size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != table.header.size()) {
      Malformed(source, lines[i], "expected " + std::to_string(table.header.size()) +
                                      " fields, found " + std::to_string(records[i].size()));
    }
    table.rows.push_back(std::move(records[i]));
    table.lines.push_back(lines[i]);
  }
  return table;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace constellation
