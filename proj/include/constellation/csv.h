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

#include <string>
#include <string_view>
#include <vector>

namespace constellation {

// RFC-4180 records with a mandatory header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based source line on which each row starts.
  std::vector<size_t> lines;
};

// Throws LoadError (location "<source>:<line>") on malformed quoting or
// ragged rows. A UTF-8 BOM and a trailing newline are accepted.
CsvTable ParseCsv(std::string_view text, std::string_view source);

// Quotes a field when it contains a comma, quote or line break.
std::string CsvEscape(std::string_view field);

}  // namespace constellation
