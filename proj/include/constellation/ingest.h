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

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"

#include "constellation/instance_store.h"
#include "constellation/schema.h"

namespace constellation::ingest {

// Builds and validates a schema from its JSON document. `all` must not appear
// in the document; it is appended to every attribute set and hierarchy here.
// `text`, when given, is the document source used to attach line:column
// positions to validation errors.
ConstellationSchema LoadSchema(const nlohmann::json& doc, std::string_view source,
                               std::string_view text = {});
ConstellationSchema LoadSchemaText(std::string_view text, std::string_view source);
ConstellationSchema LoadSchemaFile(const std::filesystem::path& path);

// Inverse of LoadSchema (without `all`).
nlohmann::json SchemaToDocument(const ConstellationSchema& schema);

// CSV text per dimension/fact name.
using DataFiles = std::map<std::string, std::string, std::less<>>;

// Loads one CSV per dimension and fact; rejects missing columns and values,
// duplicate keys, dangling references, non-numeric measures and roll-up
// functional dependency violations.
std::shared_ptr<const InstanceStore> LoadData(const ConstellationSchema& schema,
                                              const DataFiles& files);

// Reads "<dir>/<name>.csv" for every dimension and fact.
std::shared_ptr<const InstanceStore> LoadDataDir(const ConstellationSchema& schema,
                                                 const std::filesystem::path& dir);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace constellation::ingest
