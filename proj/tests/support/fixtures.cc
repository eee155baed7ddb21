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

#include "support/fixtures.h"

#include "constellation/ingest.h"
#include "constellation/mdql.h"

namespace fixtures {

using namespace constellation;

std::string ChannalyseDir() { return std::string(OLAP_FIXTURE_DIR) + "/channalyse"; }

std::shared_ptr<const InstanceStore> Channalyse() {
  static const auto store = [] {
    auto schema = ingest::LoadSchemaFile(ChannalyseDir() + "/channalyse.json");
    return ingest::LoadDataDir(schema, ChannalyseDir() + "/data");
  }();
  return store;
}

AnalysisContext ChannalyseContext() { return AnalysisContext::Initial(Channalyse()); }

AnalysisContext Run(const std::string& script) {
  mdql::Session session(ChannalyseContext());
  for (const auto& cmd : mdql::ParseScript(script)) session.Apply(cmd);
  return session.current();
}

}  // namespace fixtures
