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

#include <memory>
#include <string>

#include "constellation/algebra.h"
#include "constellation/instance_store.h"

namespace fixtures {

// Directory holding channalyse.json and its data/ subdirectory.
std::string ChannalyseDir();

// Loaded once per process.
std::shared_ptr<const constellation::InstanceStore> Channalyse();

constellation::AnalysisContext ChannalyseContext();

// Applies a newline-separated MDQL script to the initial context.
constellation::AnalysisContext Run(const std::string& script);

}  // namespace fixtures
