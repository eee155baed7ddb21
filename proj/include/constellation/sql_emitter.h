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

#include "constellation/algebra.h"
#include "constellation/instance_store.h"
#include "constellation/schema.h"

namespace constellation::sql {

// Relational star encoding: one table per dimension (attributes except `all`,
// key as primary key) and one per fact ("<dim>_id" foreign keys, then
// measures). Identifiers are lower-cased, non-alphanumerics become '_', and
// the result is double-quoted.
std::string MangleName(std::string_view name);
std::string Quote(std::string_view name);

// CREATE TABLE statements in declaration order, dimensions first. With a
// store, attributes whose values are all numeric are typed DOUBLE PRECISION;
// otherwise every attribute is VARCHAR(255).
std::string EmitDdl(const ConstellationSchema& schema, const InstanceStore* store = nullptr);

// One SELECT computing the displayed n-table of `ctx`: grouped by the two
// display levels, filtered by the applicable restrictions, ordered by the
// display orderings. Throws EmptyMeasureSet.
std::string EmitQuery(const AnalysisContext& ctx);

// SQL string literal with embedded quotes doubled.
std::string StringLiteral(std::string_view text);

}  // namespace constellation::sql
