// Copyright 2026 The ptk Authors
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

#ifndef PTK_SRC_TASKS_INTERNAL_H
#define PTK_SRC_TASKS_INTERNAL_H

#include <functional>
#include <string>
#include <vector>

#include "ptk/tasks.h"

namespace ptk::internal {

/// Index of the lexicographically smallest label.
size_t first_label(const std::vector<std::string> &labels);

/// Builds the confusability graph from a "not distinguishable" predicate on
/// label pairs x < y; components by breadth-first search in label order.
ConfusabilityGraph build_graph(const std::vector<std::string> &labels,
                               const std::function<bool(size_t, size_t)> &confusable);

/// Position of every label of `wanted` inside `have`; IndexMismatch unless
/// both list the same labels.
std::vector<size_t> align_labels(const std::vector<std::string> &have, const std::vector<std::string> &wanted);

}  // namespace ptk::internal

#endif
