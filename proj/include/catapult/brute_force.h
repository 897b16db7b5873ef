// Copyright 2026-present the catapult project
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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "catapult/dataset.h"
#include "catapult/distance.h"

namespace catapult {

struct LabelFilter {
    const LabelTable* labels = nullptr;
    std::span<const LabelId> required;  // sorted
};

/// Exact k nearest neighbors by linear scan, ascending by distance with ties
/// broken by ascending id. Only the first `limit` rows are considered when
/// set. With a filter, only rows carrying one of the required labels qualify.
std::vector<Neighbor>
brute_force_knn(const VectorDataset& dataset,
                std::span<const float> q,
                std::size_t k,
                Metric metric = Metric::kSquaredEuclidean,
                const LabelFilter* filter = nullptr,
                std::optional<std::size_t> limit = std::nullopt);

std::vector<NodeId>
ids_of(std::span<const Neighbor> neighbors);

}  // namespace catapult
