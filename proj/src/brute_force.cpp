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

#include "catapult/brute_force.h"

#include <algorithm>
#include <queue>

namespace catapult {

std::vector<Neighbor>
brute_force_knn(const VectorDataset& dataset,
                std::span<const float> q,
                std::size_t k,
                Metric metric,
                const LabelFilter* filter,
                std::optional<std::size_t> limit) {
    if (k == 0) {
        throw UsageError("brute_force_knn: k must be >= 1");
    }
    if (q.size() != dataset.dim()) {
        throw UsageError("brute_force_knn: query dimension mismatch");
    }
    if (filter != nullptr && filter->labels == nullptr) {
        throw UsageError("brute_force_knn: predicate given without labels");
    }
    const std::size_t n = std::min(dataset.size(), limit.value_or(dataset.size()));
    // Max-heap on (distance, id) holding the k best so far.
    std::priority_queue<Neighbor> best;
    for (std::size_t i = 0; i < n; ++i) {
        const auto id = static_cast<NodeId>(i);
        if (filter != nullptr && !filter->labels->matches_any(id, filter->required)) {
            continue;
        }
        const Neighbor cand{id, distance_unchecked(q.data(), dataset.row_ptr(i), q.size(), metric)};
        if (best.size() < k) {
            best.push(cand);
        } else if (cand < best.top()) {
            best.pop();
            best.push(cand);
        }
    }
    std::vector<Neighbor> out(best.size());
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        *it = best.top();
        best.pop();
    }
    return out;
}

std::vector<NodeId>
ids_of(std::span<const Neighbor> neighbors) {
    std::vector<NodeId> ids;
    ids.reserve(neighbors.size());
    for (const auto& n : neighbors) {
        ids.push_back(n.id);
    }
    return ids;
}

}  // namespace catapult
