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
#include <cstdint>
#include <span>
#include <vector>

#include "catapult/dataset.h"
#include "catapult/graph.h"

namespace catapult {

/// Ids ascending by distance to the query (ties by id), with matching distances.
struct SearchResult {
    std::vector<NodeId> ids;
    std::vector<float> distances;

    std::size_t
    size() const {
        return ids.size();
    }

    bool
    empty() const {
        return ids.empty();
    }

    friend bool
    operator==(const SearchResult&, const SearchResult&) = default;
};

struct QueryStats {
    std::uint64_t hops = 0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t distance_computations = 0;
    /// Bucket snapshot was non-empty.
    bool catapult_used = false;
    /// Snapshot entries that survived the filter (equals snapshot size unfiltered).
    std::uint32_t eligible_catapults = 0;
    /// Filtered search had nowhere eligible to start.
    bool no_start = false;
    /// Served from the approximate cache.
    bool cache_hit = false;
    double elapsed_us = 0.0;
};

struct SearchOutcome {
    SearchResult result;
    QueryStats stats;
};

/// Greedy beam search with a single width `k`: the candidate set starts as
/// `start_points`, the closest unexpanded candidate is expanded until none
/// remain, and after every expansion the set is trimmed to the k closest.
/// Throws UsageError on k == 0, an empty start set or an out-of-range id.
SearchOutcome
beam_search(const ProximityGraph& graph,
            const VectorDataset& dataset,
            std::span<const float> q,
            std::size_t k,
            std::span<const NodeId> start_points);

/// Same traversal, also reporting every expanded node with its distance to q
/// in expansion order. Used by graph construction.
SearchOutcome
beam_search(const ProximityGraph& graph,
            const VectorDataset& dataset,
            std::span<const float> q,
            std::size_t k,
            std::span<const NodeId> start_points,
            std::vector<Neighbor>& visited);

}  // namespace catapult
