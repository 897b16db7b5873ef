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

#include "catapult/search.h"

#include <string>

#include "search_core.h"

namespace catapult {

namespace detail {

SearchScratch&
thread_scratch() {
    thread_local SearchScratch scratch;
    return scratch;
}

void
validate_search(const ProximityGraph& graph,
                const VectorDataset& dataset,
                std::span<const float> q,
                std::size_t k,
                std::span<const NodeId> start_points) {
    if (k == 0) {
        throw UsageError("search: k must be >= 1");
    }
    if (q.size() != dataset.dim()) {
        throw UsageError("search: query dimension " + std::to_string(q.size()) +
                         " does not match dataset dimension " + std::to_string(dataset.dim()));
    }
    if (graph.size() > dataset.size()) {
        throw UsageError("search: graph has more nodes than the dataset");
    }
    for (const NodeId id : start_points) {
        if (id >= graph.size()) {
            throw UsageError("search: start point " + std::to_string(id) + " out of range");
        }
    }
}

}  // namespace detail

namespace {

SearchOutcome
run(const ProximityGraph& graph,
    const VectorDataset& dataset,
    std::span<const float> q,
    std::size_t k,
    std::span<const NodeId> start_points,
    std::vector<Neighbor>* visited) {
    const auto start = std::chrono::steady_clock::now();
    detail::validate_search(graph, dataset, q, k, start_points);
    if (start_points.empty()) {
        throw UsageError("beam_search: empty start point set");
    }
    auto out = detail::greedy_search(
        graph, dataset, q, k, start_points, [](NodeId) { return true; }, visited);
    out.stats.elapsed_us = detail::elapsed_us_since(start);
    return out;
}

}  // namespace

SearchOutcome
beam_search(const ProximityGraph& graph,
            const VectorDataset& dataset,
            std::span<const float> q,
            std::size_t k,
            std::span<const NodeId> start_points) {
    return run(graph, dataset, q, k, start_points, nullptr);
}

SearchOutcome
beam_search(const ProximityGraph& graph,
            const VectorDataset& dataset,
            std::span<const float> q,
            std::size_t k,
            std::span<const NodeId> start_points,
            std::vector<Neighbor>& visited) {
    return run(graph, dataset, q, k, start_points, &visited);
}

}  // namespace catapult
