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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "catapult/search.h"

namespace catapult::detail {

struct Candidate {
    Neighbor n;
    bool expanded;
};

/// Per-thread scratch: an epoch-stamped "seen" array so that every node's
/// distance is computed at most once per query, and the candidate pool.
struct SearchScratch {
    std::vector<std::uint32_t> seen;
    std::uint32_t epoch = 0;
    std::vector<Candidate> pool;

    void
    begin(std::size_t node_count) {
        if (seen.size() < node_count) {
            seen.resize(node_count, 0);
        }
        if (++epoch == 0) {
            std::fill(seen.begin(), seen.end(), 0);
            epoch = 1;
        }
        pool.clear();
    }

    /// True the first time `id` is seen in the current query.
    bool
    mark(NodeId id) {
        if (seen[id] == epoch) {
            return false;
        }
        seen[id] = epoch;
        return true;
    }
};

SearchScratch&
thread_scratch();

inline double
elapsed_us_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start)
        .count();
}

/// Beam search core. Start points must be valid ids; ineligible start points
/// are skipped. Ineligible neighbors are never added to the candidate set.
///
/// A node trimmed out of a full candidate set is worse than the current k-th
/// candidate, and the k-th distance only shrinks, so it can never re-enter:
/// marking it seen is equivalent to re-adding and re-trimming it.
template <typename Eligible>
SearchOutcome
greedy_search(const ProximityGraph& graph,
              const VectorDataset& dataset,
              std::span<const float> q,
              std::size_t k,
              std::span<const NodeId> start_points,
              Eligible&& eligible,
              std::vector<Neighbor>* visited) {
    SearchOutcome out;
    auto& stats = out.stats;
    auto& scratch = thread_scratch();
    scratch.begin(graph.size());
    auto& pool = scratch.pool;
    const Metric metric = graph.metric();
    const std::size_t dim = dataset.dim();
    const float* query = q.data();

    for (const NodeId id : start_points) {
        __builtin_prefetch(dataset.row_ptr(id));
    }
    for (const NodeId id : start_points) {
        if (!scratch.mark(id) || !eligible(id)) {
            continue;
        }
        pool.push_back({{id, distance_unchecked(query, dataset.row_ptr(id), dim, metric)}, false});
        ++stats.distance_computations;
    }
    const auto closer = [](const Candidate& a, const Candidate& b) { return a.n < b.n; };
    if (pool.size() > k) {
        std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end(), closer);
        pool.resize(k);
    }
    std::sort(pool.begin(), pool.end(), closer);

    std::size_t cursor = 0;
    while (true) {
        while (cursor < pool.size() && pool[cursor].expanded) {
            ++cursor;
        }
        if (cursor == pool.size()) {
            break;
        }
        pool[cursor].expanded = true;
        const Neighbor current = pool[cursor].n;
        ++stats.hops;
        if (visited != nullptr) {
            visited->push_back(current);
        }
        const auto neighbors = graph.neighbors(current.id);
        for (std::size_t i = 0; i < neighbors.size(); ++i) {
            if (i + 1 < neighbors.size()) {
                __builtin_prefetch(dataset.row_ptr(neighbors[i + 1]));
            }
            const NodeId nb = neighbors[i];
            if (!scratch.mark(nb) || !eligible(nb)) {
                continue;
            }
            const Neighbor cand{nb, distance_unchecked(query, dataset.row_ptr(nb), dim, metric)};
            ++stats.distance_computations;
            if (pool.size() >= k && !(cand < pool.back().n)) {
                continue;
            }
            const auto pos = std::upper_bound(
                pool.begin(), pool.end(), cand,
                [](const Neighbor& value, const Candidate& c) { return value < c.n; });
            const auto index = static_cast<std::size_t>(pos - pool.begin());
            pool.insert(pos, {cand, false});
            if (pool.size() > k) {
                pool.pop_back();
            }
            cursor = std::min(cursor, index);
        }
    }
    stats.nodes_visited = stats.hops;

    out.result.ids.reserve(pool.size());
    out.result.distances.reserve(pool.size());
    for (const auto& c : pool) {
        out.result.ids.push_back(c.n.id);
        out.result.distances.push_back(c.n.distance);
    }
    return out;
}

/// Shared precondition checks for graph searches.
void
validate_search(const ProximityGraph& graph,
                const VectorDataset& dataset,
                std::span<const float> q,
                std::size_t k,
                std::span<const NodeId> start_points);

}  // namespace catapult::detail
