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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "catapult/dataset.h"
#include "catapult/distance.h"
#include "catapult/types.h"

namespace catapult {

struct BuildParams {
    std::size_t max_degree = 48;     // R
    float alpha = 1.2f;              // second-pass pruning factor, >= 1
    std::size_t build_beam_width = 96;
    std::size_t medoid_sample_limit = 10000;
    Metric metric = Metric::kSquaredEuclidean;
    std::uint64_t seed = 0;

    /// Throws UsageError on R == 0, beam width == 0 or alpha < 1.
    void
    validate() const;
};

/// Directed graph over dataset ids with bounded out-degree, a medoid entry
/// point and optional per-label entry points.
class ProximityGraph {
public:
    ProximityGraph() = default;

    ProximityGraph(std::size_t node_count, std::size_t max_degree, Metric metric);

    std::size_t
    size() const {
        return adjacency_.size();
    }

    bool
    empty() const {
        return adjacency_.empty();
    }

    std::size_t
    max_degree() const {
        return max_degree_;
    }

    Metric
    metric() const {
        return metric_;
    }

    NodeId
    medoid() const {
        return medoid_;
    }

    void
    set_medoid(NodeId id);

    std::span<const NodeId>
    neighbors(NodeId id) const {
        return adjacency_[id];
    }

    /// Replaces the out-list of `id`; throws UsageError if it would break the
    /// degree, self-loop or id-range invariants.
    void
    set_neighbors(NodeId id, std::vector<NodeId> neighbors);

    /// Appends `neighbor` without re-pruning. The caller restores the degree bound.
    void
    push_neighbor(NodeId id, NodeId neighbor) {
        adjacency_[id].push_back(neighbor);
    }

    NodeId
    add_node();

    const std::map<LabelId, NodeId>&
    label_entry_points() const {
        return label_entries_;
    }

    void
    set_label_entry(LabelId label, NodeId id);

    std::optional<NodeId>
    label_entry(LabelId label) const;

    std::size_t
    max_out_degree() const;

    /// Throws std::logic_error naming the first violated invariant.
    void
    check_invariants() const;

    friend bool
    operator==(const ProximityGraph&, const ProximityGraph&) = default;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t max_degree_ = 0;
    Metric metric_ = Metric::kSquaredEuclidean;
    NodeId medoid_ = 0;
    std::map<LabelId, NodeId> label_entries_;
};

/// Node minimizing the summed distance to all others. Above `sample_limit`
/// points, both the candidates and the targets are a seeded random sample of
/// that size. Ties go to the lowest id.
NodeId
compute_medoid(const VectorDataset& dataset,
               std::size_t sample_limit = 10000,
               std::uint64_t seed = 0,
               Metric metric = Metric::kSquaredEuclidean);

/// Medoid restricted to `subset` (ascending ids).
NodeId
compute_medoid(const VectorDataset& dataset,
               std::span<const NodeId> subset,
               std::size_t sample_limit = 10000,
               std::uint64_t seed = 0,
               Metric metric = Metric::kSquaredEuclidean);

/// Alpha pruning. Candidates carry their distance to `p`; they are sorted
/// by (distance, id) and deduplicated, so input order does not matter. The
/// closest survivor is kept and every remaining c with
/// alpha * d(kept, c) <= d(p, c) is dropped, until `max_degree` are kept.
///
/// With `labels`, a kept node a may only drop c when labels(p) & labels(c)
/// is a subset of labels(a), so same-label neighbors survive cross-label
/// occluders.
std::vector<NodeId>
robust_prune(const VectorDataset& dataset,
             NodeId p,
             std::span<const Neighbor> candidates,
             float alpha,
             std::size_t max_degree,
             Metric metric = Metric::kSquaredEuclidean,
             const LabelTable* labels = nullptr);

/// Two-pass Vamana construction (alpha = 1, then params.alpha) over a seeded
/// insertion order, starting from a random regular graph. Deterministic in
/// (dataset, params).
ProximityGraph
build_vamana(const VectorDataset& dataset, const BuildParams& params);

/// Appends `v` to the dataset and links it into the graph. The medoid is left
/// unchanged unless the index was empty. Requires exclusive access.
NodeId
insert(ProximityGraph& graph,
       VectorDataset& dataset,
       std::span<const float> v,
       const BuildParams& params);

/// Index file: "CPLT", u32 version, n, dim, R, medoid, then per node a u32
/// degree followed by the neighbor ids. Vectors go next to it in
/// `<path>.vectors` using the dataset format.
void
save_index(const std::filesystem::path& path,
           const ProximityGraph& graph,
           const VectorDataset& dataset);

struct LoadedIndex {
    ProximityGraph graph;
    VectorDataset dataset;
};

LoadedIndex
load_index(const std::filesystem::path& path, Metric metric = Metric::kSquaredEuclidean);

std::filesystem::path
vectors_path_for(const std::filesystem::path& index_path);

}  // namespace catapult
