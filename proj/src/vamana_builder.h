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

#include <vector>

#include "catapult/dataset.h"
#include "catapult/graph.h"

namespace catapult::detail {

/// Shared Vamana machinery. With labels, each point is searched over its own
/// labels' nodes from their entry points and pruning is label aware; with a
/// single shared label this reduces exactly to the unlabeled build.
class VamanaBuilder {
public:
    VamanaBuilder(const VectorDataset& dataset,
                  const BuildParams& params,
                  const LabelTable* labels,
                  ProximityGraph& graph,
                  std::size_t degree_limit);

    /// Searches for the point's neighborhood, prunes it into the out-list and
    /// adds reverse edges.
    void
    link(NodeId node, float alpha);

    /// Prunes every node whose out-degree exceeds R.
    void
    enforce_degree_bound(float alpha);

private:
    void
    add_reverse_edge(NodeId target, NodeId source, float alpha);

    float
    dist(NodeId a, NodeId b) const;

    const VectorDataset& dataset_;
    const BuildParams& params_;
    const LabelTable* labels_;
    ProximityGraph& graph_;
    std::size_t degree_limit_;
    std::vector<Neighbor> visited_;
    std::vector<Neighbor> candidates_;
};

ProximityGraph
build_graph(const VectorDataset& dataset, const BuildParams& params, const LabelTable* labels);

}  // namespace catapult::detail
