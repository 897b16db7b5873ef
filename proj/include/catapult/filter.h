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

#include <span>
#include <vector>

#include "catapult/dataset.h"
#include "catapult/graph.h"
#include "catapult/search.h"

namespace catapult {

/// A node is eligible iff it carries at least one of the required labels.
class FilterPredicate {
public:
    /// Throws UsageError when `required` is empty.
    explicit FilterPredicate(std::vector<LabelId> required);

    static FilterPredicate
    single(LabelId label) {
        return FilterPredicate({label});
    }

    std::span<const LabelId>
    required() const {
        return required_;
    }

    bool
    admits(const LabelTable& labels, NodeId id) const {
        return labels.matches_any(id, required_);
    }

private:
    std::vector<LabelId> required_;
};

/// Vamana construction where each point is searched from the entry points of
/// its own labels over same-label nodes, pruning is label aware and every
/// label gets its own entry point (the medoid of that label's nodes).
/// Throws UsageError when a node has no labels.
ProximityGraph
build_filtered_index(const VectorDataset& dataset,
                     const LabelTable& labels,
                     const BuildParams& params);

/// Entry points of the predicate's labels that exist in `graph`, ascending.
/// Sets each label's entry point to the medoid of the nodes carrying it.
/// Index files do not store entry points; call this after loading.
void
assign_label_entry_points(ProximityGraph& graph,
                          const VectorDataset& dataset,
                          const LabelTable& labels,
                          const BuildParams& params);

std::vector<NodeId>
label_entry_points(const ProximityGraph& graph, const FilterPredicate& predicate);

/// Beam search over eligible nodes only. Ineligible start points are dropped;
/// if none survive, the per-label entry points are used instead. With no
/// eligible start at all, returns an empty result with stats.no_start set.
SearchOutcome
filtered_beam_search(const ProximityGraph& graph,
                     const VectorDataset& dataset,
                     const LabelTable& labels,
                     std::span<const float> q,
                     std::size_t k,
                     const FilterPredicate& predicate,
                     std::span<const NodeId> start_points);

}  // namespace catapult
