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

#include "catapult/filter.h"

#include <algorithm>
#include <chrono>

#include "search_core.h"
#include "vamana_builder.h"

namespace catapult {

FilterPredicate::FilterPredicate(std::vector<LabelId> required) : required_(std::move(required)) {
    if (required_.empty()) {
        throw UsageError("filter predicate needs at least one label");
    }
    std::sort(required_.begin(), required_.end());
    required_.erase(std::unique(required_.begin(), required_.end()), required_.end());
}

ProximityGraph
build_filtered_index(const VectorDataset& dataset,
                     const LabelTable& labels,
                     const BuildParams& params) {
    if (labels.size() != dataset.size()) {
        throw UsageError("build_filtered_index: label table size does not match the dataset");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels.labels_of(static_cast<NodeId>(i)).empty()) {
            throw UsageError("build_filtered_index: node " + std::to_string(i) +
                             " has no labels");
        }
    }
    return detail::build_graph(dataset, params, &labels);
}

void
assign_label_entry_points(ProximityGraph& graph,
                          const VectorDataset& dataset,
                          const LabelTable& labels,
                          const BuildParams& params) {
    if (labels.size() != graph.size()) {
        throw UsageError("label table size does not match the graph");
    }
    for (const LabelId label : labels.distinct_labels()) {
        const auto members = labels.nodes_with(label);
        graph.set_label_entry(label, compute_medoid(dataset, members, params.medoid_sample_limit,
                                                    params.seed, params.metric));
    }
}

std::vector<NodeId>
label_entry_points(const ProximityGraph& graph, const FilterPredicate& predicate) {
    std::vector<NodeId> entries;
    for (const LabelId label : predicate.required()) {
        if (const auto entry = graph.label_entry(label)) {
            entries.push_back(*entry);
        }
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    return entries;
}

SearchOutcome
filtered_beam_search(const ProximityGraph& graph,
                     const VectorDataset& dataset,
                     const LabelTable& labels,
                     std::span<const float> q,
                     std::size_t k,
                     const FilterPredicate& predicate,
                     std::span<const NodeId> start_points) {
    const auto start = std::chrono::steady_clock::now();
    detail::validate_search(graph, dataset, q, k, start_points);
    const auto eligible = [&](NodeId id) { return predicate.admits(labels, id); };

    std::vector<NodeId> fallback;
    const bool any_eligible = std::any_of(start_points.begin(), start_points.end(), eligible);
    if (!any_eligible) {
        for (const NodeId entry : label_entry_points(graph, predicate)) {
            if (eligible(entry)) {
                fallback.push_back(entry);
            }
        }
        if (fallback.empty()) {
            SearchOutcome out;
            out.stats.no_start = true;
            out.stats.elapsed_us = detail::elapsed_us_since(start);
            return out;
        }
        start_points = fallback;
    }
    auto out = detail::greedy_search(graph, dataset, q, k, start_points, eligible, nullptr);
    out.stats.elapsed_us = detail::elapsed_us_since(start);
    return out;
}

}  // namespace catapult
