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

#include "catapult/engine.h"

#include <algorithm>
#include <chrono>

#include "search_core.h"

namespace catapult {

CatapultEngine::CatapultEngine(const ProximityGraph& graph,
                               const VectorDataset& dataset,
                               const CatapultParams& params,
                               const LabelTable* labels)
    : graph_(graph),
      dataset_(dataset),
      labels_(labels),
      params_(params),
      hasher_(dataset.dim(), params.lsh_bits, params.seed),
      table_(hasher_.bucket_count(), params.bucket_capacity) {
}

SearchOutcome
CatapultEngine::lookup(std::span<const float> q, std::size_t k) {
    const auto start = std::chrono::steady_clock::now();
    if (graph_.empty()) {
        throw UsageError("catapulted lookup on an empty index");
    }
    const BucketIndex idx = hasher_.hash(q);
    thread_local std::vector<NodeId> start_points;
    table_.snapshot_into(idx, start_points);
    const bool used = !start_points.empty();
    const auto offered = static_cast<std::uint32_t>(start_points.size());
    start_points.push_back(graph_.medoid());

    detail::validate_search(graph_, dataset_, q, k, start_points);
    auto out = detail::greedy_search(
        graph_, dataset_, q, k, start_points, [](NodeId) { return true; }, nullptr);
    if (params_.publish && !out.result.empty()) {
        table_.publish(idx, out.result.ids.front());
    }
    out.stats.catapult_used = used;
    out.stats.eligible_catapults = offered;
    out.stats.elapsed_us = detail::elapsed_us_since(start);
    return out;
}

SearchOutcome
CatapultEngine::filtered_lookup(std::span<const float> q,
                                std::size_t k,
                                const FilterPredicate& predicate) {
    const auto start = std::chrono::steady_clock::now();
    if (labels_ == nullptr) {
        throw UsageError("filtered lookup needs a label table");
    }
    if (graph_.empty()) {
        throw UsageError("catapulted lookup on an empty index");
    }
    const BucketIndex idx = hasher_.hash(q);
    const auto snapshot = table_.snapshot(idx);
    std::vector<NodeId> start_points;
    start_points.reserve(snapshot.size() + predicate.required().size());
    for (const NodeId id : snapshot) {
        if (id < graph_.size() && predicate.admits(*labels_, id)) {
            start_points.push_back(id);
        }
    }
    const auto eligible = static_cast<std::uint32_t>(start_points.size());
    for (const NodeId entry : label_entry_points(graph_, predicate)) {
        start_points.push_back(entry);
    }

    auto out = filtered_beam_search(graph_, dataset_, *labels_, q, k, predicate, start_points);
    if (params_.publish && !out.result.empty()) {
        table_.publish(idx, out.result.ids.front());
    }
    out.stats.catapult_used = !snapshot.empty();
    out.stats.eligible_catapults = eligible;
    out.stats.elapsed_us = detail::elapsed_us_since(start);
    return out;
}

}  // namespace catapult
