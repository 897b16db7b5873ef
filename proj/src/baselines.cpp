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

#include "catapult/baselines.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "search_core.h"

namespace catapult {

SearchOutcome
vanilla_lookup(const ProximityGraph& graph,
               const VectorDataset& dataset,
               std::span<const float> q,
               std::size_t k) {
    if (graph.empty()) {
        throw UsageError("lookup on an empty index");
    }
    const NodeId medoid = graph.medoid();
    return beam_search(graph, dataset, q, k, std::span<const NodeId>(&medoid, 1));
}

StaticLshIndex::StaticLshIndex(const ProximityGraph& graph,
                               const VectorDataset& dataset,
                               HyperplaneHasher hasher,
                               std::size_t per_bucket)
    : graph_(graph), dataset_(dataset), hasher_(std::move(hasher)) {
    if (hasher_.dim() != dataset.dim()) {
        throw UsageError("static LSH: hasher dimension does not match the dataset");
    }
    const std::size_t buckets = hasher_.bucket_count();
    const std::size_t dim = dataset.dim();
    std::vector<std::vector<NodeId>> members(buckets);
    for (std::size_t i = 0; i < graph.size(); ++i) {
        members[hasher_.hash(dataset.row(i))].push_back(static_cast<NodeId>(i));
    }
    entries_.resize(buckets);
    std::vector<double> mean(dim);
    std::vector<float> mean_f(dim);
    for (std::size_t b = 0; b < buckets; ++b) {
        const auto& ids = members[b];
        if (ids.empty()) {
            continue;
        }
        std::fill(mean.begin(), mean.end(), 0.0);
        for (const NodeId id : ids) {
            const float* row = dataset.row_ptr(id);
            for (std::size_t j = 0; j < dim; ++j) {
                mean[j] += row[j];
            }
        }
        for (std::size_t j = 0; j < dim; ++j) {
            mean_f[j] = static_cast<float>(mean[j] / static_cast<double>(ids.size()));
        }
        std::vector<Neighbor> ranked;
        ranked.reserve(ids.size());
        for (const NodeId id : ids) {
            ranked.push_back(
                {id, distance_unchecked(mean_f.data(), dataset.row_ptr(id), dim, graph.metric())});
        }
        const std::size_t keep = std::min(per_bucket, ranked.size());
        std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                          ranked.end());
        for (std::size_t i = 0; i < keep; ++i) {
            entries_[b].push_back(ranked[i].id);
        }
    }
}

SearchOutcome
StaticLshIndex::lookup(std::span<const float> q, std::size_t k) const {
    const auto start = std::chrono::steady_clock::now();
    if (graph_.empty()) {
        throw UsageError("lookup on an empty index");
    }
    const auto& bucket = entries_[hasher_.hash(q)];
    std::vector<NodeId> start_points(bucket.begin(), bucket.end());
    start_points.push_back(graph_.medoid());
    detail::validate_search(graph_, dataset_, q, k, start_points);
    auto out = detail::greedy_search(
        graph_, dataset_, q, k, start_points, [](NodeId) { return true; }, nullptr);
    out.stats.elapsed_us = detail::elapsed_us_since(start);
    return out;
}

std::uint64_t
StaticLshIndex::fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    for (std::size_t b = 0; b < entries_.size(); ++b) {
        mix(b);
        mix(entries_[b].size());
        for (const NodeId id : entries_[b]) {
            mix(id);
        }
    }
    return h;
}

ApproxCache::ApproxCache(std::size_t capacity, float tau, HyperplaneHasher hasher, Metric metric)
    : capacity_(capacity), tau_(tau), hasher_(std::move(hasher)), metric_(metric) {
    if (capacity == 0) {
        throw UsageError("cache capacity must be positive");
    }
    if (!(tau >= 0.0f)) {
        throw UsageError("cache tau must be >= 0");
    }
}

void
ApproxCache::evict_oldest() {
    const auto victim = std::prev(entries_.end());
    auto& list = by_bucket_[victim->bucket];
    list.erase(std::find(list.begin(), list.end(), victim));
    if (list.empty()) {
        by_bucket_.erase(victim->bucket);
    }
    entries_.erase(victim);
}

CacheOutcome
ApproxCache::lookup(std::span<const float> q, std::size_t k, const Underlying& underlying) {
    const auto start = std::chrono::steady_clock::now();
    const BucketIndex bucket = hasher_.hash(q);
    if (const auto it = by_bucket_.find(bucket); it != by_bucket_.end()) {
        EntryList::iterator best = entries_.end();
        float best_distance = std::numeric_limits<float>::infinity();
        for (const auto entry : it->second) {
            if (entry->k != k) {
                continue;
            }
            const float d = distance(q, entry->query, metric_);
            if (d <= tau_ && d < best_distance) {
                best_distance = d;
                best = entry;
            }
        }
        if (best != entries_.end()) {
            entries_.splice(entries_.begin(), entries_, best);
            CacheOutcome hit;
            hit.hit = true;
            hit.outcome.result = best->result;
            hit.outcome.stats.cache_hit = true;
            hit.outcome.stats.elapsed_us = detail::elapsed_us_since(start);
            return hit;
        }
    }

    CacheOutcome miss;
    miss.outcome = underlying(q, k);
    if (entries_.size() >= capacity_) {
        evict_oldest();
    }
    entries_.push_front(Entry{{q.begin(), q.end()}, k, bucket, miss.outcome.result});
    by_bucket_[bucket].push_back(entries_.begin());
    miss.outcome.stats.elapsed_us = detail::elapsed_us_since(start);
    return miss;
}

float
pairwise_distance_percentile(const VectorDataset& queries,
                             std::size_t sample,
                             double percentile,
                             Metric metric) {
    const std::size_t m = std::min(sample, queries.size());
    if (m < 2) {
        return 0.0f;
    }
    std::vector<float> dists;
    dists.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            dists.push_back(distance(queries.row(i), queries.row(j), metric));
        }
    }
    const double clamped = std::clamp(percentile, 0.0, 100.0);
    const auto rank = static_cast<std::size_t>(
        std::floor(clamped / 100.0 * static_cast<double>(dists.size() - 1)));
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(rank), dists.end());
    return dists[rank];
}

}  // namespace catapult
