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
#include <functional>
#include <list>
#include <span>
#include <unordered_map>
#include <vector>

#include "catapult/dataset.h"
#include "catapult/graph.h"
#include "catapult/lsh.h"
#include "catapult/search.h"

namespace catapult {

/// Medoid-only search, the reference every other engine is compared to.
SearchOutcome
vanilla_lookup(const ProximityGraph& graph,
               const VectorDataset& dataset,
               std::span<const float> q,
               std::size_t k);

/// Static LSH entry points: every indexed point is hashed once and each bucket
/// keeps the `per_bucket` members nearest the bucket mean. Lookups start from
/// those members plus the medoid and never change the index.
class StaticLshIndex {
public:
    StaticLshIndex(const ProximityGraph& graph,
                   const VectorDataset& dataset,
                   HyperplaneHasher hasher,
                   std::size_t per_bucket = 8);

    SearchOutcome
    lookup(std::span<const float> q, std::size_t k) const;

    std::span<const NodeId>
    bucket(BucketIndex idx) const {
        return entries_[idx];
    }

    const HyperplaneHasher&
    hasher() const {
        return hasher_;
    }

    /// FNV-1a over the bucket contents.
    std::uint64_t
    fingerprint() const;

private:
    const ProximityGraph& graph_;
    const VectorDataset& dataset_;
    HyperplaneHasher hasher_;
    std::vector<std::vector<NodeId>> entries_;
};

struct CacheOutcome {
    SearchOutcome outcome;
    bool hit = false;
};

/// Approximate result cache with LRU eviction. A query within `tau` of a
/// cached query with the same k gets that entry's ids back verbatim (nearest
/// cached query wins). Only entries in the query's LSH bucket are compared.
/// Single-threaded.
class ApproxCache {
public:
    using Underlying = std::function<SearchOutcome(std::span<const float>, std::size_t)>;

    ApproxCache(std::size_t capacity,
                float tau,
                HyperplaneHasher hasher,
                Metric metric = Metric::kSquaredEuclidean);

    CacheOutcome
    lookup(std::span<const float> q, std::size_t k, const Underlying& underlying);

    std::size_t
    size() const {
        return entries_.size();
    }

    std::size_t
    capacity() const {
        return capacity_;
    }

    float
    tau() const {
        return tau_;
    }

private:
    struct Entry {
        std::vector<float> query;
        std::size_t k;
        BucketIndex bucket;
        SearchResult result;
    };
    using EntryList = std::list<Entry>;

    void
    evict_oldest();

    std::size_t capacity_;
    float tau_;
    HyperplaneHasher hasher_;
    Metric metric_;
    EntryList entries_;  // most recent first
    std::unordered_map<BucketIndex, std::vector<EntryList::iterator>> by_bucket_;
};

/// Tau default: the given percentile of pairwise distances among the first
/// `sample` queries.
float
pairwise_distance_percentile(const VectorDataset& queries,
                             std::size_t sample,
                             double percentile,
                             Metric metric = Metric::kSquaredEuclidean);

}  // namespace catapult
