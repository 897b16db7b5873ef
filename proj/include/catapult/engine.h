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

#include "catapult/catapult_table.h"
#include "catapult/dataset.h"
#include "catapult/filter.h"
#include "catapult/graph.h"
#include "catapult/lsh.h"
#include "catapult/search.h"

namespace catapult {

struct CatapultParams {
    unsigned lsh_bits = 8;             // L
    std::size_t bucket_capacity = 40;  // b
    std::uint64_t seed = 0;            // hyperplane seed
    /// When false, lookups never write to the table.
    bool publish = true;
};

/// Catapult layer over a proximity graph. Each lookup hashes the query,
/// starts the beam search from the bucket's catapults plus the medoid, then
/// publishes the best result back into the bucket.
///
/// The graph, dataset and labels are borrowed and must not change while
/// lookups run. Lookups themselves are safe to call from many threads.
class CatapultEngine {
public:
    CatapultEngine(const ProximityGraph& graph,
                   const VectorDataset& dataset,
                   const CatapultParams& params,
                   const LabelTable* labels = nullptr);

    SearchOutcome
    lookup(std::span<const float> q, std::size_t k);

    /// Catapults failing the predicate are dropped; the per-label entry points
    /// always join the start set. Throws UsageError without a label table.
    SearchOutcome
    filtered_lookup(std::span<const float> q, std::size_t k, const FilterPredicate& predicate);

    CatapultTable&
    table() {
        return table_;
    }

    const CatapultTable&
    table() const {
        return table_;
    }

    const HyperplaneHasher&
    hasher() const {
        return hasher_;
    }

    void
    set_publish(bool publish) {
        params_.publish = publish;
    }

private:
    const ProximityGraph& graph_;
    const VectorDataset& dataset_;
    const LabelTable* labels_;
    CatapultParams params_;
    HyperplaneHasher hasher_;
    CatapultTable table_;
};

}  // namespace catapult
