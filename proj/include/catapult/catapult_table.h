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

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "catapult/lsh.h"
#include "catapult/types.h"

namespace catapult {

/// 2^L buckets of at most `capacity` node ids each, least recent first. Every
/// bucket has its own reader-writer lock: snapshots take it shared, publishes
/// take it exclusive, and buckets never block each other.
class CatapultTable {
public:
    CatapultTable(std::size_t bucket_count, std::size_t capacity);

    CatapultTable(const CatapultTable&) = delete;
    CatapultTable&
    operator=(const CatapultTable&) = delete;

    std::size_t
    bucket_count() const {
        return bucket_count_;
    }

    std::size_t
    capacity() const {
        return capacity_;
    }

    /// Copy of the bucket's ids in LRU order (most recent last).
    std::vector<NodeId>
    snapshot(BucketIndex idx) const;

    /// Same copy into a caller-owned buffer, replacing its contents.
    void
    snapshot_into(BucketIndex idx, std::vector<NodeId>& out) const;

    /// Moves `node` to the most-recent position, inserting it if absent and
    /// evicting the least recent entry beyond capacity.
    void
    publish(BucketIndex idx, NodeId node);

    void
    clear();

    /// Ids currently stored across all buckets.
    std::size_t
    total_size() const;

    /// Upper bound on stored ids, capacity * bucket_count.
    std::size_t
    max_entries() const {
        return capacity_ * bucket_count_;
    }

    /// Times a bucket was observed above capacity, under its lock. Stays zero
    /// unless the LRU bookkeeping is broken.
    std::size_t
    capacity_violations() const {
        return violations_.load(std::memory_order_relaxed);
    }

    /// One line per non-empty bucket: "<index>: id id ...", LRU order.
    void
    dump(const std::filesystem::path& path) const;

private:
    struct alignas(64) Bucket {
        mutable std::shared_mutex mutex;
        std::vector<NodeId> ids;
    };

    std::size_t bucket_count_;
    std::size_t capacity_;
    std::unique_ptr<Bucket[]> buckets_;
    mutable std::atomic<std::size_t> violations_{0};
};

}  // namespace catapult
