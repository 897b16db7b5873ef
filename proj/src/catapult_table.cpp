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

#include "catapult/catapult_table.h"

#include <algorithm>
#include <fstream>
#include <mutex>

namespace catapult {

CatapultTable::CatapultTable(std::size_t bucket_count, std::size_t capacity)
    : bucket_count_(bucket_count),
      capacity_(capacity),
      buckets_(std::make_unique<Bucket[]>(bucket_count)) {
    if (bucket_count == 0 || capacity == 0) {
        throw UsageError("catapult table needs at least one bucket and capacity >= 1");
    }
    for (std::size_t i = 0; i < bucket_count_; ++i) {
        buckets_[i].ids.reserve(capacity_ + 1);
    }
}

std::vector<NodeId>
CatapultTable::snapshot(BucketIndex idx) const {
    std::vector<NodeId> out;
    snapshot_into(idx, out);
    return out;
}

void
CatapultTable::snapshot_into(BucketIndex idx, std::vector<NodeId>& out) const {
    if (idx >= bucket_count_) {
        throw UsageError("bucket index out of range");
    }
    const auto& bucket = buckets_[idx];
    std::shared_lock lock(bucket.mutex);
    if (bucket.ids.size() > capacity_) {
        violations_.fetch_add(1, std::memory_order_relaxed);
    }
    out.assign(bucket.ids.begin(), bucket.ids.end());
}

void
CatapultTable::publish(BucketIndex idx, NodeId node) {
    if (idx >= bucket_count_) {
        throw UsageError("bucket index out of range");
    }
    auto& bucket = buckets_[idx];
    {
        // Already the most recent entry: the LRU order would not change.
        std::shared_lock shared(bucket.mutex);
        if (!bucket.ids.empty() && bucket.ids.back() == node) {
            return;
        }
    }
    std::unique_lock lock(bucket.mutex);
    auto& ids = bucket.ids;
    const auto it = std::find(ids.begin(), ids.end(), node);
    if (it != ids.end()) {
        ids.erase(it);
    }
    ids.push_back(node);
    if (ids.size() > capacity_) {
        ids.erase(ids.begin());
    }
    if (ids.size() > capacity_) {
        violations_.fetch_add(1, std::memory_order_relaxed);
    }
}

void
CatapultTable::clear() {
    for (std::size_t i = 0; i < bucket_count_; ++i) {
        std::unique_lock lock(buckets_[i].mutex);
        buckets_[i].ids.clear();
    }
}

std::size_t
CatapultTable::total_size() const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < bucket_count_; ++i) {
        std::shared_lock lock(buckets_[i].mutex);
        total += buckets_[i].ids.size();
    }
    return total;
}

void
CatapultTable::dump(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (std::size_t i = 0; i < bucket_count_; ++i) {
        const auto ids = snapshot(static_cast<BucketIndex>(i));
        if (ids.empty()) {
            continue;
        }
        out << i << ':';
        for (const NodeId id : ids) {
            out << ' ' << id;
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace catapult
