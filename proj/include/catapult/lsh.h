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
#include <vector>

#include "catapult/dataset.h"

namespace catapult {

using BucketIndex = std::uint32_t;

/// Random-hyperplane LSH. Bit i (most significant first) is 1 iff q . r_i >= 0,
/// so the code is invariant to positive scaling of q.
class HyperplaneHasher {
public:
    static constexpr unsigned kMaxBits = 24;

    /// `bits` normals of dimension `dim` with i.i.d. N(0, 1) components.
    HyperplaneHasher(std::size_t dim, unsigned bits, std::uint64_t seed);

    /// Explicit normals (one row per hyperplane).
    explicit HyperplaneHasher(VectorDataset normals);

    unsigned
    bits() const {
        return static_cast<unsigned>(normals_.size());
    }

    std::size_t
    dim() const {
        return normals_.dim();
    }

    std::size_t
    bucket_count() const {
        return std::size_t{1} << bits();
    }

    const VectorDataset&
    normals() const {
        return normals_;
    }

    /// Throws UsageError when q has the wrong dimension.
    BucketIndex
    hash(std::span<const float> q) const;

private:
    void
    transpose();

    VectorDataset normals_;
    std::vector<double> transposed_;  // dim x bits, for a single pass over q
};

}  // namespace catapult
