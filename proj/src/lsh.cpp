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

#include "catapult/lsh.h"

#include <array>
#include <random>
#include <string>

namespace catapult {

HyperplaneHasher::HyperplaneHasher(std::size_t dim, unsigned bits, std::uint64_t seed) {
    if (bits == 0 || bits > kMaxBits) {
        throw UsageError("LSH bit count must be in [1, " + std::to_string(kMaxBits) + "]");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> normal(0.0f, 1.0f);
    std::vector<float> values(static_cast<std::size_t>(bits) * dim);
    for (auto& v : values) {
        v = normal(rng);
    }
    normals_ = VectorDataset(dim, std::move(values));
    transpose();
}

HyperplaneHasher::HyperplaneHasher(VectorDataset normals) : normals_(std::move(normals)) {
    if (normals_.size() == 0 || normals_.size() > kMaxBits) {
        throw UsageError("LSH bit count must be in [1, " + std::to_string(kMaxBits) + "]");
    }
    transpose();
}

void
HyperplaneHasher::transpose() {
    const std::size_t bits = normals_.size();
    transposed_.resize(bits * normals_.dim());
    for (std::size_t i = 0; i < bits; ++i) {
        const float* r = normals_.row_ptr(i);
        for (std::size_t j = 0; j < normals_.dim(); ++j) {
            transposed_[j * bits + i] = r[j];
        }
    }
}

BucketIndex
HyperplaneHasher::hash(std::span<const float> q) const {
    if (q.size() != normals_.dim()) {
        throw UsageError("lsh_hash: query dimension " + std::to_string(q.size()) +
                         " does not match hyperplane dimension " + std::to_string(dim()));
    }
    // Double accumulation keeps the sign stable under rescaling of q. All bits
    // advance together over q, each summing in the same order as a plain dot.
    const std::size_t bits = normals_.size();
    std::array<double, kMaxBits> dots{};
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double qj = q[j];
        const double* r = transposed_.data() + j * bits;
        for (std::size_t i = 0; i < bits; ++i) {
            dots[i] += qj * r[i];
        }
    }
    BucketIndex code = 0;
    for (std::size_t i = 0; i < bits; ++i) {
        code = (code << 1) | (dots[i] >= 0.0 ? 1U : 0U);
    }
    return code;
}

}  // namespace catapult
