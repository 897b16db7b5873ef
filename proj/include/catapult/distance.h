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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>

namespace catapult {

enum class Metric {
    kSquaredEuclidean,
    kEuclidean,
    kCosine,
};

Metric
parse_metric(std::string_view name);

std::string_view
metric_name(Metric metric);

inline float
squared_l2(const float* a, const float* b, std::size_t dim) {
    // Eight independent lanes let the compiler vectorize without reassociation flags.
    float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= dim; i += 8) {
        for (std::size_t j = 0; j < 8; ++j) {
            const float d = a[i + j] - b[i + j];
            acc[j] += d * d;
        }
    }
    float tail = 0;
    for (; i < dim; ++i) {
        const float d = a[i] - b[i];
        tail += d * d;
    }
    return ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7])) +
           tail;
}

inline float
inner_product(const float* a, const float* b, std::size_t dim) {
    float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= dim; i += 8) {
        for (std::size_t j = 0; j < 8; ++j) {
            acc[j] += a[i + j] * b[i + j];
        }
    }
    float tail = 0;
    for (; i < dim; ++i) {
        tail += a[i] * b[i];
    }
    return ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7])) +
           tail;
}

/// Unchecked variant for hot loops; dimensions must already agree.
inline float
distance_unchecked(const float* a, const float* b, std::size_t dim, Metric metric) {
    switch (metric) {
        case Metric::kSquaredEuclidean:
            return squared_l2(a, b, dim);
        case Metric::kEuclidean:
            return std::sqrt(squared_l2(a, b, dim));
        case Metric::kCosine: {
            const float na = inner_product(a, a, dim);
            const float nb = inner_product(b, b, dim);
            if (na == 0.0f || nb == 0.0f) {
                return 1.0f;
            }
            const float cos = inner_product(a, b, dim) / std::sqrt(na * nb);
            return std::clamp(1.0f - cos, 0.0f, 2.0f);
        }
    }
    return 0.0f;
}

/// Distance between two equal-length vectors. Cosine distance is 1 - cos(a, b),
/// clamped to [0, 2]; a zero vector is at distance 1 from everything.
/// Throws UsageError on a dimension mismatch.
float
distance(std::span<const float> a, std::span<const float> b, Metric metric);


}  // namespace catapult

