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

#include "catapult/distance.h"

#include <string>

#include "catapult/types.h"

namespace catapult {

Metric
parse_metric(std::string_view name) {
    if (name == "squared-euclidean" || name == "l2sq") {
        return Metric::kSquaredEuclidean;
    }
    if (name == "euclidean" || name == "l2") {
        return Metric::kEuclidean;
    }
    if (name == "cosine") {
        return Metric::kCosine;
    }
    throw UsageError("unknown metric: " + std::string(name));
}

std::string_view
metric_name(Metric metric) {
    switch (metric) {
        case Metric::kSquaredEuclidean:
            return "squared-euclidean";
        case Metric::kEuclidean:
            return "euclidean";
        case Metric::kCosine:
            return "cosine";
    }
    return "unknown";
}

float
distance(std::span<const float> a, std::span<const float> b, Metric metric) {
    if (a.size() != b.size()) {
        throw UsageError("distance: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    }
    return distance_unchecked(a.data(), b.data(), a.size(), metric);
}

}  // namespace catapult
