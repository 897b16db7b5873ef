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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "catapult/dataset.h"

namespace catapult {

enum class WorkloadMode {
    kUniform,
    kZipfClustered,
    kShifted,
};

WorkloadMode
parse_workload_mode(std::string_view name);

std::string_view
workload_mode_name(WorkloadMode mode);

struct WorkloadSpec {
    WorkloadMode mode = WorkloadMode::kUniform;
    std::size_t query_count = 1000;
    std::size_t dim = 64;
    double zipf_s = 0.8;
    std::size_t cluster_count = 1000;
    double cluster_stddev = 0.05;
    /// Query index at which the rank -> cluster assignment is re-permuted (shifted mode).
    std::optional<std::size_t> shift_point;
    std::uint64_t seed = 0;

    /// Throws UsageError when a field is out of range.
    void
    validate() const;
};

/// Samples ranks 1..n with P(rank r) proportional to r^-s via cumulative weights.
class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double s);

    /// Zero-based rank for a uniform draw u in [0, 1).
    std::size_t
    rank_for(double u) const;

    double
    probability(std::size_t rank) const;

    std::size_t
    size() const {
        return cdf_.size();
    }

private:
    std::vector<double> cdf_;
};

/// Ordered query stream. Uniform mode draws every component from U[-1, 1].
/// Clustered modes draw a Zipf rank, map it to a centroid row and add
/// N(0, cluster_stddev^2) noise per component. Deterministic in (spec, seed).
VectorDataset
generate_workload(const WorkloadSpec& spec, const VectorDataset* centroids = nullptr);

/// Same as generate_workload but also reports which centroid each query came
/// from (all zeros in uniform mode).
VectorDataset
generate_workload(const WorkloadSpec& spec,
                  const VectorDataset* centroids,
                  std::vector<std::uint32_t>* cluster_of_query);

/// `count` distinct rows of `dataset` picked uniformly at random.
VectorDataset
sample_rows(const VectorDataset& dataset, std::size_t count, std::uint64_t seed);

/// Mixture of `clusters` isotropic Gaussians whose centres are uniform in
/// [-1, 1]^dim. Used as the synthetic indexed corpus.
VectorDataset
generate_gaussian_mixture(std::size_t n,
                          std::size_t dim,
                          std::size_t clusters,
                          double stddev,
                          std::uint64_t seed);

/// One label per node, uniform over [0, label_count).
LabelTable
generate_random_labels(std::size_t n, std::size_t label_count, std::uint64_t seed);

}  // namespace catapult
