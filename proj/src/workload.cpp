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

#include "catapult/workload.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace catapult {

namespace {

constexpr std::uint64_t kShiftSalt = 0x9e3779b97f4a7c15ULL;

}  // namespace

WorkloadMode
parse_workload_mode(std::string_view name) {
    if (name == "uniform") {
        return WorkloadMode::kUniform;
    }
    if (name == "zipf-clustered" || name == "zipf") {
        return WorkloadMode::kZipfClustered;
    }
    if (name == "shifted") {
        return WorkloadMode::kShifted;
    }
    throw UsageError("unknown workload mode: " + std::string(name));
}

std::string_view
workload_mode_name(WorkloadMode mode) {
    switch (mode) {
        case WorkloadMode::kUniform:
            return "uniform";
        case WorkloadMode::kZipfClustered:
            return "zipf-clustered";
        case WorkloadMode::kShifted:
            return "shifted";
    }
    return "unknown";
}

void
WorkloadSpec::validate() const {
    if (dim == 0) {
        throw UsageError("workload dim must be positive");
    }
    if (!(zipf_s > 0.0)) {
        throw UsageError("zipf_s must be > 0");
    }
    if (shift_point && *shift_point >= query_count && query_count > 0) {
        throw UsageError("shift_point must be < query_count");
    }
    if (mode == WorkloadMode::kUniform) {
        return;
    }
    if (cluster_count == 0) {
        throw UsageError("cluster_count must be positive");
    }
    if (!(cluster_stddev > 0.0)) {
        throw UsageError("cluster_stddev must be > 0");
    }
}

ZipfSampler::ZipfSampler(std::size_t n, double s) : cdf_(n) {
    if (n == 0) {
        throw UsageError("ZipfSampler needs at least one rank");
    }
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        total += std::pow(static_cast<double>(r + 1), -s);
        cdf_[r] = total;
    }
    for (auto& c : cdf_) {
        c /= total;
    }
    cdf_.back() = 1.0;
}

std::size_t
ZipfSampler::rank_for(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

double
ZipfSampler::probability(std::size_t rank) const {
    return rank == 0 ? cdf_[0] : cdf_[rank] - cdf_[rank - 1];
}

VectorDataset
generate_workload(const WorkloadSpec& spec, const VectorDataset* centroids) {
    return generate_workload(spec, centroids, nullptr);
}

VectorDataset
generate_workload(const WorkloadSpec& spec,
                  const VectorDataset* centroids,
                  std::vector<std::uint32_t>* cluster_of_query) {
    spec.validate();
    VectorDataset out(spec.dim);
    out.reserve(spec.query_count);
    if (cluster_of_query != nullptr) {
        cluster_of_query->assign(spec.query_count, 0);
    }
    std::mt19937_64 rng(spec.seed);
    std::vector<float> q(spec.dim);

    if (spec.mode == WorkloadMode::kUniform) {
        std::uniform_real_distribution<float> uniform(-1.0f, 1.0f);
        for (std::size_t i = 0; i < spec.query_count; ++i) {
            for (auto& x : q) {
                x = uniform(rng);
            }
            out.append(q);
        }
        return out;
    }

    if (centroids == nullptr || centroids->size() < spec.cluster_count) {
        throw UsageError("clustered workloads need at least cluster_count centroids");
    }
    if (centroids->dim() != spec.dim) {
        throw UsageError("centroid dimension does not match workload dim");
    }
    const ZipfSampler zipf(spec.cluster_count, spec.zipf_s);
    std::vector<std::uint32_t> cluster_of_rank(spec.cluster_count);
    std::iota(cluster_of_rank.begin(), cluster_of_rank.end(), 0U);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<float> noise(0.0f, static_cast<float>(spec.cluster_stddev));

    for (std::size_t i = 0; i < spec.query_count; ++i) {
        if (spec.mode == WorkloadMode::kShifted && spec.shift_point && i == *spec.shift_point) {
            std::mt19937_64 shift_rng(spec.seed ^ kShiftSalt);
            std::shuffle(cluster_of_rank.begin(), cluster_of_rank.end(), shift_rng);
        }
        const auto cluster = cluster_of_rank[zipf.rank_for(unit(rng))];
        const auto centre = centroids->row(cluster);
        for (std::size_t j = 0; j < spec.dim; ++j) {
            q[j] = centre[j] + noise(rng);
        }
        out.append(q);
        if (cluster_of_query != nullptr) {
            (*cluster_of_query)[i] = cluster;
        }
    }
    return out;
}

VectorDataset
sample_rows(const VectorDataset& dataset, std::size_t count, std::uint64_t seed) {
    if (count > dataset.size()) {
        throw UsageError("cannot sample more rows than the dataset holds");
    }
    std::vector<std::size_t> all(dataset.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates: the first `count` slots end up a uniform sample.
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
        std::swap(all[i], all[pick(rng)]);
    }
    VectorDataset out(dataset.dim());
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.append(dataset.row(all[i]));
    }
    return out;
}

VectorDataset
generate_gaussian_mixture(std::size_t n,
                          std::size_t dim,
                          std::size_t clusters,
                          double stddev,
                          std::uint64_t seed) {
    if (clusters == 0) {
        throw UsageError("mixture needs at least one cluster");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> uniform(-1.0f, 1.0f);
    std::vector<float> centres(clusters * dim);
    for (auto& c : centres) {
        c = uniform(rng);
    }
    std::uniform_int_distribution<std::size_t> pick(0, clusters - 1);
    std::normal_distribution<float> noise(0.0f, static_cast<float>(stddev));
    VectorDataset out(dim);
    out.reserve(n);
    std::vector<float> v(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const float* centre = centres.data() + pick(rng) * dim;
        for (std::size_t j = 0; j < dim; ++j) {
            v[j] = centre[j] + noise(rng);
        }
        out.append(v);
    }
    return out;
}

LabelTable
generate_random_labels(std::size_t n, std::size_t label_count, std::uint64_t seed) {
    if (label_count == 0) {
        throw UsageError("label_count must be positive");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<LabelId> pick(0, static_cast<LabelId>(label_count - 1));
    std::vector<std::vector<LabelId>> rows(n);
    for (auto& row : rows) {
        row.push_back(pick(rng));
    }
    return LabelTable(std::move(rows));
}

}  // namespace catapult
