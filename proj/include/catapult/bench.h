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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catapult/dataset.h"
#include "catapult/graph.h"
#include "catapult/workload.h"

namespace catapult {

enum class EngineKind {
    kVanilla,
    kCatapult,
    kLshEntry,
    kCache,
};

EngineKind
parse_engine(std::string_view name);

std::string_view
engine_name(EngineKind engine);

enum class ReportFormat {
    kJson,
    kCsv,
};

ReportFormat
parse_report_format(std::string_view name);

/// Insert `batch_size` vectors after every `period` queries, with all
/// workers paused, until the source runs out.
struct InsertSchedule {
    std::size_t batch_size = 1000;
    std::size_t period = 50;
    /// Vector file to draw inserts from. Empty: generated around the workload's
    /// cluster centroids (or uniformly for uniform workloads).
    std::string source_path;
    std::size_t total = 0;  // generated inserts; 0 = enough for the whole stream
};

struct BenchConfig {
    std::string dataset_path;
    std::string index_path;     // optional prebuilt index
    std::string workload_path;  // optional fixed query stream
    std::optional<WorkloadSpec> workload;
    std::string labels_path;

    std::vector<EngineKind> engines{EngineKind::kVanilla, EngineKind::kCatapult};
    std::vector<std::size_t> ks{1, 4, 16};
    std::vector<std::size_t> threads{1};

    unsigned lsh_bits = 8;
    std::size_t bucket_capacity = 40;
    BuildParams build;
    std::size_t lsh_entry_per_bucket = 8;
    std::size_t cache_capacity = 1024;
    std::optional<float> cache_tau;  // default: 5th percentile of warmup pairwise distances

    std::optional<InsertSchedule> insert;
    std::optional<LabelId> filter;

    std::vector<std::uint64_t> seeds{0};
    double warmup_fraction = 0.1;
    std::size_t recall_sample = 1000;
    std::size_t recall_at = 0;  // 0: recall@k
    bool per_query = false;

    std::string output_path;
    ReportFormat format = ReportFormat::kJson;

    /// Throws UsageError on inconsistent settings.
    void
    validate() const;
};

std::string
config_to_json(const BenchConfig& config);

BenchConfig
config_from_json(std::string_view text);

BenchConfig
load_config(const std::filesystem::path& path);

/// One (engine, k, threads, seed) run over the measured part of the stream.
struct RunMetrics {
    std::uint64_t seed = 0;
    std::size_t queries = 0;  // measured (post-warmup) queries
    double seconds = 0.0;
    double qps = 0.0;
    std::size_t recall_samples = 0;
    double mean_recall = 0.0;
    double median_recall = 0.0;
    double mean_nodes_visited = 0.0;
    double mean_distance_computations = 0.0;
    double catapult_usage = 0.0;
    double cache_hit_rate = 0.0;
    std::size_t cache_hit_samples = 0;
    double cache_hit_median_recall = 0.0;
    std::size_t no_start_queries = 0;
    std::size_t inserted = 0;
};

/// Cross-seed aggregate for one (engine, k, threads).
struct EngineMetrics {
    EngineKind engine = EngineKind::kVanilla;
    std::size_t k = 0;
    std::size_t threads = 1;
    std::size_t queries = 0;
    double qps = 0.0;
    double mean_recall = 0.0;
    double median_recall = 0.0;
    double mean_nodes_visited = 0.0;
    double mean_distance_computations = 0.0;
    double catapult_usage = 0.0;
    double cache_hit_rate = 0.0;
    double cache_hit_median_recall = 0.0;
    std::vector<RunMetrics> per_seed;
};

struct QueryRecord {
    EngineKind engine = EngineKind::kVanilla;
    std::size_t k = 0;
    std::size_t threads = 1;
    std::uint64_t seed = 0;
    std::size_t query = 0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t distance_computations = 0;
    bool catapult_used = false;
    bool cache_hit = false;
    double recall = -1.0;  // -1 when not sampled
    double elapsed_us = 0.0;
};

struct MetricsReport {
    BenchConfig config;
    std::vector<std::uint64_t> seeds;
    std::vector<EngineMetrics> rows;
    std::vector<QueryRecord> records;
    std::vector<std::string> notes;

    const EngineMetrics*
    find(EngineKind engine, std::size_t k, std::size_t threads) const;
};

/// |result[:k] & truth[:k]| / |truth[:k]|; 1 when the truth is empty.
double
compute_recall(std::span<const NodeId> result, std::span<const NodeId> truth, std::size_t k);

/// In-memory inputs. Anything left null is resolved from the config paths
/// or generated from the config.
struct BenchInputs {
    const VectorDataset* dataset = nullptr;
    const ProximityGraph* graph = nullptr;
    const LabelTable* labels = nullptr;
    /// Fixed query stream shared by every seed.
    const VectorDataset* queries = nullptr;
    /// Per-query filter label; overrides config.filter.
    const std::vector<LabelId>* query_filters = nullptr;
    /// Vectors for the insertion schedule.
    const VectorDataset* insert_vectors = nullptr;
};

MetricsReport
run_benchmark(const BenchConfig& config, const BenchInputs& inputs = {});

std::string
report_to_json(const MetricsReport& report);

MetricsReport
report_from_json(std::string_view text);

std::string
report_to_csv(const MetricsReport& report);

/// Throws IoError when the path cannot be written.
void
emit_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path);

/// Exact k-NN id lists for every query. Row i uses only the first
/// `prefix_sizes[i]` dataset rows when prefix sizes are given.
std::vector<std::vector<NodeId>>
compute_ground_truth(const VectorDataset& dataset,
                     const VectorDataset& queries,
                     std::size_t k,
                     Metric metric = Metric::kSquaredEuclidean,
                     std::span<const std::size_t> prefix_sizes = {});

/// Truth file: int32 n, int32 k, then n*k int32 ids (-1 pads short rows).
void
save_ground_truth(const std::filesystem::path& path,
                  const std::vector<std::vector<NodeId>>& truth,
                  std::size_t k);

std::vector<std::vector<NodeId>>
load_ground_truth(const std::filesystem::path& path);

}  // namespace catapult
