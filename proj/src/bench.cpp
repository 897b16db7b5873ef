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

#include "catapult/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "catapult/baselines.h"
#include "catapult/brute_force.h"
#include "catapult/engine.h"
#include "catapult/filter.h"
#include "catapult/lsh.h"

namespace catapult {

namespace {

constexpr std::uint64_t kCentroidSalt = 0x5bd1e9955bd1e995ULL;
constexpr std::uint64_t kSampleSalt = 0x2545f4914f6cdd1dULL;
constexpr std::uint64_t kInsertSalt = 0x9e3779b97f4a7c15ULL;
constexpr double kCacheTauPercentile = 5.0;
constexpr std::size_t kCacheTauSample = 1000;
constexpr std::size_t kTimingChunk = 1000;

double
median_of(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    if (values.size() % 2 == 0) {
        m = (m + *std::max_element(values.begin(), values.begin() + mid)) / 2.0;
    }
    return m;
}

double
mean_of(const std::vector<double>& values) {
    if (values.empty()) {
        return 0.0;
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

// Everything one seed needs: the stream, its filters, the inserts that will
// be applied, and the oracle for the recall sample.
struct SeedPlan {
    std::uint64_t seed = 0;
    VectorDataset queries;
    std::vector<LabelId> filters;  // empty: config.filter or none
    VectorDataset inserts;
    std::size_t warmup_end = 0;
    std::vector<std::size_t> insert_points;  // query index before which a batch lands
    std::vector<std::size_t> sample;         // sorted query indices
    std::vector<std::int64_t> sample_slot;   // query -> position in sample, -1 otherwise
    std::vector<std::vector<NodeId>> truth;  // per sample slot
    float cache_tau = 0.0f;
};

class Harness {
public:
    Harness(const BenchConfig& config, const BenchInputs& inputs) : config_(config), inputs_(inputs) {
        config_.validate();
        resolve();
    }

    MetricsReport
    run() {
        MetricsReport report;
        report.config = config_;
        report.seeds = config_.seeds;
        if (config_.insert && filtered()) {
            report.notes.emplace_back(
                "per-label entry points are fixed after build; inserted nodes are unlabeled");
        }
        if (config_.insert) {
            report.notes.emplace_back(
                "runs of one seed share a copy of the index that receives the insertions");
        }

        std::vector<SeedPlan> plans;
        plans.reserve(config_.seeds.size());
        for (const auto seed : config_.seeds) {
            plans.push_back(plan_seed(seed));
        }

        for (const auto engine : config_.engines) {
            for (const auto k : config_.ks) {
                for (const auto t : config_.threads) {
                    EngineMetrics row;
                    row.engine = engine;
                    row.k = k;
                    row.threads = t;
                    report.rows.push_back(std::move(row));
                }
            }
        }
        std::vector<std::vector<QueryRecord>> records(report.rows.size());
        for (const auto& plan : plans) {
            run_seed(plan, report.rows, records);
        }
        for (std::size_t r = 0; r < report.rows.size(); ++r) {
            aggregate(report.rows[r]);
            report.records.insert(report.records.end(), records[r].begin(), records[r].end());
        }
        return report;
    }

private:
    bool
    filtered() const {
        return config_.filter.has_value() || inputs_.query_filters != nullptr;
    }

    void
    resolve() {
        if (inputs_.dataset == nullptr && config_.dataset_path.empty() && config_.index_path.empty()) {
            throw UsageError("bench: no dataset");
        }
        if (filtered() && inputs_.labels == nullptr && config_.labels_path.empty()) {
            throw UsageError("bench: filter requires labels");
        }
        if (inputs_.queries == nullptr && config_.workload_path.empty() && !config_.workload) {
            throw UsageError("bench: no workload");
        }
        for (const auto engine : config_.engines) {
            if (engine == EngineKind::kCache &&
                std::any_of(config_.threads.begin(), config_.threads.end(),
                            [](std::size_t t) { return t != 1; })) {
                throw UsageError("bench: the cache baseline is single-threaded");
            }
            if (filtered() && (engine == EngineKind::kCache || engine == EngineKind::kLshEntry)) {
                throw UsageError("bench: engine " + std::string(engine_name(engine)) +
                                 " does not support filters");
            }
        }
        if (config_.insert && filtered()) {
            throw UsageError("bench: insertion with filters is not supported");
        }

        if (inputs_.dataset != nullptr) {
            dataset_ = inputs_.dataset;
        } else if (!config_.index_path.empty() && inputs_.graph == nullptr) {
            auto loaded = load_index(config_.index_path, config_.build.metric);
            owned_graph_ = std::make_unique<ProximityGraph>(std::move(loaded.graph));
            owned_dataset_ = std::make_unique<VectorDataset>(std::move(loaded.dataset));
            dataset_ = owned_dataset_.get();
        } else {
            owned_dataset_ = std::make_unique<VectorDataset>(load_vectors(config_.dataset_path));
            dataset_ = owned_dataset_.get();
        }

        if (inputs_.labels != nullptr) {
            labels_ = inputs_.labels;
        } else if (!config_.labels_path.empty()) {
            owned_labels_ = std::make_unique<LabelTable>(load_labels(config_.labels_path));
            labels_ = owned_labels_.get();
        }
        if (labels_ != nullptr && labels_->size() != dataset_->size()) {
            throw UsageError("bench: label count does not match dataset size");
        }
        // Index files do not carry label entry points.
        if (owned_graph_ != nullptr && labels_ != nullptr) {
            assign_label_entry_points(*owned_graph_, *dataset_, *labels_, config_.build);
        }

        if (inputs_.graph != nullptr) {
            graph_ = inputs_.graph;
        } else if (owned_graph_ == nullptr) {
            owned_graph_ = std::make_unique<ProximityGraph>(
                filtered() ? build_filtered_index(*dataset_, *labels_, config_.build)
                           : build_vamana(*dataset_, config_.build));
        }
        if (graph_ == nullptr) {
            graph_ = owned_graph_.get();
        }
        if (graph_->size() != dataset_->size()) {
            throw UsageError("bench: graph and dataset sizes differ");
        }

        if (inputs_.queries == nullptr && !config_.workload_path.empty()) {
            owned_queries_ = std::make_unique<VectorDataset>(load_vectors(config_.workload_path));
        }
        if (!config_.insert || config_.insert->source_path.empty() || inputs_.insert_vectors) {
            return;
        }
        owned_inserts_ = std::make_unique<VectorDataset>(load_vectors(config_.insert->source_path));
    }

    SeedPlan
    plan_seed(std::uint64_t seed) const {
        SeedPlan plan;
        plan.seed = seed;
        std::optional<VectorDataset> centroids;
        if (inputs_.queries != nullptr) {
            plan.queries = *inputs_.queries;
        } else if (owned_queries_) {
            plan.queries = *owned_queries_;
        } else {
            WorkloadSpec spec = *config_.workload;
            spec.seed += seed;
            spec.dim = dataset_->dim();
            if (spec.mode != WorkloadMode::kUniform) {
                centroids = sample_rows(*dataset_, std::min(spec.cluster_count, dataset_->size()),
                                        spec.seed ^ kCentroidSalt);
                spec.cluster_count = centroids->size();
            }
            plan.queries = generate_workload(spec, centroids ? &*centroids : nullptr);
        }
        if (plan.queries.size() > 0 && plan.queries.dim() != dataset_->dim()) {
            throw UsageError("bench: workload dimension does not match dataset");
        }
        const std::size_t q_count = plan.queries.size();
        if (inputs_.query_filters != nullptr) {
            if (inputs_.query_filters->size() != q_count) {
                throw UsageError("bench: one filter label per query required");
            }
            plan.filters = *inputs_.query_filters;
        }
        plan.warmup_end = static_cast<std::size_t>(config_.warmup_fraction * static_cast<double>(q_count));

        if (config_.insert) {
            plan_inserts(plan, centroids ? &*centroids : nullptr);
        }

        // Recall sample over the measured part of the stream.
        std::vector<std::size_t> measured(q_count - plan.warmup_end);
        std::iota(measured.begin(), measured.end(), plan.warmup_end);
        if (measured.size() > config_.recall_sample) {
            std::mt19937_64 rng(seed ^ kSampleSalt);
            for (std::size_t i = 0; i < config_.recall_sample; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, measured.size() - 1);
                std::swap(measured[i], measured[pick(rng)]);
            }
            measured.resize(config_.recall_sample);
            std::sort(measured.begin(), measured.end());
        }
        plan.sample = std::move(measured);
        plan.sample_slot.assign(q_count, -1);
        for (std::size_t s = 0; s < plan.sample.size(); ++s) {
            plan.sample_slot[plan.sample[s]] = static_cast<std::int64_t>(s);
        }
        compute_truth(plan);

        if (std::find(config_.engines.begin(), config_.engines.end(), EngineKind::kCache) !=
            config_.engines.end()) {
            plan.cache_tau = config_.cache_tau ? *config_.cache_tau : default_tau(plan);
        }
        return plan;
    }

    void
    plan_inserts(SeedPlan& plan, const VectorDataset* centroids) const {
        const auto& schedule = *config_.insert;
        const std::size_t q_count = plan.queries.size();
        if (inputs_.insert_vectors != nullptr) {
            plan.inserts = *inputs_.insert_vectors;
        } else if (owned_inserts_) {
            plan.inserts = *owned_inserts_;
        } else {
            std::size_t total = schedule.total;
            if (total == 0) {
                total = q_count == 0 ? 0 : ((q_count - 1) / schedule.period) * schedule.batch_size;
            }
            WorkloadSpec spec;
            spec.dim = dataset_->dim();
            spec.query_count = std::max<std::size_t>(total, 1);
            spec.seed = plan.seed ^ kInsertSalt;
            if (centroids != nullptr && config_.workload) {
                spec.mode = WorkloadMode::kZipfClustered;
                spec.zipf_s = config_.workload->zipf_s;
                spec.cluster_count = centroids->size();
                spec.cluster_stddev = config_.workload->cluster_stddev;
            }
            plan.inserts = total == 0 ? VectorDataset(dataset_->dim())
                                      : generate_workload(spec, centroids);
        }
        if (plan.inserts.size() > 0 && plan.inserts.dim() != dataset_->dim()) {
            throw UsageError("bench: insert vectors do not match dataset dimension");
        }
        std::size_t available = plan.inserts.size();
        for (std::size_t p = schedule.period; p < q_count && available > 0; p += schedule.period) {
            plan.insert_points.push_back(p);
            available -= std::min(available, schedule.batch_size);
        }
    }

    // Number of dataset rows visible to query i.
    std::size_t
    visible_rows(const SeedPlan& plan, std::size_t query) const {
        const std::size_t batches = static_cast<std::size_t>(
            std::upper_bound(plan.insert_points.begin(), plan.insert_points.end(), query) -
            plan.insert_points.begin());
        const std::size_t batch = config_.insert ? config_.insert->batch_size : 0;
        return dataset_->size() + std::min(plan.inserts.size(), batches * batch);
    }

    std::size_t
    truth_depth() const {
        std::size_t depth = 0;
        for (const auto k : config_.ks) {
            depth = std::max(depth, config_.recall_at == 0 ? k : config_.recall_at);
        }
        return depth;
    }

    void
    compute_truth(SeedPlan& plan) const {
        const VectorDataset* corpus = dataset_;
        VectorDataset extended;
        if (plan.inserts.size() > 0 && !plan.insert_points.empty()) {
            extended = *dataset_;
            extended.reserve(dataset_->size() + plan.inserts.size());
            for (std::size_t i = 0; i < plan.inserts.size(); ++i) {
                extended.append(plan.inserts.row(i));
            }
            corpus = &extended;
        }
        const std::size_t depth = truth_depth();
        plan.truth.resize(plan.sample.size());
        for (std::size_t s = 0; s < plan.sample.size(); ++s) {
            const std::size_t qi = plan.sample[s];
            std::vector<LabelId> required;
            LabelFilter filter;
            if (const auto label = filter_label(plan, qi)) {
                required = {*label};
                filter = {labels_, required};
            }
            plan.truth[s] = ids_of(brute_force_knn(*corpus, plan.queries.row(qi), depth,
                                                   config_.build.metric,
                                                   required.empty() ? nullptr : &filter,
                                                   visible_rows(plan, qi)));
        }
    }

    float
    default_tau(const SeedPlan& plan) const {
        std::size_t rows = plan.warmup_end;
        if (rows < 2) {
            rows = std::min(plan.queries.size(), kCacheTauSample);
        }
        if (rows < 2) {
            return 0.0f;
        }
        return pairwise_distance_percentile(plan.queries.prefix(rows), kCacheTauSample,
                                            kCacheTauPercentile, config_.build.metric);
    }

    std::optional<LabelId>
    filter_label(const SeedPlan& plan, std::size_t query) const {
        if (!plan.filters.empty()) {
            return plan.filters[query];
        }
        return config_.filter;
    }

    // One (engine, k, threads) combination replaying one seed's stream. The
    // engine state lives here; the graph and vectors belong to the caller.
    struct Run {
        EngineKind engine;
        std::size_t k;
        std::size_t threads;
        std::unique_ptr<CatapultEngine> catapult;
        std::unique_ptr<StaticLshIndex> lsh_entry;
        std::unique_ptr<ApproxCache> cache;
        std::vector<QueryStats> stats;
        std::vector<std::vector<NodeId>> sampled;
        double measured_seconds = 0.0;
    };

    Run
    make_run(EngineKind engine,
             std::size_t k,
             std::size_t threads,
             const SeedPlan& plan,
             const ProximityGraph& graph,
             const VectorDataset& data) const {
        Run run{engine, k, threads, nullptr, nullptr, nullptr, {}, {}, 0.0};
        switch (engine) {
            case EngineKind::kCatapult:
                run.catapult = std::make_unique<CatapultEngine>(
                    graph, data,
                    CatapultParams{config_.lsh_bits, config_.bucket_capacity, plan.seed, true},
                    labels_);
                break;
            case EngineKind::kLshEntry:
                run.lsh_entry = std::make_unique<StaticLshIndex>(
                    graph, data, HyperplaneHasher(data.dim(), config_.lsh_bits, plan.seed),
                    config_.lsh_entry_per_bucket);
                break;
            case EngineKind::kCache:
                run.cache = std::make_unique<ApproxCache>(
                    config_.cache_capacity, plan.cache_tau,
                    HyperplaneHasher(data.dim(), config_.lsh_bits, plan.seed), config_.build.metric);
                break;
            case EngineKind::kVanilla:
                break;
        }
        run.stats.resize(plan.queries.size());
        run.sampled.resize(plan.sample.size());
        return run;
    }

    SearchOutcome
    lookup(Run& run,
           const SeedPlan& plan,
           const ProximityGraph& graph,
           const VectorDataset& data,
           std::size_t qi) const {
        const auto q = plan.queries.row(qi);
        const auto label = filter_label(plan, qi);
        switch (run.engine) {
            case EngineKind::kCatapult:
                return label ? run.catapult->filtered_lookup(q, run.k, FilterPredicate::single(*label))
                             : run.catapult->lookup(q, run.k);
            case EngineKind::kLshEntry:
                return run.lsh_entry->lookup(q, run.k);
            case EngineKind::kCache: {
                const ApproxCache::Underlying underlying = [&](std::span<const float> v, std::size_t kk) {
                    return vanilla_lookup(graph, data, v, kk);
                };
                auto out = run.cache->lookup(q, run.k, underlying);
                out.outcome.stats.cache_hit = out.hit;
                return std::move(out.outcome);
            }
            case EngineKind::kVanilla:
                break;
        }
        if (label) {
            const auto predicate = FilterPredicate::single(*label);
            const auto entries = label_entry_points(graph, predicate);
            return filtered_beam_search(graph, data, *labels_, q, run.k, predicate, entries);
        }
        return vanilla_lookup(graph, data, q, run.k);
    }

    // Executes queries [begin, end) on run.threads workers and returns the
    // wall time.
    double
    run_segment(Run& run,
                const SeedPlan& plan,
                const ProximityGraph& graph,
                const VectorDataset& data,
                std::size_t begin,
                std::size_t end) const {
        const auto execute = [&](std::size_t qi) {
            auto outcome = lookup(run, plan, graph, data, qi);
            run.stats[qi] = outcome.stats;
            if (const auto slot = plan.sample_slot[qi]; slot >= 0) {
                run.sampled[static_cast<std::size_t>(slot)] = std::move(outcome.result.ids);
            }
        };
        const auto start = std::chrono::steady_clock::now();
        if (run.threads == 1) {
            for (std::size_t qi = begin; qi < end; ++qi) {
                execute(qi);
            }
        } else {
            std::atomic<std::size_t> cursor{begin};
            std::vector<std::jthread> workers;
            workers.reserve(run.threads);
            for (std::size_t w = 0; w < run.threads; ++w) {
                workers.emplace_back([&] {
                    for (std::size_t qi = cursor.fetch_add(1, std::memory_order_relaxed); qi < end;
                         qi = cursor.fetch_add(1, std::memory_order_relaxed)) {
                        execute(qi);
                    }
                });
            }
        }
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        return took.count();
    }

    // Replays one seed for every combination. Queries never modify the graph,
    // so all combinations share one copy and walk the segments in lockstep:
    // each sees exactly the index states a private copy would go through, and
    // every insertion batch is applied once.
    void
    run_seed(const SeedPlan& plan, std::vector<EngineMetrics>& rows,
             std::vector<std::vector<QueryRecord>>& records) const {
        std::optional<ProximityGraph> graph_copy;
        std::optional<VectorDataset> data_copy;
        const bool inserting = !plan.insert_points.empty();
        if (inserting) {
            graph_copy = *graph_;
            data_copy = *dataset_;
            data_copy->reserve(dataset_->size() + plan.inserts.size());
        }
        ProximityGraph& graph = inserting ? *graph_copy : const_cast<ProximityGraph&>(*graph_);
        VectorDataset& data = inserting ? *data_copy : const_cast<VectorDataset&>(*dataset_);

        std::vector<Run> runs;
        runs.reserve(rows.size());
        for (const auto& row : rows) {
            runs.push_back(make_run(row.engine, row.k, row.threads, plan, graph, data));
        }

        // Segment boundaries: warmup end, every insertion point, and a fixed
        // chunk grid so that the timed windows of different runs interleave
        // and a transient slowdown of the host is shared between them.
        const std::size_t q_count = plan.queries.size();
        std::set<std::size_t> cuts{0, q_count};
        cuts.insert(std::min(plan.warmup_end, q_count));
        cuts.insert(plan.insert_points.begin(), plan.insert_points.end());
        for (std::size_t c = plan.warmup_end + kTimingChunk; c < q_count; c += kTimingChunk) {
            cuts.insert(c);
        }
        const std::vector<std::size_t> bounds(cuts.begin(), cuts.end());

        std::size_t inserted = 0;
        std::size_t next_batch = 0;
        const std::size_t batch = config_.insert ? config_.insert->batch_size : 0;
        for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
            const std::size_t begin = bounds[s];
            const std::size_t end = bounds[s + 1];
            while (next_batch < plan.insert_points.size() && plan.insert_points[next_batch] <= begin) {
                const std::size_t first = next_batch * batch;
                const std::size_t last = std::min(plan.inserts.size(), first + batch);
                for (std::size_t i = first; i < last; ++i) {
                    insert(graph, data, plan.inserts.row(i), config_.build);
                    ++inserted;
                }
                ++next_batch;
            }
            for (auto& run : runs) {
                const double took = run_segment(run, plan, graph, data, begin, end);
                if (begin >= plan.warmup_end) {
                    run.measured_seconds += took;
                }
            }
        }

        for (std::size_t r = 0; r < runs.size(); ++r) {
            rows[r].per_seed.push_back(finish(runs[r], plan, inserted, records[r]));
        }
    }

    RunMetrics
    finish(const Run& run, const SeedPlan& plan, std::size_t inserted,
           std::vector<QueryRecord>& records) const {
        const auto& stats = run.stats;
        const std::size_t q_count = plan.queries.size();
        RunMetrics m;
        m.seed = plan.seed;
        m.inserted = inserted;
        m.queries = q_count - std::min(plan.warmup_end, q_count);
        m.seconds = run.measured_seconds;
        m.qps = m.queries > 0 && m.seconds > 0.0 ? static_cast<double>(m.queries) / m.seconds : 0.0;
        double nodes = 0.0;
        double comps = 0.0;
        std::size_t used = 0;
        std::size_t hits = 0;
        for (std::size_t qi = plan.warmup_end; qi < q_count; ++qi) {
            nodes += static_cast<double>(stats[qi].nodes_visited);
            comps += static_cast<double>(stats[qi].distance_computations);
            used += stats[qi].catapult_used ? 1 : 0;
            hits += stats[qi].cache_hit ? 1 : 0;
            m.no_start_queries += stats[qi].no_start ? 1 : 0;
        }
        if (m.queries > 0) {
            const auto n = static_cast<double>(m.queries);
            m.mean_nodes_visited = nodes / n;
            m.mean_distance_computations = comps / n;
            m.catapult_usage = static_cast<double>(used) / n;
            m.cache_hit_rate = static_cast<double>(hits) / n;
        }

        const std::size_t at = config_.recall_at == 0 ? run.k : config_.recall_at;
        std::vector<double> recalls(plan.sample.size());
        std::vector<double> hit_recalls;
        for (std::size_t s = 0; s < plan.sample.size(); ++s) {
            recalls[s] = compute_recall(run.sampled[s], plan.truth[s], at);
            if (stats[plan.sample[s]].cache_hit) {
                hit_recalls.push_back(recalls[s]);
            }
        }
        m.recall_samples = recalls.size();
        m.mean_recall = mean_of(recalls);
        m.median_recall = median_of(recalls);
        m.cache_hit_samples = hit_recalls.size();
        m.cache_hit_median_recall = median_of(hit_recalls);

        if (config_.per_query) {
            for (std::size_t qi = 0; qi < q_count; ++qi) {
                QueryRecord r;
                r.engine = run.engine;
                r.k = run.k;
                r.threads = run.threads;
                r.seed = plan.seed;
                r.query = qi;
                r.nodes_visited = stats[qi].nodes_visited;
                r.distance_computations = stats[qi].distance_computations;
                r.catapult_used = stats[qi].catapult_used;
                r.cache_hit = stats[qi].cache_hit;
                r.elapsed_us = stats[qi].elapsed_us;
                if (const auto slot = plan.sample_slot[qi]; slot >= 0) {
                    r.recall = recalls[static_cast<std::size_t>(slot)];
                }
                records.push_back(r);
            }
        }
        return m;
    }

    static void
    aggregate(EngineMetrics& row) {
        std::vector<double> qps, mean_recall, median_recall, nodes, comps, usage, hit_rate, hit_median;
        for (const auto& run : row.per_seed) {
            row.queries += run.queries;
            qps.push_back(run.qps);
            mean_recall.push_back(run.mean_recall);
            median_recall.push_back(run.median_recall);
            nodes.push_back(run.mean_nodes_visited);
            comps.push_back(run.mean_distance_computations);
            usage.push_back(run.catapult_usage);
            hit_rate.push_back(run.cache_hit_rate);
            hit_median.push_back(run.cache_hit_median_recall);
        }
        row.qps = mean_of(qps);
        row.mean_recall = mean_of(mean_recall);
        row.median_recall = mean_of(median_recall);
        row.mean_nodes_visited = mean_of(nodes);
        row.mean_distance_computations = mean_of(comps);
        row.catapult_usage = mean_of(usage);
        row.cache_hit_rate = mean_of(hit_rate);
        row.cache_hit_median_recall = mean_of(hit_median);
    }

    BenchConfig config_;
    BenchInputs inputs_;
    const VectorDataset* dataset_ = nullptr;
    const ProximityGraph* graph_ = nullptr;
    const LabelTable* labels_ = nullptr;
    std::unique_ptr<VectorDataset> owned_dataset_;
    std::unique_ptr<ProximityGraph> owned_graph_;
    std::unique_ptr<LabelTable> owned_labels_;
    std::unique_ptr<VectorDataset> owned_queries_;
    std::unique_ptr<VectorDataset> owned_inserts_;
};

}  // namespace

void
BenchConfig::validate() const {
    if (engines.empty()) {
        throw UsageError("bench config: no engines");
    }
    if (ks.empty() || threads.empty()) {
        throw UsageError("bench config: at least one (k, threads) combination required");
    }
    if (std::any_of(ks.begin(), ks.end(), [](std::size_t k) { return k == 0; })) {
        throw UsageError("bench config: k must be positive");
    }
    if (std::any_of(threads.begin(), threads.end(), [](std::size_t t) { return t == 0; })) {
        throw UsageError("bench config: threads must be positive");
    }
    if (seeds.empty()) {
        throw UsageError("bench config: no seeds");
    }
    if (lsh_bits == 0 || lsh_bits > 24) {
        throw UsageError("bench config: lsh_bits must be in [1, 24]");
    }
    if (bucket_capacity == 0) {
        throw UsageError("bench config: bucket_capacity must be positive");
    }
    if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
        throw UsageError("bench config: warmup_fraction must be in [0, 1)");
    }
    if (cache_capacity == 0) {
        throw UsageError("bench config: cache_capacity must be positive");
    }
    if (cache_tau && !(*cache_tau >= 0.0f)) {
        throw UsageError("bench config: cache_tau must be >= 0");
    }
    if (insert && (insert->batch_size == 0 || insert->period == 0)) {
        throw UsageError("bench config: insert batch and period must be positive");
    }
    if (workload) {
        workload->validate();
    }
    build.validate();
}

const EngineMetrics*
MetricsReport::find(EngineKind engine, std::size_t k, std::size_t threads) const {
    for (const auto& row : rows) {
        if (row.engine == engine && row.k == k && row.threads == threads) {
            return &row;
        }
    }
    return nullptr;
}

double
compute_recall(std::span<const NodeId> result, std::span<const NodeId> truth, std::size_t k) {
    const auto t = truth.first(std::min(k, truth.size()));
    if (t.empty()) {
        return 1.0;
    }
    const auto r = result.first(std::min(k, result.size()));
    std::size_t found = 0;
    for (const auto id : t) {
        found += std::find(r.begin(), r.end(), id) != r.end() ? 1 : 0;
    }
    return static_cast<double>(found) / static_cast<double>(t.size());
}

MetricsReport
run_benchmark(const BenchConfig& config, const BenchInputs& inputs) {
    return Harness(config, inputs).run();
}

std::vector<std::vector<NodeId>>
compute_ground_truth(const VectorDataset& dataset,
                     const VectorDataset& queries,
                     std::size_t k,
                     Metric metric,
                     std::span<const std::size_t> prefix_sizes) {
    if (!prefix_sizes.empty() && prefix_sizes.size() != queries.size()) {
        throw UsageError("ground truth: one prefix size per query required");
    }
    if (queries.size() > 0 && queries.dim() != dataset.dim()) {
        throw UsageError("ground truth: dimension mismatch");
    }
    std::vector<std::vector<NodeId>> truth(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        std::optional<std::size_t> limit;
        if (!prefix_sizes.empty()) {
            limit = prefix_sizes[i];
        }
        truth[i] = ids_of(brute_force_knn(dataset, queries.row(i), k, metric, nullptr, limit));
    }
    return truth;
}

}  // namespace catapult
