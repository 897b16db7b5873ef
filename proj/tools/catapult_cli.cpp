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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catapult/bench.h"
#include "catapult/dataset.h"
#include "catapult/filter.h"
#include "catapult/graph.h"
#include "catapult/workload.h"

namespace {

using namespace catapult;

struct BuildArgs {
    std::string dataset;
    std::string labels;
    std::string output;
    BuildParams params;
    std::string metric = "l2sq";
};

struct DatasetArgs {
    std::size_t count = 100000;
    std::size_t dim = 64;
    std::size_t clusters = 64;
    double stddev = 0.3;
    std::uint64_t seed = 0;
    std::string output;
    std::size_t label_count = 0;
    std::string labels_output;
};

struct WorkloadArgs {
    WorkloadSpec spec;
    std::string mode = "uniform";
    std::string dataset;
    std::string output;
};

struct TruthArgs {
    std::string dataset;
    std::string queries;
    std::size_t k = 10;
    std::string metric = "l2sq";
    std::string output;
};

struct BenchArgs {
    std::string config;
    std::string dataset;
    std::string index;
    std::string workload_path;
    std::string labels;
    std::string mode;
    std::size_t query_count = 20000;
    std::size_t cluster_count = 1000;
    std::vector<std::string> engines;
    std::vector<std::size_t> ks;
    std::vector<std::size_t> threads;
    std::vector<std::uint64_t> seeds;
    unsigned lsh_bits = 8;
    std::size_t bucket_capacity = 40;
    std::size_t max_degree = 48;
    float alpha = 1.2f;
    std::size_t insert_batch = 0;
    std::size_t insert_period = 50;
    std::string insert_source;
    long long filter = -1;
    std::string output;
    std::string format;
    bool per_query = false;
};

int
run_build(const BuildArgs& args) {
    BuildParams params = args.params;
    params.metric = parse_metric(args.metric);
    const auto dataset = load_vectors(args.dataset);
    ProximityGraph graph;
    if (args.labels.empty()) {
        graph = build_vamana(dataset, params);
    } else {
        graph = build_filtered_index(dataset, load_labels(args.labels), params);
    }
    save_index(args.output, graph, dataset);
    std::cout << "built " << graph.size() << " nodes, max degree " << graph.max_out_degree()
              << ", medoid " << graph.medoid() << "\n";
    return 0;
}

int
run_gen_dataset(const DatasetArgs& args) {
    const auto data =
        generate_gaussian_mixture(args.count, args.dim, args.clusters, args.stddev, args.seed);
    save_vectors(args.output, data);
    if (args.label_count > 0) {
        if (args.labels_output.empty()) {
            throw UsageError("--labels-output is required with --label-count");
        }
        save_labels(args.labels_output, generate_random_labels(args.count, args.label_count, args.seed));
    }
    return 0;
}

int
run_gen_workload(WorkloadArgs args) {
    args.spec.mode = parse_workload_mode(args.mode);
    std::optional<VectorDataset> centroids;
    if (args.spec.mode != WorkloadMode::kUniform) {
        if (args.dataset.empty()) {
            throw UsageError("clustered workloads need --dataset for centroids");
        }
        const auto data = load_vectors(args.dataset);
        args.spec.dim = data.dim();
        centroids = sample_rows(data, std::min(args.spec.cluster_count, data.size()), args.spec.seed);
        args.spec.cluster_count = centroids->size();
    }
    const auto queries = generate_workload(args.spec, centroids ? &*centroids : nullptr);
    save_vectors(args.output, queries);
    return 0;
}

int
run_ground_truth(const TruthArgs& args) {
    const auto data = load_vectors(args.dataset);
    const auto queries = load_vectors(args.queries);
    const auto truth = compute_ground_truth(data, queries, args.k, parse_metric(args.metric));
    save_ground_truth(args.output, truth, args.k);
    return 0;
}

int
run_bench(const BenchArgs& args, const CLI::App& cmd) {
    BenchConfig config = args.config.empty() ? BenchConfig{} : load_config(args.config);
    const auto given = [&](const char* name) { return cmd.count(name) > 0; };
    if (given("--dataset")) {
        config.dataset_path = args.dataset;
    }
    if (given("--index")) {
        config.index_path = args.index;
    }
    if (given("--workload")) {
        config.workload_path = args.workload_path;
    }
    if (given("--labels")) {
        config.labels_path = args.labels;
    }
    if (given("--mode") || (!config.workload && config.workload_path.empty())) {
        WorkloadSpec spec = config.workload.value_or(WorkloadSpec{});
        spec.mode = parse_workload_mode(args.mode.empty() ? "uniform" : args.mode);
        spec.query_count = args.query_count;
        spec.cluster_count = args.cluster_count;
        config.workload = spec;
    }
    if (config.workload) {
        if (given("--queries")) {
            config.workload->query_count = args.query_count;
        }
        if (given("--clusters")) {
            config.workload->cluster_count = args.cluster_count;
        }
    }
    if (given("--engine")) {
        config.engines.clear();
        for (const auto& e : args.engines) {
            config.engines.push_back(parse_engine(e));
        }
    }
    if (given("--k")) {
        config.ks = args.ks;
    }
    if (given("--threads")) {
        config.threads = args.threads;
    }
    if (given("--seed")) {
        config.seeds = args.seeds;
    }
    if (given("--lsh-bits")) {
        config.lsh_bits = args.lsh_bits;
    }
    if (given("--bucket-capacity")) {
        config.bucket_capacity = args.bucket_capacity;
    }
    if (given("--max-degree")) {
        config.build.max_degree = args.max_degree;
    }
    if (given("--alpha")) {
        config.build.alpha = args.alpha;
    }
    if (given("--insert-batch") || given("--insert-period") || given("--insert-source")) {
        InsertSchedule schedule = config.insert.value_or(InsertSchedule{});
        if (given("--insert-batch")) {
            schedule.batch_size = args.insert_batch;
        }
        if (given("--insert-period")) {
            schedule.period = args.insert_period;
        }
        if (given("--insert-source")) {
            schedule.source_path = args.insert_source;
        }
        config.insert = schedule;
    }
    if (given("--filter")) {
        config.filter = static_cast<LabelId>(args.filter);
    }
    if (given("--output")) {
        config.output_path = args.output;
    }
    if (given("--format")) {
        config.format = parse_report_format(args.format);
    }
    if (given("--per-query")) {
        config.per_query = args.per_query;
    }
    const auto report = run_benchmark(config);
    if (config.output_path.empty()) {
        std::cout << (config.format == ReportFormat::kJson ? report_to_json(report)
                                                           : report_to_csv(report));
        std::cout << "\n";
    } else {
        emit_report(report, config.format, config.output_path);
    }
    return 0;
}

}  // namespace

int
main(int argc, char** argv) {
    CLI::App app{"catapult: graph vector search with learned entry points"};
    app.require_subcommand(1);

    BuildArgs build;
    auto* build_cmd = app.add_subcommand("build", "Build a Vamana index from a vector file");
    build_cmd->add_option("--dataset", build.dataset, "Input vectors")->required();
    build_cmd->add_option("--labels", build.labels, "Label file; builds a label-aware index");
    build_cmd->add_option("--output,-o", build.output, "Index file")->required();
    build_cmd->add_option("--max-degree", build.params.max_degree, "R");
    build_cmd->add_option("--alpha", build.params.alpha, "Pruning factor");
    build_cmd->add_option("--beam-width", build.params.build_beam_width, "Build beam width");
    build_cmd->add_option("--metric", build.metric, "l2sq, l2 or cosine");
    build_cmd->add_option("--seed", build.params.seed, "Build seed");

    DatasetArgs dataset;
    auto* dataset_cmd = app.add_subcommand("gen-dataset", "Generate a Gaussian mixture dataset");
    dataset_cmd->add_option("--count,-n", dataset.count, "Rows");
    dataset_cmd->add_option("--dim,-d", dataset.dim, "Dimensions");
    dataset_cmd->add_option("--clusters", dataset.clusters, "Mixture components");
    dataset_cmd->add_option("--stddev", dataset.stddev, "Per-component stddev");
    dataset_cmd->add_option("--seed", dataset.seed, "Seed");
    dataset_cmd->add_option("--output,-o", dataset.output, "Vector file")->required();
    dataset_cmd->add_option("--label-count", dataset.label_count, "Also draw one of N labels per row");
    dataset_cmd->add_option("--labels-output", dataset.labels_output, "Label file");

    WorkloadArgs workload;
    auto* workload_cmd = app.add_subcommand("gen-workload", "Generate a query stream");
    workload_cmd->add_option("--mode", workload.mode, "uniform, zipf-clustered or shifted");
    workload_cmd->add_option("--queries", workload.spec.query_count, "Query count");
    workload_cmd->add_option("--dim", workload.spec.dim, "Dimensions (uniform mode)");
    workload_cmd->add_option("--zipf-s", workload.spec.zipf_s, "Zipf exponent");
    workload_cmd->add_option("--clusters", workload.spec.cluster_count, "Query clusters");
    workload_cmd->add_option("--cluster-stddev", workload.spec.cluster_stddev, "Noise around centroids");
    workload_cmd->add_option("--shift-point", workload.spec.shift_point, "Reshuffle ranks at this query");
    workload_cmd->add_option("--dataset", workload.dataset, "Dataset to draw centroids from");
    workload_cmd->add_option("--seed", workload.spec.seed, "Seed");
    workload_cmd->add_option("--output,-o", workload.output, "Query file")->required();

    TruthArgs truth;
    auto* truth_cmd = app.add_subcommand("ground-truth", "Exact k-NN for a query file");
    truth_cmd->add_option("--dataset", truth.dataset, "Input vectors")->required();
    truth_cmd->add_option("--queries", truth.queries, "Query vectors")->required();
    truth_cmd->add_option("--k", truth.k, "Neighbors per query");
    truth_cmd->add_option("--metric", truth.metric, "l2sq, l2 or cosine");
    truth_cmd->add_option("--output,-o", truth.output, "Truth file")->required();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Replay a workload against one or more engines");
    bench_cmd->add_option("--config", bench.config, "JSON config; flags override it");
    bench_cmd->add_option("--dataset", bench.dataset, "Input vectors");
    bench_cmd->add_option("--index", bench.index, "Prebuilt index");
    bench_cmd->add_option("--workload", bench.workload_path, "Fixed query file");
    bench_cmd->add_option("--labels", bench.labels, "Label file");
    bench_cmd->add_option("--mode", bench.mode, "Generated workload mode");
    bench_cmd->add_option("--queries", bench.query_count, "Generated workload length");
    bench_cmd->add_option("--clusters", bench.cluster_count, "Generated workload clusters");
    bench_cmd->add_option("--engine", bench.engines, "vanilla, catapult, lsh-entry, cache")
        ->delimiter(',');
    bench_cmd->add_option("--k", bench.ks, "Beam widths")->delimiter(',');
    bench_cmd->add_option("--threads", bench.threads, "Thread counts")->delimiter(',');
    bench_cmd->add_option("--seed", bench.seeds, "Seeds")->delimiter(',');
    bench_cmd->add_option("--lsh-bits", bench.lsh_bits, "L");
    bench_cmd->add_option("--bucket-capacity", bench.bucket_capacity, "b");
    bench_cmd->add_option("--max-degree", bench.max_degree, "R, when building");
    bench_cmd->add_option("--alpha", bench.alpha, "Pruning factor, when building");
    bench_cmd->add_option("--insert-batch", bench.insert_batch, "Vectors per insertion batch");
    bench_cmd->add_option("--insert-period", bench.insert_period, "Queries between batches");
    bench_cmd->add_option("--insert-source", bench.insert_source, "Vectors to insert");
    bench_cmd->add_option("--filter", bench.filter, "Required label")->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--output,-o", bench.output, "Report path; stdout when omitted");
    bench_cmd->add_option("--format", bench.format, "json or csv");
    bench_cmd->add_flag("--per-query", bench.per_query, "Include per-query records");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build_cmd) {
            return run_build(build);
        }
        if (*dataset_cmd) {
            return run_gen_dataset(dataset);
        }
        if (*workload_cmd) {
            return run_gen_workload(workload);
        }
        if (*truth_cmd) {
            return run_ground_truth(truth);
        }
        return run_bench(bench, *bench_cmd);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
