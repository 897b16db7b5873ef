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

#include <catch_amalgamated.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "catapult/baselines.h"
#include "catapult/bench.h"
#include "catapult/brute_force.h"
#include "catapult/filter.h"
#include "catapult/workload.h"
#include "test_util.h"

using namespace catapult;

namespace {

struct Fixture {
    VectorDataset data;
    ProximityGraph graph;
};

const Fixture&
fixture() {
    static const Fixture f = [] {
        Fixture x;
        x.data = generate_gaussian_mixture(3000, 16, 8, 0.3, 60);
        BuildParams p;
        p.max_degree = 24;
        p.build_beam_width = 64;
        p.seed = 6;
        x.graph = build_vamana(x.data, p);
        return x;
    }();
    return f;
}

BenchConfig
base_config(WorkloadMode mode, std::size_t queries) {
    BenchConfig c;
    WorkloadSpec spec;
    spec.mode = mode;
    spec.query_count = queries;
    spec.dim = 16;
    spec.cluster_count = 100;
    c.workload = spec;
    c.build.max_degree = 24;
    c.build.build_beam_width = 64;
    c.build.seed = 6;
    c.recall_sample = 200;
    return c;
}

BenchInputs
inputs() {
    BenchInputs in;
    in.dataset = &fixture().data;
    in.graph = &fixture().graph;
    return in;
}

std::size_t
csv_columns(const std::string& line) {
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST_CASE("recall examples", "[bench]") {
    const std::vector<NodeId> a{1, 2, 3};
    const std::vector<NodeId> b{1, 2, 4};
    const std::vector<NodeId> c{7, 8, 9};
    CHECK(compute_recall(a, b, 3) == Catch::Approx(2.0 / 3.0));
    CHECK(compute_recall(a, a, 3) == 1.0);
    CHECK(compute_recall(a, c, 3) == 0.0);
    CHECK(compute_recall(a, b, 2) == 1.0);
    CHECK(compute_recall({}, b, 3) == 0.0);
    CHECK(compute_recall(a, {}, 3) == 1.0);
    // truth shorter than k: only what exists counts
    const std::vector<NodeId> short_truth{3};
    CHECK(compute_recall(a, short_truth, 10) == 1.0);
}

TEST_CASE("engine and format names", "[bench]") {
    for (const auto e : {EngineKind::kVanilla, EngineKind::kCatapult, EngineKind::kLshEntry, EngineKind::kCache}) {
        CHECK(parse_engine(engine_name(e)) == e);
    }
    CHECK_THROWS_AS(parse_engine("hnsw"), UsageError);
    CHECK(parse_report_format("csv") == ReportFormat::kCsv);
    CHECK_THROWS_AS(parse_report_format("xml"), UsageError);
}

TEST_CASE("zero-query workload", "[bench]") {
    auto c = base_config(WorkloadMode::kUniform, 0);
    c.engines = {EngineKind::kVanilla, EngineKind::kCatapult, EngineKind::kCache};
    const auto report = run_benchmark(c, inputs());
    REQUIRE(report.rows.size() == 3 * 3);
    for (const auto& row : report.rows) {
        CHECK(row.queries == 0);
        CHECK(row.qps == 0.0);
        CHECK(row.mean_recall == 0.0);
        CHECK(std::isfinite(row.mean_nodes_visited));
        CHECK(std::isfinite(row.catapult_usage));
    }
}

TEST_CASE("single-threaded runs are repeatable", "[bench]") {
    auto c = base_config(WorkloadMode::kZipfClustered, 1500);
    c.engines = {EngineKind::kVanilla, EngineKind::kCatapult, EngineKind::kLshEntry, EngineKind::kCache};
    c.ks = {1, 8};
    c.seeds = {0, 1};
    const auto a = run_benchmark(c, inputs());
    const auto b = run_benchmark(c, inputs());
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].mean_recall == b.rows[i].mean_recall);
        CHECK(a.rows[i].median_recall == b.rows[i].median_recall);
        CHECK(a.rows[i].mean_nodes_visited == b.rows[i].mean_nodes_visited);
        CHECK(a.rows[i].mean_distance_computations == b.rows[i].mean_distance_computations);
        CHECK(a.rows[i].catapult_usage == b.rows[i].catapult_usage);
        CHECK(a.rows[i].cache_hit_rate == b.rows[i].cache_hit_rate);
        CHECK(a.rows[i].per_seed.size() == 2);
        CHECK(a.rows[i].queries == 2 * 1350);
    }
}

TEST_CASE("report invariants", "[bench]") {
    auto c = base_config(WorkloadMode::kZipfClustered, 2000);
    c.engines = {EngineKind::kVanilla, EngineKind::kCatapult, EngineKind::kLshEntry, EngineKind::kCache};
    const auto report = run_benchmark(c, inputs());
    for (const auto& row : report.rows) {
        CHECK(row.mean_recall >= 0.0);
        CHECK(row.mean_recall <= 1.0);
        CHECK(row.catapult_usage >= 0.0);
        CHECK(row.catapult_usage <= 1.0);
        CHECK(row.per_seed[0].recall_samples == 200);
        if (row.engine == EngineKind::kCatapult) {
            CHECK(row.catapult_usage > 0.8);
        } else {
            CHECK(row.catapult_usage == 0.0);
        }
        if (row.engine != EngineKind::kCache) {
            CHECK(row.mean_distance_computations >= row.mean_nodes_visited);
        }
    }
    const auto* vanilla = report.find(EngineKind::kVanilla, 16, 1);
    const auto* catapult = report.find(EngineKind::kCatapult, 16, 1);
    REQUIRE(vanilla);
    REQUIRE(catapult);
    CHECK(catapult->mean_nodes_visited <= vanilla->mean_nodes_visited);
    CHECK(report.find(EngineKind::kVanilla, 16, 8) == nullptr);
}

TEST_CASE("recall matches an independent oracle", "[bench]") {
    const auto& f = fixture();
    auto queries = testing::uniform_dataset(300, 16, 61);
    auto c = base_config(WorkloadMode::kUniform, 0);
    c.workload.reset();
    c.engines = {EngineKind::kVanilla};
    c.ks = {8};
    c.warmup_fraction = 0.0;
    c.recall_sample = 1000;
    c.per_query = true;
    auto in = inputs();
    in.queries = &queries;
    const auto report = run_benchmark(c, in);
    REQUIRE(report.records.size() == 300);
    double total = 0.0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto got = vanilla_lookup(f.graph, f.data, queries.row(i), 8).result.ids;
        const auto truth = ids_of(brute_force_knn(f.data, queries.row(i), 8));
        std::size_t hit = 0;
        for (const auto id : got) {
            hit += std::find(truth.begin(), truth.end(), id) != truth.end() ? 1 : 0;
        }
        total += hit / 8.0;
        CHECK(report.records[i].recall == Catch::Approx(hit / 8.0));
    }
    CHECK(report.rows[0].mean_recall == Catch::Approx(total / 300.0));
}

TEST_CASE("deterministic engines do not depend on threads", "[bench][concurrency]") {
    auto c = base_config(WorkloadMode::kZipfClustered, 1200);
    c.engines = {EngineKind::kVanilla, EngineKind::kLshEntry};
    c.ks = {4};
    c.threads = {1, 4};
    c.per_query = true;
    const auto report = run_benchmark(c, inputs());
    for (const auto engine : c.engines) {
        const auto* one = report.find(engine, 4, 1);
        const auto* four = report.find(engine, 4, 4);
        REQUIRE(one);
        REQUIRE(four);
        CHECK(one->mean_recall == four->mean_recall);
        CHECK(one->mean_nodes_visited == four->mean_nodes_visited);
        std::vector<const QueryRecord*> a, b;
        for (const auto& r : report.records) {
            if (r.engine == engine) {
                (r.threads == 1 ? a : b).push_back(&r);
            }
        }
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i]->nodes_visited == b[i]->nodes_visited);
            CHECK(a[i]->recall == b[i]->recall);
        }
    }
}

TEST_CASE("insertion schedule", "[bench]") {
    auto c = base_config(WorkloadMode::kZipfClustered, 1000);
    c.engines = {EngineKind::kVanilla, EngineKind::kCatapult, EngineKind::kCache};
    c.ks = {10};
    c.insert = InsertSchedule{};
    c.insert->batch_size = 20;
    c.insert->period = 50;
    const auto report = run_benchmark(c, inputs());
    for (const auto& row : report.rows) {
        CHECK(row.per_seed[0].inserted == 19 * 20);
    }
    CHECK_FALSE(report.notes.empty());
    const auto* vanilla = report.find(EngineKind::kVanilla, 10, 1);
    CHECK(vanilla->mean_recall > 0.8);

    // an explicit source runs out after two batches
    VectorDataset extra = testing::uniform_dataset(30, 16, 62);
    auto in = inputs();
    in.insert_vectors = &extra;
    c.engines = {EngineKind::kVanilla};
    const auto limited = run_benchmark(c, in);
    CHECK(limited.rows[0].per_seed[0].inserted == 30);
    // the shared index is untouched
    CHECK(fixture().graph.size() == 3000);
}

TEST_CASE("combined insertion runs match separate runs", "[bench]") {
    auto c = base_config(WorkloadMode::kZipfClustered, 600);
    c.engines = {EngineKind::kVanilla, EngineKind::kCatapult, EngineKind::kCache};
    c.ks = {4, 10};
    c.insert = InsertSchedule{};
    c.insert->batch_size = 25;
    c.insert->period = 40;
    const auto combined = run_benchmark(c, inputs());
    for (const auto engine : c.engines) {
        for (const auto k : c.ks) {
            auto single = c;
            single.engines = {engine};
            single.ks = {k};
            const auto alone = run_benchmark(single, inputs());
            const auto& a = alone.rows[0].per_seed[0];
            const auto& b = combined.find(engine, k, 1)->per_seed[0];
            CHECK(a.inserted == b.inserted);
            CHECK(a.mean_recall == b.mean_recall);
            CHECK(a.mean_nodes_visited == b.mean_nodes_visited);
            CHECK(a.mean_distance_computations == b.mean_distance_computations);
            CHECK(a.catapult_usage == b.catapult_usage);
            CHECK(a.cache_hit_rate == b.cache_hit_rate);
        }
    }
}

TEST_CASE("configuration errors", "[bench]") {
    auto c = base_config(WorkloadMode::kUniform, 100);
    c.filter = 1;
    CHECK_THROWS_AS(run_benchmark(c, inputs()), UsageError);

    c = base_config(WorkloadMode::kZipfClustered, 100);
    CHECK_THROWS_AS(run_benchmark(c, {}), UsageError);

    c = base_config(WorkloadMode::kUniform, 100);
    c.engines = {EngineKind::kCache};
    c.threads = {1, 2};
    CHECK_THROWS_AS(run_benchmark(c, inputs()), UsageError);

    c = base_config(WorkloadMode::kUniform, 100);
    c.ks.clear();
    CHECK_THROWS_AS(run_benchmark(c, inputs()), UsageError);

    c = base_config(WorkloadMode::kUniform, 100);
    c.threads = {0};
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = base_config(WorkloadMode::kUniform, 100);
    c.warmup_fraction = 1.0;
    CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("filtered benchmark", "[bench]") {
    const auto& f = fixture();
    const auto labels = generate_random_labels(f.data.size(), 10, 63);
    const auto graph = build_filtered_index(f.data, labels, BuildParams{24, 1.2f, 64, 10000, Metric::kSquaredEuclidean, 6});
    auto c = base_config(WorkloadMode::kZipfClustered, 1000);
    c.ks = {1, 8};
    c.filter = 3;
    BenchInputs in;
    in.dataset = &f.data;
    in.graph = &graph;
    in.labels = &labels;
    const auto report = run_benchmark(c, in);
    for (const auto& row : report.rows) {
        CHECK(row.per_seed[0].no_start_queries == 0);
        CHECK(row.mean_recall > 0.5);
    }
    c.engines = {EngineKind::kLshEntry};
    CHECK_THROWS_AS(run_benchmark(c, in), UsageError);
}

TEST_CASE("json report round trip", "[bench][io]") {
    auto c = base_config(WorkloadMode::kShifted, 600);
    c.workload->shift_point = 300;
    c.engines = {EngineKind::kVanilla, EngineKind::kCatapult};
    c.ks = {2, 5};
    c.seeds = {4, 5};
    c.per_query = true;
    c.cache_tau = 0.25f;
    c.insert = InsertSchedule{10, 100, "", 0};
    c.filter.reset();
    auto report = run_benchmark(c, inputs());
    report.notes.push_back("note");
    const auto text = report_to_json(report);
    const auto back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
        CHECK(back.rows[i].qps == report.rows[i].qps);
        CHECK(back.rows[i].mean_recall == report.rows[i].mean_recall);
        CHECK(back.rows[i].mean_nodes_visited == report.rows[i].mean_nodes_visited);
        CHECK(back.rows[i].per_seed[1].seconds == report.rows[i].per_seed[1].seconds);
    }
    CHECK(back.records.size() == report.records.size());
    CHECK(back.seeds == std::vector<std::uint64_t>{4, 5});
    CHECK(back.config.workload->shift_point == 300u);
    CHECK(back.config.cache_tau == 0.25f);
    CHECK(back.config.insert->period == 100);
    CHECK_THROWS_AS(report_from_json("{"), FormatError);
}

TEST_CASE("config json round trip", "[bench][io]") {
    testing::TempDir dir;
    auto c = base_config(WorkloadMode::kZipfClustered, 77);
    c.engines = {EngineKind::kCache, EngineKind::kLshEntry};
    c.threads = {1};
    c.filter = 9;
    c.lsh_bits = 6;
    c.bucket_capacity = 12;
    c.build.alpha = 1.3f;
    c.format = ReportFormat::kCsv;
    const auto text = config_to_json(c);
    {
        std::ofstream out(dir.file("c.json"));
        out << text;
    }
    const auto back = load_config(dir.file("c.json"));
    CHECK(config_to_json(back) == text);
    CHECK(back.filter == 9u);
    CHECK(back.build.alpha == 1.3f);

    const auto partial = config_from_json(R"({"engines": ["catapult"], "k": [3]})");
    CHECK(partial.engines == std::vector<EngineKind>{EngineKind::kCatapult});
    CHECK(partial.ks == std::vector<std::size_t>{3});
    CHECK(partial.bucket_capacity == 40);
    CHECK_THROWS_AS(config_from_json(R"({"engines": ["nope"]})"), UsageError);
    CHECK_THROWS_AS(config_from_json(R"({"k": "x"})"), FormatError);
}

TEST_CASE("csv output", "[bench][io]") {
    testing::TempDir dir;
    MetricsReport empty;
    emit_report(empty, ReportFormat::kCsv, dir.file("e.csv"));
    std::ifstream in(dir.file("e.csv"));
    std::string header, extra;
    std::getline(in, header);
    CHECK(header.rfind("engine,k,threads", 0) == 0);
    CHECK_FALSE(std::getline(in, extra));

    auto c = base_config(WorkloadMode::kUniform, 300);
    c.engines = {EngineKind::kVanilla, EngineKind::kCatapult};
    const auto report = run_benchmark(c, inputs());
    std::istringstream lines(report_to_csv(report));
    std::string line;
    std::size_t rows = 0;
    const auto columns = csv_columns(header);
    while (std::getline(lines, line)) {
        CHECK(csv_columns(line) == columns);
        ++rows;
    }
    CHECK(rows == 1 + report.rows.size());
    CHECK_THROWS_AS(emit_report(report, ReportFormat::kJson, dir.file("missing/dir/r.json")), IoError);
}

TEST_CASE("ground truth files", "[bench][io]") {
    testing::TempDir dir;
    const VectorDataset d(1, {0, 1, 2, 3, 4});
    const VectorDataset q(1, {3.9f, 0.1f});
    const auto full = compute_ground_truth(d, q, 2);
    CHECK(full[0] == std::vector<NodeId>{4, 3});
    CHECK(full[1] == std::vector<NodeId>{0, 1});
    const std::vector<std::size_t> prefix{2, 1};
    const auto limited = compute_ground_truth(d, q, 2, Metric::kSquaredEuclidean, prefix);
    CHECK(limited[0] == std::vector<NodeId>{1, 0});
    CHECK(limited[1] == std::vector<NodeId>{0});
    save_ground_truth(dir.file("t.bin"), limited, 2);
    CHECK(load_ground_truth(dir.file("t.bin")) == limited);
    std::filesystem::resize_file(dir.file("t.bin"), 12);
    CHECK_THROWS_AS(load_ground_truth(dir.file("t.bin")), FormatError);
}
