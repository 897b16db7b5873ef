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

// Config and report serialization, ground-truth files.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "catapult/bench.h"

namespace catapult {

using Json = nlohmann::ordered_json;

namespace {

Json
workload_to_json(const WorkloadSpec& spec) {
    Json j;
    j["mode"] = workload_mode_name(spec.mode);
    j["query_count"] = spec.query_count;
    j["dim"] = spec.dim;
    j["zipf_s"] = spec.zipf_s;
    j["cluster_count"] = spec.cluster_count;
    j["cluster_stddev"] = spec.cluster_stddev;
    j["shift_point"] = spec.shift_point ? Json(*spec.shift_point) : Json(nullptr);
    j["seed"] = spec.seed;
    return j;
}

WorkloadSpec
workload_from_json(const Json& j) {
    WorkloadSpec spec;
    spec.mode = parse_workload_mode(j.value("mode", std::string("uniform")));
    spec.query_count = j.value("query_count", spec.query_count);
    spec.dim = j.value("dim", spec.dim);
    spec.zipf_s = j.value("zipf_s", spec.zipf_s);
    spec.cluster_count = j.value("cluster_count", spec.cluster_count);
    spec.cluster_stddev = j.value("cluster_stddev", spec.cluster_stddev);
    if (j.contains("shift_point") && !j["shift_point"].is_null()) {
        spec.shift_point = j["shift_point"].get<std::size_t>();
    }
    spec.seed = j.value("seed", spec.seed);
    return spec;
}

Json
config_json(const BenchConfig& c) {
    Json j;
    j["dataset"] = c.dataset_path;
    j["index"] = c.index_path;
    j["workload_path"] = c.workload_path;
    j["workload"] = c.workload ? workload_to_json(*c.workload) : Json(nullptr);
    j["labels"] = c.labels_path;
    Json engines = Json::array();
    for (const auto e : c.engines) {
        engines.push_back(engine_name(e));
    }
    j["engines"] = engines;
    j["k"] = c.ks;
    j["threads"] = c.threads;
    j["lsh_bits"] = c.lsh_bits;
    j["bucket_capacity"] = c.bucket_capacity;
    j["max_degree"] = c.build.max_degree;
    j["alpha"] = c.build.alpha;
    j["build_beam_width"] = c.build.build_beam_width;
    j["medoid_sample_limit"] = c.build.medoid_sample_limit;
    j["metric"] = metric_name(c.build.metric);
    j["build_seed"] = c.build.seed;
    j["lsh_entry_per_bucket"] = c.lsh_entry_per_bucket;
    j["cache_capacity"] = c.cache_capacity;
    j["cache_tau"] = c.cache_tau ? Json(*c.cache_tau) : Json(nullptr);
    if (c.insert) {
        j["insert"] = {{"batch_size", c.insert->batch_size},
                       {"period", c.insert->period},
                       {"source", c.insert->source_path},
                       {"total", c.insert->total}};
    } else {
        j["insert"] = nullptr;
    }
    j["filter"] = c.filter ? Json(*c.filter) : Json(nullptr);
    j["seeds"] = c.seeds;
    j["warmup_fraction"] = c.warmup_fraction;
    j["recall_sample"] = c.recall_sample;
    j["recall_at"] = c.recall_at;
    j["per_query"] = c.per_query;
    j["output"] = c.output_path;
    j["format"] = c.format == ReportFormat::kJson ? "json" : "csv";
    return j;
}

BenchConfig
config_from(const Json& j) {
    BenchConfig c;
    c.dataset_path = j.value("dataset", std::string());
    c.index_path = j.value("index", std::string());
    c.workload_path = j.value("workload_path", std::string());
    if (j.contains("workload") && !j["workload"].is_null()) {
        c.workload = workload_from_json(j["workload"]);
    }
    c.labels_path = j.value("labels", std::string());
    if (j.contains("engines")) {
        c.engines.clear();
        for (const auto& e : j["engines"]) {
            c.engines.push_back(parse_engine(e.get<std::string>()));
        }
    }
    if (j.contains("k")) {
        c.ks = j["k"].get<std::vector<std::size_t>>();
    }
    if (j.contains("threads")) {
        c.threads = j["threads"].get<std::vector<std::size_t>>();
    }
    c.lsh_bits = j.value("lsh_bits", c.lsh_bits);
    c.bucket_capacity = j.value("bucket_capacity", c.bucket_capacity);
    c.build.max_degree = j.value("max_degree", c.build.max_degree);
    c.build.alpha = j.value("alpha", c.build.alpha);
    c.build.build_beam_width = j.value("build_beam_width", c.build.build_beam_width);
    c.build.medoid_sample_limit = j.value("medoid_sample_limit", c.build.medoid_sample_limit);
    if (j.contains("metric")) {
        c.build.metric = parse_metric(j["metric"].get<std::string>());
    }
    c.build.seed = j.value("build_seed", c.build.seed);
    c.lsh_entry_per_bucket = j.value("lsh_entry_per_bucket", c.lsh_entry_per_bucket);
    c.cache_capacity = j.value("cache_capacity", c.cache_capacity);
    if (j.contains("cache_tau") && !j["cache_tau"].is_null()) {
        c.cache_tau = j["cache_tau"].get<float>();
    }
    if (j.contains("insert") && !j["insert"].is_null()) {
        const auto& ins = j["insert"];
        InsertSchedule s;
        s.batch_size = ins.value("batch_size", s.batch_size);
        s.period = ins.value("period", s.period);
        s.source_path = ins.value("source", std::string());
        s.total = ins.value("total", s.total);
        c.insert = s;
    }
    if (j.contains("filter") && !j["filter"].is_null()) {
        c.filter = j["filter"].get<LabelId>();
    }
    if (j.contains("seeds")) {
        c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    }
    c.warmup_fraction = j.value("warmup_fraction", c.warmup_fraction);
    c.recall_sample = j.value("recall_sample", c.recall_sample);
    c.recall_at = j.value("recall_at", c.recall_at);
    c.per_query = j.value("per_query", c.per_query);
    c.output_path = j.value("output", std::string());
    c.format = parse_report_format(j.value("format", std::string("json")));
    return c;
}

Json
run_json(const RunMetrics& r) {
    return Json{{"seed", r.seed},
                {"queries", r.queries},
                {"seconds", r.seconds},
                {"qps", r.qps},
                {"recall_samples", r.recall_samples},
                {"mean_recall", r.mean_recall},
                {"median_recall", r.median_recall},
                {"mean_nodes_visited", r.mean_nodes_visited},
                {"mean_distance_computations", r.mean_distance_computations},
                {"catapult_usage", r.catapult_usage},
                {"cache_hit_rate", r.cache_hit_rate},
                {"cache_hit_samples", r.cache_hit_samples},
                {"cache_hit_median_recall", r.cache_hit_median_recall},
                {"no_start_queries", r.no_start_queries},
                {"inserted", r.inserted}};
}

RunMetrics
run_from(const Json& j) {
    RunMetrics r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.queries = j.at("queries").get<std::size_t>();
    r.seconds = j.at("seconds").get<double>();
    r.qps = j.at("qps").get<double>();
    r.recall_samples = j.at("recall_samples").get<std::size_t>();
    r.mean_recall = j.at("mean_recall").get<double>();
    r.median_recall = j.at("median_recall").get<double>();
    r.mean_nodes_visited = j.at("mean_nodes_visited").get<double>();
    r.mean_distance_computations = j.at("mean_distance_computations").get<double>();
    r.catapult_usage = j.at("catapult_usage").get<double>();
    r.cache_hit_rate = j.at("cache_hit_rate").get<double>();
    r.cache_hit_samples = j.at("cache_hit_samples").get<std::size_t>();
    r.cache_hit_median_recall = j.at("cache_hit_median_recall").get<double>();
    r.no_start_queries = j.at("no_start_queries").get<std::size_t>();
    r.inserted = j.at("inserted").get<std::size_t>();
    return r;
}

constexpr const char* kCsvHeader =
    "engine,k,threads,queries,qps,mean_recall,median_recall,mean_nodes_visited,"
    "mean_distance_computations,catapult_usage,cache_hit_rate,cache_hit_median_recall";

}  // namespace

EngineKind
parse_engine(std::string_view name) {
    if (name == "vanilla") {
        return EngineKind::kVanilla;
    }
    if (name == "catapult") {
        return EngineKind::kCatapult;
    }
    if (name == "lsh-entry") {
        return EngineKind::kLshEntry;
    }
    if (name == "cache") {
        return EngineKind::kCache;
    }
    throw UsageError("unknown engine: " + std::string(name));
}

std::string_view
engine_name(EngineKind engine) {
    switch (engine) {
        case EngineKind::kVanilla:
            return "vanilla";
        case EngineKind::kCatapult:
            return "catapult";
        case EngineKind::kLshEntry:
            return "lsh-entry";
        case EngineKind::kCache:
            return "cache";
    }
    return "unknown";
}

ReportFormat
parse_report_format(std::string_view name) {
    if (name == "json") {
        return ReportFormat::kJson;
    }
    if (name == "csv") {
        return ReportFormat::kCsv;
    }
    throw UsageError("unknown report format: " + std::string(name));
}

std::string
config_to_json(const BenchConfig& config) {
    return config_json(config).dump(2);
}

BenchConfig
config_from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw FormatError(std::string("bench config: ") + e.what());
    }
    try {
        return config_from(j);
    } catch (const Json::exception& e) {
        throw FormatError(std::string("bench config: ") + e.what());
    }
}

BenchConfig
load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string
report_to_json(const MetricsReport& report) {
    Json j;
    j["config"] = config_json(report.config);
    j["seeds"] = report.seeds;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r{{"engine", engine_name(row.engine)},
               {"k", row.k},
               {"threads", row.threads},
               {"queries", row.queries},
               {"qps", row.qps},
               {"mean_recall", row.mean_recall},
               {"median_recall", row.median_recall},
               {"mean_nodes_visited", row.mean_nodes_visited},
               {"mean_distance_computations", row.mean_distance_computations},
               {"catapult_usage", row.catapult_usage},
               {"cache_hit_rate", row.cache_hit_rate},
               {"cache_hit_median_recall", row.cache_hit_median_recall}};
        Json seeds = Json::array();
        for (const auto& run : row.per_seed) {
            seeds.push_back(run_json(run));
        }
        r["per_seed"] = seeds;
        rows.push_back(r);
    }
    j["results"] = rows;
    Json records = Json::array();
    for (const auto& q : report.records) {
        records.push_back({{"engine", engine_name(q.engine)},
                           {"k", q.k},
                           {"threads", q.threads},
                           {"seed", q.seed},
                           {"query", q.query},
                           {"nodes_visited", q.nodes_visited},
                           {"distance_computations", q.distance_computations},
                           {"catapult_used", q.catapult_used},
                           {"cache_hit", q.cache_hit},
                           {"recall", q.recall},
                           {"elapsed_us", q.elapsed_us}});
    }
    j["records"] = records;
    j["notes"] = report.notes;
    return j.dump(2);
}

MetricsReport
report_from_json(std::string_view text) {
    MetricsReport report;
    try {
        const auto j = Json::parse(text);
        report.config = config_from(j.at("config"));
        report.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        for (const auto& r : j.at("results")) {
            EngineMetrics row;
            row.engine = parse_engine(r.at("engine").get<std::string>());
            row.k = r.at("k").get<std::size_t>();
            row.threads = r.at("threads").get<std::size_t>();
            row.queries = r.at("queries").get<std::size_t>();
            row.qps = r.at("qps").get<double>();
            row.mean_recall = r.at("mean_recall").get<double>();
            row.median_recall = r.at("median_recall").get<double>();
            row.mean_nodes_visited = r.at("mean_nodes_visited").get<double>();
            row.mean_distance_computations = r.at("mean_distance_computations").get<double>();
            row.catapult_usage = r.at("catapult_usage").get<double>();
            row.cache_hit_rate = r.at("cache_hit_rate").get<double>();
            row.cache_hit_median_recall = r.at("cache_hit_median_recall").get<double>();
            for (const auto& s : r.at("per_seed")) {
                row.per_seed.push_back(run_from(s));
            }
            report.rows.push_back(std::move(row));
        }
        for (const auto& q : j.at("records")) {
            QueryRecord rec;
            rec.engine = parse_engine(q.at("engine").get<std::string>());
            rec.k = q.at("k").get<std::size_t>();
            rec.threads = q.at("threads").get<std::size_t>();
            rec.seed = q.at("seed").get<std::uint64_t>();
            rec.query = q.at("query").get<std::size_t>();
            rec.nodes_visited = q.at("nodes_visited").get<std::uint64_t>();
            rec.distance_computations = q.at("distance_computations").get<std::uint64_t>();
            rec.catapult_used = q.at("catapult_used").get<bool>();
            rec.cache_hit = q.at("cache_hit").get<bool>();
            rec.recall = q.at("recall").get<double>();
            rec.elapsed_us = q.at("elapsed_us").get<double>();
            report.records.push_back(rec);
        }
        report.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const Json::exception& e) {
        throw FormatError(std::string("report: ") + e.what());
    }
    return report;
}

std::string
report_to_csv(const MetricsReport& report) {
    std::ostringstream out;
    out << std::setprecision(12);
    out << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
        out << engine_name(r.engine) << ',' << r.k << ',' << r.threads << ',' << r.queries << ','
            << r.qps << ',' << r.mean_recall << ',' << r.median_recall << ','
            << r.mean_nodes_visited << ',' << r.mean_distance_computations << ','
            << r.catapult_usage << ',' << r.cache_hit_rate << ',' << r.cache_hit_median_recall
            << '\n';
    }
    return out.str();
}

void
emit_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << (format == ReportFormat::kJson ? report_to_json(report) : report_to_csv(report));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

void
save_ground_truth(const std::filesystem::path& path,
                  const std::vector<std::vector<NodeId>>& truth,
                  std::size_t k) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    const std::int32_t header[2] = {static_cast<std::int32_t>(truth.size()),
                                    static_cast<std::int32_t>(k)};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    for (const auto& row : truth) {
        for (std::size_t i = 0; i < k; ++i) {
            const std::int32_t id = i < row.size() ? static_cast<std::int32_t>(row[i]) : -1;
            out.write(reinterpret_cast<const char*>(&id), sizeof(id));
        }
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::vector<std::vector<NodeId>>
load_ground_truth(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::int32_t header[2];
    if (!in.read(reinterpret_cast<char*>(header), sizeof(header)) || header[0] < 0 ||
        header[1] <= 0) {
        throw FormatError(path.string() + ": bad truth header");
    }
    std::vector<std::vector<NodeId>> truth(static_cast<std::size_t>(header[0]));
    for (auto& row : truth) {
        for (std::int32_t i = 0; i < header[1]; ++i) {
            std::int32_t id = 0;
            if (!in.read(reinterpret_cast<char*>(&id), sizeof(id))) {
                throw FormatError(path.string() + ": truncated truth file");
            }
            if (id >= 0) {
                row.push_back(static_cast<NodeId>(id));
            }
        }
    }
    return truth;
}

}  // namespace catapult
