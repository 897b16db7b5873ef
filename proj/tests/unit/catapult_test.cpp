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
#include <numbers>
#include <sstream>
#include <thread>

#include "catapult/baselines.h"
#include "catapult/catapult_table.h"
#include "catapult/engine.h"
#include "catapult/lsh.h"
#include "catapult/search.h"
#include "catapult/workload.h"
#include "test_util.h"

using namespace catapult;
using Catch::Approx;

namespace {

struct Fixture {
    VectorDataset data;
    ProximityGraph graph;
};

const Fixture&
fixture() {
    static const Fixture f = [] {
        Fixture x;
        x.data = generate_gaussian_mixture(3000, 16, 8, 0.3, 30);
        BuildParams p;
        p.max_degree = 24;
        p.build_beam_width = 64;
        p.seed = 4;
        x.graph = build_vamana(x.data, p);
        return x;
    }();
    return f;
}

// Unit vector pair at the given angle in a random plane.
std::pair<std::vector<float>, std::vector<float>>
pair_at_angle(std::size_t dim, double angle, std::mt19937_64& rng) {
    auto u = testing::random_vector(dim, rng);
    auto w = testing::random_vector(dim, rng);
    const auto norm = [](std::vector<float>& v) {
        double s = 0.0;
        for (const float x : v) {
            s += double(x) * x;
        }
        for (auto& x : v) {
            x = static_cast<float>(x / std::sqrt(s));
        }
    };
    norm(u);
    double dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        dot += double(u[i]) * w[i];
    }
    for (std::size_t i = 0; i < dim; ++i) {
        w[i] = static_cast<float>(w[i] - dot * u[i]);
    }
    norm(w);
    std::vector<float> v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = static_cast<float>(std::cos(angle) * u[i] + std::sin(angle) * w[i]);
    }
    return {u, v};
}

}  // namespace

TEST_CASE("hash examples", "[lsh]") {
    const HyperplaneHasher h(VectorDataset(2, {1, 0, 0, 1}));
    CHECK(h.bits() == 2);
    CHECK(h.bucket_count() == 4);
    CHECK(h.hash(std::vector<float>{0.5f, -0.3f}) == 2);
    CHECK(h.hash(std::vector<float>{-0.5f, 0.3f}) == 1);
    CHECK(h.hash(std::vector<float>{0, 0}) == 3);
    CHECK_THROWS_AS(h.hash(std::vector<float>{1, 2, 3}), UsageError);

    const HyperplaneHasher big(64, 8, 1);
    CHECK(big.hash(std::vector<float>(64, 0.0f)) == 255);
    CHECK_THROWS_AS(HyperplaneHasher(4, 0, 1), UsageError);
    CHECK_THROWS_AS(HyperplaneHasher(4, 25, 1), UsageError);
}

TEST_CASE("hash is scale invariant", "[lsh]") {
    const HyperplaneHasher h(32, 8, 7);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        auto q = testing::random_vector(32, rng);
        const auto idx = h.hash(q);
        CHECK(idx < 256);
        for (auto& x : q) {
            x *= 3.0f;
        }
        CHECK(h.hash(q) == idx);
    }
}

TEST_CASE("hashers are seeded", "[lsh]") {
    CHECK(HyperplaneHasher(16, 8, 3).normals() == HyperplaneHasher(16, 8, 3).normals());
    CHECK_FALSE(HyperplaneHasher(16, 8, 3).normals() == HyperplaneHasher(16, 8, 4).normals());
}

TEST_CASE("collision rate follows the angle", "[lsh]") {
    // For one random hyperplane P[same sign] = 1 - angle/pi, so with L
    // independent planes P[same bucket] = (1 - angle/pi)^L.
    std::mt19937_64 rng(9);
    const unsigned bits = 4;
    double previous = 1.0;
    for (const double degrees : {5.0, 30.0, 60.0, 90.0, 135.0}) {
        const double angle = degrees * std::numbers::pi / 180.0;
        std::size_t same = 0;
        const std::size_t trials = 4000;
        for (std::size_t t = 0; t < trials; ++t) {
            const HyperplaneHasher h(24, bits, t);
            const auto [u, v] = pair_at_angle(24, angle, rng);
            same += h.hash(u) == h.hash(v) ? 1 : 0;
        }
        const double rate = double(same) / trials;
        const double expect = std::pow(1.0 - angle / std::numbers::pi, bits);
        INFO("angle " << degrees << " rate " << rate << " expected " << expect);
        CHECK(rate == Approx(expect).margin(0.03));
        CHECK(rate <= previous);
        previous = rate;
    }
}

TEST_CASE("table examples", "[table]") {
    CatapultTable t(4, 2);
    CHECK(t.snapshot(0).empty());
    t.publish(1, 7);
    CHECK(t.snapshot(1) == std::vector<NodeId>{7});
    t.publish(0, 1);
    t.publish(0, 2);
    t.publish(0, 3);
    CHECK(t.snapshot(0) == std::vector<NodeId>{2, 3});

    CatapultTable r(1, 2);
    r.publish(0, 1);
    r.publish(0, 2);
    r.publish(0, 1);
    CHECK(r.snapshot(0) == std::vector<NodeId>{2, 1});

    CatapultTable big(1, 40);
    for (NodeId i = 0; i < 1000; ++i) {
        big.publish(0, i);
        CHECK(big.snapshot(0).size() <= 40);
    }
    std::vector<NodeId> expect(40);
    std::iota(expect.begin(), expect.end(), NodeId{960});
    CHECK(big.snapshot(0) == expect);
    CHECK(big.total_size() == 40);
    big.clear();
    CHECK(big.total_size() == 0);
    CHECK(big.capacity_violations() == 0);
}

TEST_CASE("table dump lists non-empty buckets", "[table]") {
    testing::TempDir dir;
    CatapultTable t(8, 3);
    t.publish(5, 4);
    t.publish(5, 9);
    t.publish(2, 1);
    t.dump(dir.file("t.txt"));
    std::ifstream in(dir.file("t.txt"));
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "2: 1\n5: 4 9\n");
}

TEST_CASE("snapshots never observe a torn bucket", "[table][concurrency]") {
    // Each writer publishes an increasing sequence into its own bucket, so
    // every consistent state is a run of consecutive ids.
    const std::size_t cap = 5;
    CatapultTable t(4, cap);
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> bad{0};
    std::atomic<std::size_t> reads{0};
    {
        std::vector<std::jthread> threads;
        for (BucketIndex b = 0; b < 2; ++b) {
            threads.emplace_back([&, b] {
                for (NodeId i = 0; i < 200000; ++i) {
                    t.publish(b, i);
                }
                stop = true;
            });
        }
        for (int r = 0; r < 4; ++r) {
            threads.emplace_back([&, r] {
                while (!stop) {
                    const auto s = t.snapshot(static_cast<BucketIndex>(r % 2));
                    reads.fetch_add(1);
                    if (s.size() > cap) {
                        bad.fetch_add(1);
                    }
                    for (std::size_t i = 1; i < s.size(); ++i) {
                        if (s[i] != s[i - 1] + 1) {
                            bad.fetch_add(1);
                        }
                    }
                    if (!s.empty() && s.front() + 4 < s.back()) {
                        bad.fetch_add(1);
                    }
                }
            });
        }
    }
    CHECK(bad == 0);
    CHECK(reads > 0);
    CHECK(t.capacity_violations() == 0);
    CHECK(t.snapshot(0).back() == 199999);
}

TEST_CASE("empty table lookup equals medoid search", "[engine]") {
    const auto& f = fixture();
    CatapultEngine engine(f.graph, f.data, {8, 40, 1, false});
    const auto queries = testing::uniform_dataset(300, 16, 31);
    const std::vector<NodeId> sp{f.graph.medoid()};
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const std::size_t k = 1 + i % 16;
        const auto got = engine.lookup(queries.row(i), k);
        const auto want = beam_search(f.graph, f.data, queries.row(i), k, sp);
        CHECK(got.result == want.result);
        CHECK(got.stats.nodes_visited == want.stats.nodes_visited);
        CHECK_FALSE(got.stats.catapult_used);
    }
    CHECK(engine.table().total_size() == 0);
}

TEST_CASE("lookup publishes its top result", "[engine]") {
    const auto& f = fixture();
    CatapultEngine engine(f.graph, f.data, {8, 40, 2, true});
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<std::size_t> pick(0, f.data.size() - 1);
    std::size_t no_worse = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        engine.table().clear();
        auto q = testing::random_vector(16, rng);
        const auto base = f.data.row(pick(rng));
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = base[i] + 0.05f * q[i];
        }
        const auto first = engine.lookup(q, 4);
        CHECK_FALSE(first.stats.catapult_used);
        const auto bucket = engine.table().snapshot(engine.hasher().hash(q));
        REQUIRE_FALSE(bucket.empty());
        CHECK(bucket.back() == first.result.ids[0]);

        const auto second = engine.lookup(q, 4);
        CHECK(second.stats.catapult_used);
        CHECK(second.stats.nodes_visited <= first.stats.nodes_visited);
        no_worse += second.result.distances[0] <= first.result.distances[0] ? 1 : 0;

        const float to_medoid = distance(q, f.data.row(f.graph.medoid()), Metric::kSquaredEuclidean);
        CHECK(second.result.distances[0] <= to_medoid);
    }
    CHECK(no_worse == trials);
}

TEST_CASE("table memory bound", "[engine]") {
    const auto& f = fixture();
    CatapultEngine engine(f.graph, f.data, {8, 40, 3, true});
    CHECK(engine.table().max_entries() * sizeof(NodeId) == 40 * 1024);
    const auto queries = testing::uniform_dataset(5000, 16, 33);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        engine.lookup(queries.row(i), 1);
    }
    CHECK(engine.table().total_size() <= 40 * 256);
    CHECK(engine.table().capacity_violations() == 0);
}

TEST_CASE("repeated workload raises usage and cuts visits", "[engine]") {
    const auto& f = fixture();
    WorkloadSpec spec;
    spec.mode = WorkloadMode::kZipfClustered;
    spec.dim = 16;
    spec.query_count = 4000;
    spec.cluster_count = 100;
    spec.seed = 5;
    const auto centroids = sample_rows(f.data, 100, 6);
    const auto queries = generate_workload(spec, &centroids);
    CatapultEngine engine(f.graph, f.data, {8, 40, 4, true});
    double catapult_nodes = 0.0;
    double vanilla_nodes = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto a = engine.lookup(queries.row(i), 1);
        const auto b = vanilla_lookup(f.graph, f.data, queries.row(i), 1);
        if (i >= 1000) {
            catapult_nodes += a.stats.nodes_visited;
            vanilla_nodes += b.stats.nodes_visited;
            used += a.stats.catapult_used ? 1 : 0;
        }
    }
    CHECK(double(used) / 3000.0 >= 0.85);
    CHECK(catapult_nodes < 0.7 * vanilla_nodes);
}

TEST_CASE("concurrent lookups keep buckets bounded", "[engine][concurrency]") {
    const auto& f = fixture();
    CatapultEngine engine(f.graph, f.data, {2, 3, 5, true});
    const auto queries = testing::uniform_dataset(2000, 16, 34);
    std::atomic<std::size_t> empty_results{0};
    {
        std::vector<std::jthread> workers;
        for (int w = 0; w < 8; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < queries.size(); i += 8) {
                    const auto out = engine.lookup(queries.row(i), 1 + i % 4);
                    if (out.result.empty()) {
                        empty_results.fetch_add(1);
                    }
                }
            });
        }
    }
    CHECK(empty_results == 0);
    CHECK(engine.table().capacity_violations() == 0);
    for (BucketIndex b = 0; b < 4; ++b) {
        CHECK(engine.table().snapshot(b).size() <= 3);
    }
}
