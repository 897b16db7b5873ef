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
#include <map>
#include <set>

#include "catapult/baselines.h"
#include "catapult/brute_force.h"
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
        x.data = generate_gaussian_mixture(3000, 16, 8, 0.3, 50);
        BuildParams p;
        p.max_degree = 24;
        p.build_beam_width = 64;
        p.seed = 5;
        x.graph = build_vamana(x.data, p);
        return x;
    }();
    return f;
}

double
recall_of(std::span<const NodeId> got, std::span<const NodeId> truth) {
    std::size_t hit = 0;
    for (const auto id : got) {
        hit += std::find(truth.begin(), truth.end(), id) != truth.end() ? 1 : 0;
    }
    return truth.empty() ? 1.0 : double(hit) / double(truth.size());
}

}  // namespace

TEST_CASE("vanilla lookup starts at the medoid", "[baselines]") {
    const auto& f = fixture();
    const std::vector<NodeId> sp{f.graph.medoid()};
    const auto q = f.data.row(17);
    CHECK(vanilla_lookup(f.graph, f.data, q, 5).result == beam_search(f.graph, f.data, q, 5, sp).result);
    CHECK_THROWS_AS(vanilla_lookup(ProximityGraph(), VectorDataset(16), q, 5), UsageError);
}

TEST_CASE("static lsh entry points", "[baselines]") {
    const auto& f = fixture();
    const StaticLshIndex index(f.graph, f.data, HyperplaneHasher(16, 8, 3), 8);
    const auto before = index.fingerprint();

    std::size_t populated = 0;
    const std::vector<NodeId> sp{f.graph.medoid()};
    for (BucketIndex b = 0; b < 256; ++b) {
        const auto members = index.bucket(b);
        CHECK(members.size() <= 8);
        populated += members.empty() ? 0 : 1;
        for (const auto id : members) {
            CHECK(index.hasher().hash(f.data.row(id)) == b);
        }
    }
    CHECK(populated > 0);

    std::size_t empties = 0;
    const auto queries = testing::uniform_dataset(2000, 16, 51);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (!index.bucket(index.hasher().hash(queries.row(i))).empty()) {
            continue;
        }
        ++empties;
        CHECK(index.lookup(queries.row(i), 4).result ==
              beam_search(f.graph, f.data, queries.row(i), 4, sp).result);
    }
    CHECK(empties > 0);

    for (BucketIndex b = 0; b < 256; ++b) {
        for (const auto id : index.bucket(b)) {
            const auto out = index.lookup(f.data.row(id), 1);
            CHECK(out.result.distances[0] == 0.0f);
        }
    }
    std::size_t exact = 0;
    for (NodeId id = 0; id < f.data.size(); ++id) {
        exact += index.lookup(f.data.row(id), 16).result.distances[0] == 0.0f ? 1 : 0;
    }
    CHECK(double(exact) / double(f.data.size()) >= 0.98);
    CHECK(index.fingerprint() == before);
}

TEST_CASE("static lsh ignores query order", "[baselines]") {
    const auto& f = fixture();
    const StaticLshIndex index(f.graph, f.data, HyperplaneHasher(16, 6, 4), 8);
    const auto queries = testing::uniform_dataset(500, 16, 52);
    std::vector<SearchResult> forward(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        forward[i] = index.lookup(queries.row(i), 8).result;
    }
    for (std::size_t i = queries.size(); i-- > 0;) {
        CHECK(index.lookup(queries.row(i), 8).result == forward[i]);
    }
}

TEST_CASE("cache exact repeats and misses", "[baselines][cache]") {
    const auto& f = fixture();
    ApproxCache cache(16, 0.0f, HyperplaneHasher(16, 4, 1));
    std::size_t calls = 0;
    const ApproxCache::Underlying under = [&](std::span<const float> q, std::size_t k) {
        ++calls;
        return vanilla_lookup(f.graph, f.data, q, k);
    };
    const auto q = f.data.row(3);
    const auto first = cache.lookup(q, 4, under);
    CHECK_FALSE(first.hit);
    const auto second = cache.lookup(q, 4, under);
    CHECK(second.hit);
    CHECK(second.outcome.result == first.outcome.result);
    CHECK(second.outcome.stats.nodes_visited == 0);
    CHECK(second.outcome.stats.distance_computations == 0);
    CHECK(calls == 1);
    // a different k is a different key
    CHECK_FALSE(cache.lookup(q, 2, under).hit);

    ApproxCache fresh(64, 0.0f, HyperplaneHasher(16, 4, 1));
    const auto queries = testing::uniform_dataset(200, 16, 53);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto out = fresh.lookup(queries.row(i), 8, under);
        CHECK_FALSE(out.hit);
        CHECK(out.outcome.result == vanilla_lookup(f.graph, f.data, queries.row(i), 8).result);
    }
    CHECK(fresh.size() == 64);
    CHECK_THROWS_AS(ApproxCache(0, 0.0f, HyperplaneHasher(16, 4, 1)), UsageError);
    CHECK_THROWS_AS(ApproxCache(4, -1.0f, HyperplaneHasher(16, 4, 1)), UsageError);
}

TEST_CASE("cache evicts the least recent entry", "[baselines][cache]") {
    const auto& f = fixture();
    ApproxCache cache(2, 0.0f, HyperplaneHasher(16, 1, 1));
    const ApproxCache::Underlying under = [&](std::span<const float> q, std::size_t k) {
        return vanilla_lookup(f.graph, f.data, q, k);
    };
    cache.lookup(f.data.row(1), 1, under);
    cache.lookup(f.data.row(2), 1, under);
    CHECK(cache.lookup(f.data.row(1), 1, under).hit);
    cache.lookup(f.data.row(3), 1, under);  // evicts row 2
    CHECK(cache.size() == 2);
    CHECK(cache.lookup(f.data.row(1), 1, under).hit);
    CHECK_FALSE(cache.lookup(f.data.row(2), 1, under).hit);
}

TEST_CASE("cache hits return stored ids only", "[baselines][cache]") {
    const auto& f = fixture();
    WorkloadSpec spec;
    spec.mode = WorkloadMode::kZipfClustered;
    spec.dim = 16;
    spec.query_count = 2000;
    spec.cluster_count = 50;
    spec.seed = 2;
    const auto centroids = sample_rows(f.data, 50, 3);
    const auto queries = generate_workload(spec, &centroids);
    const float tau = pairwise_distance_percentile(queries.prefix(200), 200, 5.0);
    CHECK(tau > 0.0f);
    ApproxCache cache(128, tau, HyperplaneHasher(16, 6, 1));
    std::map<std::vector<NodeId>, int> stored;
    const ApproxCache::Underlying under = [&](std::span<const float> q, std::size_t k) {
        auto out = vanilla_lookup(f.graph, f.data, q, k);
        stored[out.result.ids] += 1;
        return out;
    };
    std::size_t hits = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto out = cache.lookup(queries.row(i), 4, under);
        if (out.hit) {
            ++hits;
            CHECK(stored.count(out.outcome.result.ids) == 1);
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("cache goes stale under insertions", "[baselines][cache]") {
    const auto& f = fixture();
    auto data = f.data;
    auto graph = f.graph;
    const auto centroids = sample_rows(data, 20, 7);
    WorkloadSpec spec;
    spec.mode = WorkloadMode::kZipfClustered;
    spec.dim = 16;
    spec.query_count = 300;
    spec.cluster_count = 20;
    spec.seed = 8;
    const auto queries = generate_workload(spec, &centroids);
    ApproxCache cache(1000, 0.0f, HyperplaneHasher(16, 6, 1));
    const ApproxCache::Underlying under = [&](std::span<const float> q, std::size_t k) {
        return vanilla_lookup(graph, data, q, k);
    };
    double before = 0.0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto out = cache.lookup(queries.row(i), 10, under);
        before += recall_of(out.outcome.result.ids, ids_of(brute_force_knn(data, queries.row(i), 10)));
    }
    before /= double(queries.size());

    // 5000 new points packed around the cached queries' regions
    spec.query_count = 5000;
    spec.seed = 9;
    const auto fresh = generate_workload(spec, &centroids);
    BuildParams p;
    p.max_degree = 24;
    p.build_beam_width = 64;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        insert(graph, data, fresh.row(i), p);
    }

    double after = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto out = cache.lookup(queries.row(i), 10, under);
        hits += out.hit ? 1 : 0;
        after += recall_of(out.outcome.result.ids, ids_of(brute_force_knn(data, queries.row(i), 10)));
    }
    after /= double(queries.size());
    CHECK(hits == queries.size());
    INFO("before " << before << " after " << after);
    CHECK(after < before - 0.2);
}

TEST_CASE("pairwise percentile", "[baselines]") {
    const VectorDataset q(1, {0, 1, 3});
    // pairwise squared distances 1, 9, 4
    CHECK(pairwise_distance_percentile(q, 10, 0.0) == 1.0f);
    CHECK(pairwise_distance_percentile(q, 10, 50.0) == 4.0f);
    CHECK(pairwise_distance_percentile(q, 10, 100.0) == 9.0f);
    CHECK(pairwise_distance_percentile(q, 2, 100.0) == 1.0f);
    CHECK(pairwise_distance_percentile(VectorDataset(1, {5}), 10, 5.0) == 0.0f);
}
