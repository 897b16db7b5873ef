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

#include "catapult/graph.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "catapult/filter.h"
#include "search_core.h"
#include "vamana_builder.h"

namespace catapult {

namespace {

// Temporary out-degree headroom during construction; trimmed back to R at the end.
constexpr double kBuildSlack = 1.3;

constexpr char kIndexMagic[4] = {'C', 'P', 'L', 'T'};
constexpr std::uint32_t kIndexVersion = 1;

/// (labels(p) & labels(c)) is a subset of labels(a).
bool
may_occlude(const LabelTable& labels, NodeId p, NodeId a, NodeId c) {
    const auto fp = labels.labels_of(p);
    const auto fc = labels.labels_of(c);
    const auto fa = labels.labels_of(a);
    for (const LabelId l : fp) {
        if (std::binary_search(fc.begin(), fc.end(), l) &&
            !std::binary_search(fa.begin(), fa.end(), l)) {
            return false;
        }
    }
    return true;
}

}  // namespace

void
BuildParams::validate() const {
    if (max_degree == 0) {
        throw UsageError("max_degree must be positive");
    }
    if (build_beam_width == 0) {
        throw UsageError("build_beam_width must be positive");
    }
    if (!(alpha >= 1.0f)) {
        throw UsageError("alpha must be >= 1");
    }
    if (medoid_sample_limit == 0) {
        throw UsageError("medoid_sample_limit must be positive");
    }
}

ProximityGraph::ProximityGraph(std::size_t node_count, std::size_t max_degree, Metric metric)
    : adjacency_(node_count), max_degree_(max_degree), metric_(metric) {
    if (max_degree == 0) {
        throw UsageError("max_degree must be positive");
    }
}

void
ProximityGraph::set_medoid(NodeId id) {
    if (id >= size()) {
        throw UsageError("medoid out of range");
    }
    medoid_ = id;
}

void
ProximityGraph::set_neighbors(NodeId id, std::vector<NodeId> neighbors) {
    if (id >= size()) {
        throw UsageError("set_neighbors: node out of range");
    }
    if (neighbors.size() > max_degree_) {
        throw UsageError("set_neighbors: out-degree exceeds max_degree");
    }
    for (const NodeId nb : neighbors) {
        if (nb == id || nb >= size()) {
            throw UsageError("set_neighbors: self loop or invalid neighbor id");
        }
    }
    adjacency_[id] = std::move(neighbors);
}

NodeId
ProximityGraph::add_node() {
    adjacency_.emplace_back();
    return static_cast<NodeId>(adjacency_.size() - 1);
}

void
ProximityGraph::set_label_entry(LabelId label, NodeId id) {
    if (id >= size()) {
        throw UsageError("label entry point out of range");
    }
    label_entries_[label] = id;
}

std::optional<NodeId>
ProximityGraph::label_entry(LabelId label) const {
    const auto it = label_entries_.find(label);
    if (it == label_entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t
ProximityGraph::max_out_degree() const {
    std::size_t best = 0;
    for (const auto& list : adjacency_) {
        best = std::max(best, list.size());
    }
    return best;
}

void
ProximityGraph::check_invariants() const {
    for (std::size_t i = 0; i < adjacency_.size(); ++i) {
        const auto& list = adjacency_[i];
        if (list.size() > max_degree_) {
            throw std::logic_error("node " + std::to_string(i) + " has out-degree " +
                                   std::to_string(list.size()) + " > R");
        }
        for (const NodeId nb : list) {
            if (nb == i) {
                throw std::logic_error("node " + std::to_string(i) + " has a self loop");
            }
            if (nb >= adjacency_.size()) {
                throw std::logic_error("node " + std::to_string(i) + " links to invalid id " +
                                       std::to_string(nb));
            }
        }
        auto sorted = list;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::logic_error("node " + std::to_string(i) + " has a duplicate edge");
        }
    }
    if (!adjacency_.empty() && medoid_ >= adjacency_.size()) {
        throw std::logic_error("medoid out of range");
    }
}

NodeId
compute_medoid(const VectorDataset& dataset,
               std::size_t sample_limit,
               std::uint64_t seed,
               Metric metric) {
    std::vector<NodeId> all(dataset.size());
    std::iota(all.begin(), all.end(), NodeId{0});
    return compute_medoid(dataset, all, sample_limit, seed, metric);
}

NodeId
compute_medoid(const VectorDataset& dataset,
               std::span<const NodeId> subset,
               std::size_t sample_limit,
               std::uint64_t seed,
               Metric metric) {
    if (subset.empty()) {
        throw UsageError("compute_medoid: empty dataset");
    }
    if (sample_limit == 0) {
        throw UsageError("compute_medoid: sample_limit must be positive");
    }
    std::vector<NodeId> pool(subset.begin(), subset.end());
    if (pool.size() > sample_limit) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < sample_limit; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        pool.resize(sample_limit);
        std::sort(pool.begin(), pool.end());
    }
    const std::size_t m = pool.size();
    const std::size_t dim = dataset.dim();
    std::vector<double> sums(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const float* a = dataset.row_ptr(pool[i]);
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = distance_unchecked(a, dataset.row_ptr(pool[j]), dim, metric);
            sums[i] += d;
            sums[j] += d;
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (sums[i] < sums[best]) {
            best = i;
        }
    }
    return pool[best];
}

std::vector<NodeId>
robust_prune(const VectorDataset& dataset,
             NodeId p,
             std::span<const Neighbor> candidates,
             float alpha,
             std::size_t max_degree,
             Metric metric,
             const LabelTable* labels) {
    std::vector<Neighbor> pool(candidates.begin(), candidates.end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end(),
                           [](const Neighbor& a, const Neighbor& b) { return a.id == b.id; }),
               pool.end());
    for (const auto& c : pool) {
        if (c.id == p) {
            throw UsageError("robust_prune: candidate set contains the base point");
        }
    }

    const std::size_t dim = dataset.dim();
    std::vector<NodeId> kept;
    kept.reserve(std::min(max_degree, pool.size()));
    std::vector<bool> dropped(pool.size(), false);
    for (std::size_t i = 0; i < pool.size() && kept.size() < max_degree; ++i) {
        if (dropped[i]) {
            continue;
        }
        const NodeId a = pool[i].id;
        kept.push_back(a);
        const float* va = dataset.row_ptr(a);
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            if (dropped[j]) {
                continue;
            }
            if (labels != nullptr && !may_occlude(*labels, p, a, pool[j].id)) {
                continue;
            }
            const float d_ac = distance_unchecked(va, dataset.row_ptr(pool[j].id), dim, metric);
            if (alpha * d_ac <= pool[j].distance) {
                dropped[j] = true;
            }
        }
    }
    return kept;
}

namespace detail {

VamanaBuilder::VamanaBuilder(const VectorDataset& dataset,
                             const BuildParams& params,
                             const LabelTable* labels,
                             ProximityGraph& graph,
                             std::size_t degree_limit)
    : dataset_(dataset),
      params_(params),
      labels_(labels),
      graph_(graph),
      degree_limit_(degree_limit) {
}

float
VamanaBuilder::dist(NodeId a, NodeId b) const {
    return distance_unchecked(dataset_.row_ptr(a), dataset_.row_ptr(b), dataset_.dim(),
                              params_.metric);
}

void
VamanaBuilder::link(NodeId node, float alpha) {
    std::vector<NodeId> start;
    if (labels_ != nullptr) {
        for (const LabelId l : labels_->labels_of(node)) {
            if (const auto entry = graph_.label_entry(l)) {
                start.push_back(*entry);
            }
        }
    }
    if (start.empty()) {
        start.push_back(graph_.medoid());
    }

    visited_.clear();
    const auto q = dataset_.row(node);
    if (labels_ != nullptr) {
        const auto own = labels_->labels_of(node);
        greedy_search(
            graph_, dataset_, q, params_.build_beam_width, start,
            [&](NodeId id) { return labels_->matches_any(id, own); }, &visited_);
    } else {
        greedy_search(
            graph_, dataset_, q, params_.build_beam_width, start, [](NodeId) { return true; },
            &visited_);
    }

    candidates_.clear();
    for (const auto& v : visited_) {
        if (v.id != node) {
            candidates_.push_back(v);
        }
    }
    for (const NodeId nb : graph_.neighbors(node)) {
        candidates_.push_back({nb, dist(node, nb)});
    }
    auto pruned = robust_prune(dataset_, node, candidates_, alpha, params_.max_degree,
                               params_.metric, labels_);
    graph_.set_neighbors(node, pruned);
    for (const NodeId target : pruned) {
        add_reverse_edge(target, node, alpha);
    }
}

void
VamanaBuilder::add_reverse_edge(NodeId target, NodeId source, float alpha) {
    const auto current = graph_.neighbors(target);
    if (std::find(current.begin(), current.end(), source) != current.end()) {
        return;
    }
    if (current.size() < degree_limit_) {
        graph_.push_neighbor(target, source);
        return;
    }
    std::vector<Neighbor> pool;
    pool.reserve(current.size() + 1);
    for (const NodeId nb : current) {
        pool.push_back({nb, dist(target, nb)});
    }
    pool.push_back({source, dist(target, source)});
    graph_.set_neighbors(target, robust_prune(dataset_, target, pool, alpha, params_.max_degree,
                                              params_.metric, labels_));
}

void
VamanaBuilder::enforce_degree_bound(float alpha) {
    for (std::size_t i = 0; i < graph_.size(); ++i) {
        const auto id = static_cast<NodeId>(i);
        const auto current = graph_.neighbors(id);
        if (current.size() <= params_.max_degree) {
            continue;
        }
        std::vector<Neighbor> pool;
        pool.reserve(current.size());
        for (const NodeId nb : current) {
            pool.push_back({nb, dist(id, nb)});
        }
        graph_.set_neighbors(id, robust_prune(dataset_, id, pool, alpha, params_.max_degree,
                                              params_.metric, labels_));
    }
}

ProximityGraph
build_graph(const VectorDataset& dataset, const BuildParams& params, const LabelTable* labels) {
    params.validate();
    const std::size_t n = dataset.size();
    if (n == 0) {
        throw UsageError("build: dataset is empty");
    }
    if (labels != nullptr && labels->size() != n) {
        throw UsageError("build: label table size does not match the dataset");
    }
    ProximityGraph graph(n, params.max_degree, params.metric);
    std::mt19937_64 rng(params.seed);

    // Random regular initial graph.
    const std::size_t degree = std::min(params.max_degree, n - 1);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        const auto self = static_cast<NodeId>(i);
        std::vector<NodeId> out;
        out.reserve(degree);
        if (degree == n - 1) {
            for (NodeId j = 0; j < n; ++j) {
                if (j != self) {
                    out.push_back(j);
                }
            }
        } else {
            while (out.size() < degree) {
                const NodeId j = pick(rng);
                if (j != self && std::find(out.begin(), out.end(), j) == out.end()) {
                    out.push_back(j);
                }
            }
        }
        graph.set_neighbors(self, std::move(out));
    }

    graph.set_medoid(
        compute_medoid(dataset, params.medoid_sample_limit, params.seed, params.metric));
    if (labels != nullptr) {
        assign_label_entry_points(graph, dataset, *labels, params);
    }

    const auto limit = static_cast<std::size_t>(kBuildSlack * static_cast<double>(params.max_degree));
    VamanaBuilder builder(dataset, params, labels, graph, std::max(limit, params.max_degree));
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (const float alpha : {1.0f, params.alpha}) {
        std::shuffle(order.begin(), order.end(), rng);
        for (const NodeId node : order) {
            builder.link(node, alpha);
        }
    }
    builder.enforce_degree_bound(params.alpha);
    return graph;
}

}  // namespace detail

ProximityGraph
build_vamana(const VectorDataset& dataset, const BuildParams& params) {
    return detail::build_graph(dataset, params, nullptr);
}

NodeId
insert(ProximityGraph& graph,
       VectorDataset& dataset,
       std::span<const float> v,
       const BuildParams& params) {
    params.validate();
    if (v.size() != dataset.dim()) {
        throw UsageError("insert: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                         std::to_string(dataset.dim()) + ")");
    }
    if (graph.size() != dataset.size()) {
        throw UsageError("insert: graph and dataset sizes differ");
    }
    if (graph.max_degree() == 0) {
        graph = ProximityGraph(0, params.max_degree, params.metric);
    }
    const NodeId id = dataset.append(v);
    graph.add_node();
    if (id == 0) {
        graph.set_medoid(0);
        return id;
    }
    detail::VamanaBuilder builder(dataset, params, nullptr, graph, graph.max_degree());
    builder.link(id, params.alpha);
    return id;
}

std::filesystem::path
vectors_path_for(const std::filesystem::path& index_path) {
    auto p = index_path;
    p += ".vectors";
    return p;
}

void
save_index(const std::filesystem::path& path,
           const ProximityGraph& graph,
           const VectorDataset& dataset) {
    if (graph.size() != dataset.size()) {
        throw UsageError("save_index: graph and dataset sizes differ");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    auto put = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof(v)); };
    out.write(kIndexMagic, sizeof(kIndexMagic));
    put(kIndexVersion);
    put(static_cast<std::uint32_t>(graph.size()));
    put(static_cast<std::uint32_t>(dataset.dim()));
    put(static_cast<std::uint32_t>(graph.max_degree()));
    put(graph.medoid());
    for (std::size_t i = 0; i < graph.size(); ++i) {
        const auto nbrs = graph.neighbors(static_cast<NodeId>(i));
        put(static_cast<std::uint32_t>(nbrs.size()));
        out.write(reinterpret_cast<const char*>(nbrs.data()),
                  static_cast<std::streamsize>(nbrs.size() * sizeof(NodeId)));
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
    save_vectors(vectors_path_for(path), dataset);
}

LoadedIndex
load_index(const std::filesystem::path& path, Metric metric) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    auto get = [&]() {
        std::uint32_t v = 0;
        if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
            throw FormatError(path.string() + ": truncated index");
        }
        return v;
    };
    char magic[4];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kIndexMagic, 4) != 0) {
        throw FormatError(path.string() + ": bad magic");
    }
    if (get() != kIndexVersion) {
        throw FormatError(path.string() + ": unsupported version");
    }
    const std::uint32_t n = get();
    const std::uint32_t dim = get();
    const std::uint32_t max_degree = get();
    const std::uint32_t medoid = get();
    if (max_degree == 0) {
        throw FormatError(path.string() + ": zero max degree");
    }
    LoadedIndex loaded;
    loaded.graph = ProximityGraph(n, max_degree, metric);
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t degree = get();
        if (degree > max_degree) {
            throw FormatError(path.string() + ": node degree exceeds R");
        }
        std::vector<NodeId> nbrs(degree);
        for (auto& nb : nbrs) {
            nb = get();
        }
        try {
            loaded.graph.set_neighbors(i, std::move(nbrs));
        } catch (const UsageError& e) {
            throw FormatError(path.string() + ": " + e.what());
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError(path.string() + ": trailing bytes");
    }
    if (n > 0) {
        if (medoid >= n) {
            throw FormatError(path.string() + ": medoid out of range");
        }
        loaded.graph.set_medoid(medoid);
    }
    loaded.dataset = load_vectors(vectors_path_for(path));
    if (loaded.dataset.size() != n || loaded.dataset.dim() != dim) {
        throw FormatError(path.string() + ": vectors do not match the index header");
    }
    return loaded;
}

}  // namespace catapult
