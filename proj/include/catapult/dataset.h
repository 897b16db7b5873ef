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
#include <filesystem>
#include <span>
#include <vector>

#include "catapult/types.h"

namespace catapult {

/// Dense row-major collection of fixed-dimension float vectors. Row i has id i.
class VectorDataset {
public:
    VectorDataset() = default;

    explicit VectorDataset(std::size_t dim);

    /// Takes ownership of `values`, which must hold a whole number of rows of
    /// finite floats.
    VectorDataset(std::size_t dim, std::vector<float> values);

    std::size_t
    dim() const {
        return dim_;
    }

    std::size_t
    size() const {
        return dim_ == 0 ? 0 : values_.size() / dim_;
    }

    bool
    empty() const {
        return values_.empty();
    }

    std::span<const float>
    row(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }

    const float*
    row_ptr(std::size_t i) const {
        return values_.data() + i * dim_;
    }

    std::span<const float>
    values() const {
        return values_;
    }

    /// Appends one row and returns its id.
    NodeId
    append(std::span<const float> v);

    void
    reserve(std::size_t rows) {
        values_.reserve(rows * dim_);
    }

    /// First `rows` rows as a new dataset.
    VectorDataset
    prefix(std::size_t rows) const;

    /// Rows [first, first + rows) as a new dataset.
    VectorDataset
    slice(std::size_t first, std::size_t rows) const;

    friend bool
    operator==(const VectorDataset&, const VectorDataset&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<float> values_;
};

/// Reads the binary vector format: little-endian int32 n, int32 d, then n*d
/// float32 values row-major. Throws FormatError on truncation or trailing bytes.
VectorDataset
load_vectors(const std::filesystem::path& path);

void
save_vectors(const std::filesystem::path& path, const VectorDataset& dataset);

/// Node id -> sorted set of labels.
class LabelTable {
public:
    LabelTable() = default;

    explicit LabelTable(std::vector<std::vector<LabelId>> labels);

    std::size_t
    size() const {
        return labels_.size();
    }

    std::span<const LabelId>
    labels_of(NodeId id) const {
        return labels_[id];
    }

    /// True iff the node carries at least one of `required` (sorted).
    bool
    matches_any(NodeId id, std::span<const LabelId> required) const;

    void
    add(std::vector<LabelId> labels);

    /// Every distinct label, ascending.
    std::vector<LabelId>
    distinct_labels() const;

    /// Ids carrying `label`, ascending.
    std::vector<NodeId>
    nodes_with(LabelId label) const;

    friend bool
    operator==(const LabelTable&, const LabelTable&) = default;

private:
    std::vector<std::vector<LabelId>> labels_;
};

/// Plain text, one line per node id, comma-separated labels; empty line = none.
LabelTable
load_labels(const std::filesystem::path& path);

void
save_labels(const std::filesystem::path& path, const LabelTable& labels);

}  // namespace catapult
