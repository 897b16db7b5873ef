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

#include "catapult/dataset.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

namespace catapult {

namespace {

void
check_finite(std::span<const float> values) {
    for (float v : values) {
        if (!std::isfinite(v)) {
            throw UsageError("vector components must be finite");
        }
    }
}

}  // namespace

VectorDataset::VectorDataset(std::size_t dim) : dim_(dim) {
    if (dim == 0) {
        throw UsageError("dataset dimension must be positive");
    }
}

VectorDataset::VectorDataset(std::size_t dim, std::vector<float> values)
    : dim_(dim), values_(std::move(values)) {
    if (dim == 0) {
        throw UsageError("dataset dimension must be positive");
    }
    if (values_.size() % dim != 0) {
        throw UsageError("value count is not a multiple of the dimension");
    }
    check_finite(values_);
}

NodeId
VectorDataset::append(std::span<const float> v) {
    if (v.size() != dim_) {
        throw UsageError("append: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                         std::to_string(dim_) + ")");
    }
    check_finite(v);
    const auto id = static_cast<NodeId>(size());
    values_.insert(values_.end(), v.begin(), v.end());
    return id;
}

VectorDataset
VectorDataset::prefix(std::size_t rows) const {
    return slice(0, rows);
}

VectorDataset
VectorDataset::slice(std::size_t first, std::size_t rows) const {
    if (first + rows > size()) {
        throw UsageError("slice out of range");
    }
    VectorDataset out(dim_);
    out.values_.assign(values_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                       values_.begin() + static_cast<std::ptrdiff_t>((first + rows) * dim_));
    return out;
}

VectorDataset
load_vectors(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::int32_t header[2];
    if (!in.read(reinterpret_cast<char*>(header), sizeof(header))) {
        throw FormatError(path.string() + ": truncated header");
    }
    const std::int32_t n = header[0];
    const std::int32_t d = header[1];
    if (n < 0 || d <= 0) {
        throw FormatError(path.string() + ": invalid header n=" + std::to_string(n) +
                          " d=" + std::to_string(d));
    }
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
    std::vector<float> values(count);
    const auto bytes = static_cast<std::streamsize>(count * sizeof(float));
    if (count > 0 && !in.read(reinterpret_cast<char*>(values.data()), bytes)) {
        throw FormatError(path.string() + ": payload shorter than n*d floats");
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError(path.string() + ": trailing bytes after payload");
    }
    for (float v : values) {
        if (!std::isfinite(v)) {
            throw FormatError(path.string() + ": non-finite component");
        }
    }
    return VectorDataset(static_cast<std::size_t>(d), std::move(values));
}

void
save_vectors(const std::filesystem::path& path, const VectorDataset& dataset) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    const std::int32_t header[2] = {static_cast<std::int32_t>(dataset.size()),
                                    static_cast<std::int32_t>(dataset.dim())};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    const auto values = dataset.values();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(float)));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

LabelTable::LabelTable(std::vector<std::vector<LabelId>> labels) : labels_(std::move(labels)) {
    for (auto& set : labels_) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
}

bool
LabelTable::matches_any(NodeId id, std::span<const LabelId> required) const {
    if (id >= labels_.size()) {
        return false;
    }
    const auto& own = labels_[id];
    // Both sides are sorted and tiny.
    auto a = own.begin();
    auto b = required.begin();
    while (a != own.end() && b != required.end()) {
        if (*a == *b) {
            return true;
        }
        if (*a < *b) {
            ++a;
        } else {
            ++b;
        }
    }
    return false;
}

void
LabelTable::add(std::vector<LabelId> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    labels_.push_back(std::move(labels));
}

std::vector<LabelId>
LabelTable::distinct_labels() const {
    std::vector<LabelId> all;
    for (const auto& set : labels_) {
        all.insert(all.end(), set.begin(), set.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

std::vector<NodeId>
LabelTable::nodes_with(LabelId label) const {
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (std::binary_search(labels_[i].begin(), labels_[i].end(), label)) {
            ids.push_back(static_cast<NodeId>(i));
        }
    }
    return ids;
}

LabelTable
load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::vector<LabelId>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<LabelId> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            if (field.empty()) {
                continue;
            }
            std::size_t used = 0;
            unsigned long value = 0;
            try {
                value = std::stoul(field, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != field.size() || field.front() == '-') {
                throw FormatError(path.string() + ":" + std::to_string(line_no) +
                                  ": bad label '" + field + "'");
            }
            row.push_back(static_cast<LabelId>(value));
        }
        rows.push_back(std::move(row));
    }
    return LabelTable(std::move(rows));
}

void
save_labels(const std::filesystem::path& path, const LabelTable& labels) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto set = labels.labels_of(static_cast<NodeId>(i));
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << set[j];
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace catapult
