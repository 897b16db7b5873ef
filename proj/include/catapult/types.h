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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace catapult {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

/// A node paired with its distance to some query. Ordered by distance, then id.
struct Neighbor {
    NodeId id;
    float distance;

    friend bool
    operator<(const Neighbor& lhs, const Neighbor& rhs) {
        return lhs.distance < rhs.distance || (lhs.distance == rhs.distance && lhs.id < rhs.id);
    }
    friend bool
    operator==(const Neighbor&, const Neighbor&) = default;
};

/// Caller violated a precondition (bad dimension, empty start set, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A file did not match the expected on-disk layout.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace catapult
