// Copyright 2026 The qactl Authors
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
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qactl {

/// Grid of n_rows x n_cols unit tiles, each a complete bipartite K_{m,m}.
struct ChimeraSpec {
    int n_rows = 8;
    int n_cols = 8;
    int m = 4;

    /// Throws ParameterError unless every field is positive.
    void validate() const;
    [[nodiscard]] std::size_t num_qubits() const {
        return 2u * static_cast<std::size_t>(m) * n_rows * n_cols;
    }
    [[nodiscard]] std::size_t num_internal_couplers() const {
        return static_cast<std::size_t>(m) * m * n_rows * n_cols;
    }
    [[nodiscard]] std::size_t num_external_couplers() const {
        return static_cast<std::size_t>(m) *
               (static_cast<std::size_t>(n_rows) * (n_cols - 1) +
                static_cast<std::size_t>(n_cols) * (n_rows - 1));
    }
    friend bool operator==(const ChimeraSpec&, const ChimeraSpec&) = default;
};

enum class Orientation : std::uint8_t { Horizontal = 0, Vertical = 1 };

struct QubitId {
    int tile_row = 0;
    int tile_col = 0;
    Orientation orientation = Orientation::Horizontal;
    int shore = 0;

    friend auto operator<=>(const QubitId&, const QubitId&) = default;
};

enum class CouplerKind : std::uint8_t { Internal, External };

/// Endpoints are linear qubit indices with u < v.
struct Coupler {
    int u = 0;
    int v = 0;
    CouplerKind kind = CouplerKind::Internal;

    friend bool operator==(const Coupler&, const Coupler&) = default;
};

// Linear order: tile-row-major, then tile column, then orientation
// (Horizontal first), then shore index. Stable across versions.
int qubit_linear_index(const ChimeraSpec& spec, const QubitId& q);
QubitId qubit_from_index(const ChimeraSpec& spec, int index);

std::string to_string(Orientation o);
std::string to_string(const QubitId& q);
std::string to_string(CouplerKind k);

/// Immutable Chimera qubit/coupler graph.
class HardwareGraph {
public:
    explicit HardwareGraph(const ChimeraSpec& spec);

    [[nodiscard]] const ChimeraSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] std::size_t num_qubits() const noexcept { return adjacency_.size(); }
    [[nodiscard]] const std::vector<Coupler>& couplers() const noexcept { return couplers_; }
    [[nodiscard]] std::size_t count(CouplerKind kind) const;

    /// Sorted neighbor list. Throws LookupError for an unknown index.
    [[nodiscard]] std::span<const int> neighbors(int qubit) const;
    [[nodiscard]] std::span<const int> neighbors(const QubitId& q) const;
    [[nodiscard]] std::size_t degree(int qubit) const { return neighbors(qubit).size(); }

    [[nodiscard]] bool has_edge(int u, int v) const;
    /// Coupler joining u and v; throws LookupError when absent.
    [[nodiscard]] const Coupler& coupler(int u, int v) const;

    [[nodiscard]] bool is_connected() const;

private:
    ChimeraSpec spec_;
    std::vector<Coupler> couplers_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<std::size_t>> incident_;  // coupler ids, parallel to adjacency_
};

/// Builds C_{n_rows x n_cols} with K_{m,m} tiles and open grid boundaries.
HardwareGraph build_chimera(const ChimeraSpec& spec);

}  // namespace qactl
