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

#include "qactl/chimera.hpp"

#include <algorithm>
#include <queue>

#include "qactl/error.hpp"

namespace qactl {

void ChimeraSpec::validate() const {
    if (n_rows < 1 || n_cols < 1 || m < 1) {
        throw ParameterError("chimera spec must have n_rows, n_cols, m >= 1 (got " +
                             std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                             ", m=" + std::to_string(m) + ")");
    }
}

int qubit_linear_index(const ChimeraSpec& spec, const QubitId& q) {
    if (q.tile_row < 0 || q.tile_row >= spec.n_rows || q.tile_col < 0 ||
        q.tile_col >= spec.n_cols || q.shore < 0 || q.shore >= spec.m) {
        throw RangeError("qubit " + to_string(q) + " outside chimera grid");
    }
    const int tile = q.tile_row * spec.n_cols + q.tile_col;
    return (tile * 2 + static_cast<int>(q.orientation)) * spec.m + q.shore;
}

QubitId qubit_from_index(const ChimeraSpec& spec, int index) {
    if (index < 0 || static_cast<std::size_t>(index) >= spec.num_qubits()) {
        throw RangeError("qubit index " + std::to_string(index) + " outside [0, " +
                         std::to_string(spec.num_qubits()) + ")");
    }
    QubitId q;
    q.shore = index % spec.m;
    index /= spec.m;
    q.orientation = static_cast<Orientation>(index % 2);
    index /= 2;
    q.tile_col = index % spec.n_cols;
    q.tile_row = index / spec.n_cols;
    return q;
}

std::string to_string(Orientation o) { return o == Orientation::Horizontal ? "H" : "V"; }

std::string to_string(const QubitId& q) {
    return "(" + std::to_string(q.tile_row) + "," + std::to_string(q.tile_col) + "," +
           to_string(q.orientation) + std::to_string(q.shore) + ")";
}

std::string to_string(CouplerKind k) {
    return k == CouplerKind::Internal ? "internal" : "external";
}

HardwareGraph::HardwareGraph(const ChimeraSpec& spec) : spec_(spec) {
    spec_.validate();
    adjacency_.resize(spec_.num_qubits());
    incident_.resize(spec_.num_qubits());
    couplers_.reserve(spec_.num_internal_couplers() + spec_.num_external_couplers());

    auto add = [&](int a, int b, CouplerKind kind) {
        if (a > b) std::swap(a, b);
        couplers_.push_back({a, b, kind});
    };
    const int m = spec_.m;
    for (int r = 0; r < spec_.n_rows; ++r) {
        for (int c = 0; c < spec_.n_cols; ++c) {
            for (int h = 0; h < m; ++h) {
                const int hq = qubit_linear_index(spec_, {r, c, Orientation::Horizontal, h});
                for (int v = 0; v < m; ++v) {
                    add(hq, qubit_linear_index(spec_, {r, c, Orientation::Vertical, v}),
                        CouplerKind::Internal);
                }
            }
        }
    }
    for (int r = 0; r < spec_.n_rows; ++r) {
        for (int c = 0; c < spec_.n_cols; ++c) {
            for (int s = 0; s < m; ++s) {
                if (c + 1 < spec_.n_cols) {
                    add(qubit_linear_index(spec_, {r, c, Orientation::Horizontal, s}),
                        qubit_linear_index(spec_, {r, c + 1, Orientation::Horizontal, s}),
                        CouplerKind::External);
                }
                if (r + 1 < spec_.n_rows) {
                    add(qubit_linear_index(spec_, {r, c, Orientation::Vertical, s}),
                        qubit_linear_index(spec_, {r + 1, c, Orientation::Vertical, s}),
                        CouplerKind::External);
                }
            }
        }
    }

    for (std::size_t i = 0; i < couplers_.size(); ++i) {
        const auto& e = couplers_[i];
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (std::size_t q = 0; q < adjacency_.size(); ++q) {
        std::sort(adjacency_[q].begin(), adjacency_[q].end());
        incident_[q].resize(adjacency_[q].size());
    }
    for (std::size_t i = 0; i < couplers_.size(); ++i) {
        const auto& e = couplers_[i];
        for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            const auto& adj = adjacency_[a];
            const auto pos = std::lower_bound(adj.begin(), adj.end(), b) - adj.begin();
            incident_[a][pos] = i;
        }
    }
}

std::size_t HardwareGraph::count(CouplerKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        couplers_.begin(), couplers_.end(), [kind](const Coupler& c) { return c.kind == kind; }));
}

std::span<const int> HardwareGraph::neighbors(int qubit) const {
    if (qubit < 0 || static_cast<std::size_t>(qubit) >= adjacency_.size()) {
        throw LookupError("unknown qubit index " + std::to_string(qubit));
    }
    return adjacency_[qubit];
}

std::span<const int> HardwareGraph::neighbors(const QubitId& q) const {
    int index = 0;
    try {
        index = qubit_linear_index(spec_, q);
    } catch (const RangeError&) {
        throw LookupError("unknown qubit " + to_string(q));
    }
    return adjacency_[index];
}

bool HardwareGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= adjacency_.size() ||
        static_cast<std::size_t>(v) >= adjacency_.size()) {
        return false;
    }
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

const Coupler& HardwareGraph::coupler(int u, int v) const {
    if (!has_edge(u, v)) {
        throw LookupError("no coupler between qubits " + std::to_string(u) + " and " +
                          std::to_string(v));
    }
    const auto& adj = adjacency_[u];
    const auto pos = std::lower_bound(adj.begin(), adj.end(), v) - adj.begin();
    return couplers_[incident_[u][pos]];
}

bool HardwareGraph::is_connected() const {
    if (adjacency_.empty()) return true;
    std::vector<char> seen(adjacency_.size(), 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t visited = 1;
    while (!frontier.empty()) {
        const int q = frontier.front();
        frontier.pop();
        for (int n : adjacency_[q]) {
            if (!seen[n]) {
                seen[n] = 1;
                ++visited;
                frontier.push(n);
            }
        }
    }
    return visited == adjacency_.size();
}

HardwareGraph build_chimera(const ChimeraSpec& spec) { return HardwareGraph(spec); }

}  // namespace qactl
