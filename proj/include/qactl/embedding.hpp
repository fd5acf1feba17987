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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qactl/chimera.hpp"

namespace qactl {

/// Undirected edge, stored with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Small undirected simple graph over vertices [0, n).
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(std::size_t n) : adjacency_(n) {}

    /// Ignores self-loops and duplicates.
    void add_edge(int a, int b);

    [[nodiscard]] std::size_t num_vertices() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t num_edges() const;
    [[nodiscard]] bool has_edge(int a, int b) const;
    [[nodiscard]] const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
    [[nodiscard]] std::vector<Edge> edges() const;

private:
    std::vector<std::vector<int>> adjacency_;  // sorted
};

SimpleGraph to_simple_graph(const HardwareGraph& graph);
SimpleGraph complete_graph(int n);

struct ContractionResult {
    SimpleGraph minor;
    /// class_of[v] is the minor vertex that original vertex v was merged into.
    std::vector<int> class_of;
};

/// Contracts every listed edge: endpoints merge, parallel edges collapse and
/// self-loops vanish. Minor vertices are numbered by their smallest member.
/// Throws LookupError if a listed edge is not in the graph.
ContractionResult contract_edges(const SimpleGraph& graph, const std::vector<Edge>& pairs);

// Exact structural certificates used for the small isomorphism checks.
bool is_complete_graph(const SimpleGraph& g, std::size_t n);
bool is_complete_bipartite(const SimpleGraph& g, std::size_t a, std::size_t b);
/// True if every pair of the listed vertices is adjacent.
bool contains_clique(const SimpleGraph& g, const std::vector<int>& vertices);

struct Chain {
    int logical_id = 0;
    std::vector<int> qubits;    // linear qubit indices
    std::vector<Edge> intra;    // ferromagnetic couplers holding the chain together
};

struct Embedding {
    ChimeraSpec spec;
    std::vector<Chain> chains;
    /// (logical a, logical b) with a < b -> every physical coupler joining the two chains.
    std::map<Edge, std::vector<Edge>> inter;

    [[nodiscard]] std::size_t num_physical_qubits() const;
    [[nodiscard]] const Chain& chain(int logical_id) const;
};

/// Diagonal-chain embedding of K_k into a square C_N. Logical node i uses
/// shore s = i mod m of tile column/row t = i / m: vertical qubits of tiles
/// (0,t)..(t,t) followed by horizontal qubits of tiles (t,t)..(t,N-1), joined
/// by the internal coupler of diagonal tile (t,t). Every chain has N+1 qubits.
Embedding embed_complete(int k, const ChimeraSpec& spec);

/// Fills embedding.inter with every graph coupler joining two different chains.
void collect_inter_couplers(Embedding& embedding, const HardwareGraph& graph);

struct VerificationReport {
    bool passed = true;
    std::vector<std::string> failures;

    void fail(std::string message) {
        passed = false;
        failures.push_back(std::move(message));
    }
};

/// Checks that the embedding is a K_{target_k} minor model of graph: disjoint
/// chains, chains connected through existing intra couplers, and at least one
/// coupler between every pair of chains. Never throws for a bad embedding.
VerificationReport verify_embedding(const Embedding& embedding, const HardwareGraph& graph,
                                    int target_k);

}  // namespace qactl
