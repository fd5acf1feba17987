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

#include "qactl/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "qactl/error.hpp"

namespace qactl {

void SimpleGraph::add_edge(int a, int b) {
    if (a == b) return;
    auto insert = [](std::vector<int>& adj, int x) {
        auto it = std::lower_bound(adj.begin(), adj.end(), x);
        if (it == adj.end() || *it != x) adj.insert(it, x);
    };
    insert(adjacency_.at(a), b);
    insert(adjacency_.at(b), a);
}

std::size_t SimpleGraph::num_edges() const {
    std::size_t total = 0;
    for (const auto& adj : adjacency_) total += adj.size();
    return total / 2;
}

bool SimpleGraph::has_edge(int a, int b) const {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= adjacency_.size() ||
        static_cast<std::size_t>(b) >= adjacency_.size()) {
        return false;
    }
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::vector<Edge> SimpleGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t a = 0; a < adjacency_.size(); ++a) {
        for (int b : adjacency_[a]) {
            if (static_cast<int>(a) < b) out.emplace_back(static_cast<int>(a), b);
        }
    }
    return out;
}

SimpleGraph to_simple_graph(const HardwareGraph& graph) {
    SimpleGraph g(graph.num_qubits());
    for (const auto& c : graph.couplers()) g.add_edge(c.u, c.v);
    return g;
}

SimpleGraph complete_graph(int n) {
    SimpleGraph g(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    }
    return g;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

ContractionResult contract_edges(const SimpleGraph& graph, const std::vector<Edge>& pairs) {
    const auto n = graph.num_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& [a, b] : pairs) {
        if (!graph.has_edge(a, b)) {
            throw LookupError("cannot contract (" + std::to_string(a) + "," +
                              std::to_string(b) + "): not an edge");
        }
        const int ra = find_root(parent, a);
        const int rb = find_root(parent, b);
        // Keep the smaller vertex as root so numbering follows smallest member.
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }

    ContractionResult result;
    result.class_of.assign(n, -1);
    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        const int r = find_root(parent, static_cast<int>(v));
        if (label[r] < 0) label[r] = next++;
        result.class_of[v] = label[r];
    }
    result.minor = SimpleGraph(static_cast<std::size_t>(next));
    for (const auto& [a, b] : graph.edges()) {
        result.minor.add_edge(result.class_of[a], result.class_of[b]);
    }
    return result;
}

bool is_complete_graph(const SimpleGraph& g, std::size_t n) {
    if (g.num_vertices() != n) return false;
    for (std::size_t v = 0; v < n; ++v) {
        if (g.neighbors(static_cast<int>(v)).size() != n - 1) return false;
    }
    return true;
}

bool is_complete_bipartite(const SimpleGraph& g, std::size_t a, std::size_t b) {
    const auto n = g.num_vertices();
    if (n != a + b || n == 0) return false;
    // Two-colour the graph; K_{a,b} is connected when a,b >= 1.
    std::vector<int> colour(n, -1);
    std::queue<int> frontier;
    colour[0] = 0;
    frontier.push(0);
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int w : g.neighbors(v)) {
            if (colour[w] < 0) {
                colour[w] = 1 - colour[v];
                frontier.push(w);
            } else if (colour[w] == colour[v]) {
                return false;
            }
        }
    }
    std::size_t side0 = 0;
    for (int c : colour) {
        if (c < 0) return false;
        side0 += (c == 0);
    }
    const std::size_t side1 = n - side0;
    if (!((side0 == a && side1 == b) || (side0 == b && side1 == a))) return false;
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t expected = colour[v] == 0 ? side1 : side0;
        if (g.neighbors(static_cast<int>(v)).size() != expected) return false;
    }
    return true;
}

bool contains_clique(const SimpleGraph& g, const std::vector<int>& vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (!g.has_edge(vertices[i], vertices[j])) return false;
        }
    }
    return true;
}

std::size_t Embedding::num_physical_qubits() const {
    std::size_t total = 0;
    for (const auto& c : chains) total += c.qubits.size();
    return total;
}

const Chain& Embedding::chain(int logical_id) const {
    for (const auto& c : chains) {
        if (c.logical_id == logical_id) return c;
    }
    throw LookupError("no chain for logical node " + std::to_string(logical_id));
}

Embedding embed_complete(int k, const ChimeraSpec& spec) {
    spec.validate();
    if (spec.n_rows != spec.n_cols) {
        throw ParameterError("complete-graph embedding needs a square grid, got " +
                             std::to_string(spec.n_rows) + "x" + std::to_string(spec.n_cols));
    }
    if (k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(k));
    const int n = spec.n_rows;
    if (k > spec.m * n) {
        throw CapacityError("K_" + std::to_string(k) + " does not fit in C_" + std::to_string(n) +
                            " with m=" + std::to_string(spec.m) + " (max " +
                            std::to_string(spec.m * n) + ")");
    }

    Embedding emb;
    emb.spec = spec;
    emb.chains.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const int t = i / spec.m;
        const int s = i % spec.m;
        Chain chain;
        chain.logical_id = i;
        for (int r = 0; r <= t; ++r) {
            chain.qubits.push_back(qubit_linear_index(spec, {r, t, Orientation::Vertical, s}));
        }
        for (int c = t; c < n; ++c) {
            chain.qubits.push_back(qubit_linear_index(spec, {t, c, Orientation::Horizontal, s}));
        }
        for (std::size_t q = 0; q + 1 < chain.qubits.size(); ++q) {
            chain.intra.push_back(make_edge(chain.qubits[q], chain.qubits[q + 1]));
        }
        emb.chains.push_back(std::move(chain));
    }
    collect_inter_couplers(emb, build_chimera(spec));
    return emb;
}

void collect_inter_couplers(Embedding& embedding, const HardwareGraph& graph) {
    std::vector<int> owner(graph.num_qubits(), -1);
    for (const auto& chain : embedding.chains) {
        for (int q : chain.qubits) {
            if (q >= 0 && static_cast<std::size_t>(q) < owner.size()) owner[q] = chain.logical_id;
        }
    }
    embedding.inter.clear();
    for (const auto& c : graph.couplers()) {
        const int a = owner[c.u];
        const int b = owner[c.v];
        if (a < 0 || b < 0 || a == b) continue;
        embedding.inter[make_edge(a, b)].push_back(a < b ? Edge{c.u, c.v} : Edge{c.v, c.u});
    }
}

VerificationReport verify_embedding(const Embedding& embedding, const HardwareGraph& graph,
                                    int target_k) {
    VerificationReport report;
    const auto nq = graph.num_qubits();

    std::set<int> ids;
    for (const auto& chain : embedding.chains) ids.insert(chain.logical_id);
    for (int i = 0; i < target_k; ++i) {
        if (!ids.count(i)) report.fail("missing chain for logical node " + std::to_string(i));
    }
    if (embedding.chains.size() != ids.size()) report.fail("duplicate logical ids");

    std::vector<int> owner(nq, -1);
    for (const auto& chain : embedding.chains) {
        const auto tag = "chain " + std::to_string(chain.logical_id);
        if (chain.qubits.empty()) {
            report.fail(tag + ": empty chain");
            continue;
        }
        for (int q : chain.qubits) {
            if (q < 0 || static_cast<std::size_t>(q) >= nq) {
                report.fail(tag + ": qubit " + std::to_string(q) + " not in graph");
                continue;
            }
            if (owner[q] >= 0) {
                report.fail(tag + ": qubit " + std::to_string(q) + " already used by chain " +
                            std::to_string(owner[q]));
                continue;
            }
            owner[q] = chain.logical_id;
        }
    }

    for (const auto& chain : embedding.chains) {
        const auto tag = "chain " + std::to_string(chain.logical_id);
        std::vector<int> members;
        for (int q : chain.qubits) {
            if (q >= 0 && static_cast<std::size_t>(q) < nq && owner[q] == chain.logical_id)
                members.push_back(q);
        }
        if (members.empty()) continue;
        std::sort(members.begin(), members.end());
        auto local = [&](int q) {
            auto it = std::lower_bound(members.begin(), members.end(), q);
            return (it != members.end() && *it == q) ? static_cast<int>(it - members.begin()) : -1;
        };
        SimpleGraph induced(members.size());
        for (const auto& [a, b] : chain.intra) {
            const int la = local(a);
            const int lb = local(b);
            if (la < 0 || lb < 0) {
                report.fail(tag + ": intra coupler (" + std::to_string(a) + "," +
                            std::to_string(b) + ") leaves the chain");
            } else if (!graph.has_edge(a, b)) {
                report.fail(tag + ": intra coupler (" + std::to_string(a) + "," +
                            std::to_string(b) + ") not in graph");
            } else {
                induced.add_edge(la, lb);
            }
        }
        std::vector<char> seen(members.size(), 0);
        std::queue<int> frontier;
        frontier.push(0);
        seen[0] = 1;
        std::size_t reached = 1;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (int w : induced.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    frontier.push(w);
                }
            }
        }
        if (reached != members.size()) report.fail(tag + ": disconnected chain");
    }

    std::set<Edge> coupled;
    for (const auto& c : graph.couplers()) {
        const int a = owner[c.u];
        const int b = owner[c.v];
        if (a >= 0 && b >= 0 && a != b) coupled.insert(make_edge(a, b));
    }
    for (int a = 0; a < target_k; ++a) {
        for (int b = a + 1; b < target_k; ++b) {
            if (ids.count(a) && ids.count(b) && !coupled.count({a, b})) {
                report.fail("logical pair (" + std::to_string(a) + "," + std::to_string(b) +
                            ") uncoupled");
            }
        }
    }
    for (const auto& [pair, couplers] : embedding.inter) {
        for (const auto& [u, v] : couplers) {
            const bool ok = graph.has_edge(u, v) && u >= 0 && v >= 0 &&
                            static_cast<std::size_t>(u) < nq && static_cast<std::size_t>(v) < nq &&
                            make_edge(owner[u], owner[v]) == pair;
            if (!ok) {
                report.fail("inter coupler (" + std::to_string(u) + "," + std::to_string(v) +
                            ") does not join chains " + std::to_string(pair.first) + " and " +
                            std::to_string(pair.second));
            }
        }
    }
    return report;
}

}  // namespace qactl
