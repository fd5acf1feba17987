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

#include "qactl/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>

#include "qactl/error.hpp"

namespace qactl {

QuantizedWeight QuantizedWeight::from_numerator(int numerator) {
    if (numerator < -kDenominator || numerator > kDenominator) {
        throw QuantizationError("weight numerator " + std::to_string(numerator) +
                                " outside [-8, 8]; use quantize() for real values");
    }
    return QuantizedWeight(numerator);
}

QuantizedWeight quantize(double value) {
    if (!(std::abs(value) <= 1.0 + 1.0 / 16.0)) {
        throw RangeError("value " + std::to_string(value) + " outside [-1.0625, 1.0625]");
    }
    // std::round is half-away-from-zero.
    const auto n = static_cast<int>(std::round(value * QuantizedWeight::kDenominator));
    return QuantizedWeight::from_numerator(std::clamp(n, -8, 8));
}

std::string Energy::to_fraction() const {
    const std::int64_t g = std::gcd(std::abs(eighths), std::int64_t{8});
    const std::int64_t num = eighths / (g == 0 ? 1 : g);
    const std::int64_t den = 8 / (g == 0 ? 8 : g);
    if (eighths == 0) return "0";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

void IsingProblem::set_h(int node, QuantizedWeight w) {
    if (node < 0 || static_cast<std::size_t>(node) >= num_nodes) {
        throw LookupError("h on unknown node " + std::to_string(node));
    }
    h[node] = w;
}

void IsingProblem::set_J(int a, int b, QuantizedWeight w) {
    if (a == b || a < 0 || b < 0 || static_cast<std::size_t>(a) >= num_nodes ||
        static_cast<std::size_t>(b) >= num_nodes) {
        throw LookupError("J on invalid pair (" + std::to_string(a) + "," + std::to_string(b) +
                          ")");
    }
    J[make_edge(a, b)] = w;
}

QuantizedWeight IsingProblem::coupling(int a, int b) const {
    auto it = J.find(make_edge(a, b));
    return it == J.end() ? QuantizedWeight{} : it->second;
}

void IsingProblem::validate_against(const SimpleGraph& graph) const {
    if (graph.num_vertices() != num_nodes) {
        throw TopologyError("problem has " + std::to_string(num_nodes) + " nodes, graph has " +
                            std::to_string(graph.num_vertices()));
    }
    for (const auto& [e, w] : J) {
        if (!graph.has_edge(e.first, e.second)) {
            throw TopologyError("J on (" + std::to_string(e.first) + "," +
                                std::to_string(e.second) + ") which is not a graph edge");
        }
    }
}

Energy energy(const IsingProblem& problem, const SpinConfig& config) {
    if (config.size() != problem.num_nodes) {
        throw StateError("incomplete config: " + std::to_string(config.size()) + " spins for " +
                         std::to_string(problem.num_nodes) + " nodes");
    }
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (config[i] != 1 && config[i] != -1) {
            throw StateError("incomplete config: node " + std::to_string(i) + " has no spin");
        }
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i < problem.num_nodes; ++i) {
        total += problem.h[i].numerator() * config[i];
    }
    for (const auto& [e, w] : problem.J) {
        total += w.numerator() * config[e.first] * config[e.second];
    }
    return Energy{total};
}

namespace {

struct LocalTerms {
    std::vector<int> h;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, J numerator)
};

LocalTerms local_terms(const IsingProblem& p) {
    LocalTerms t;
    t.h.resize(p.num_nodes);
    t.adj.resize(p.num_nodes);
    for (std::size_t i = 0; i < p.num_nodes; ++i) t.h[i] = p.h[i].numerator();
    for (const auto& [e, w] : p.J) {
        if (w.numerator() == 0) continue;
        t.adj[e.first].emplace_back(e.second, w.numerator());
        t.adj[e.second].emplace_back(e.first, w.numerator());
    }
    return t;
}

// Energy change, in eighths, of flipping spin i.
std::int64_t flip_delta(const LocalTerms& t, const SpinConfig& s, std::size_t i) {
    std::int64_t field = t.h[i];
    for (const auto& [j, w] : t.adj[i]) field += static_cast<std::int64_t>(w) * s[j];
    return -2 * s[i] * field;
}

bool better(Energy e, const SpinConfig& s, Energy best_e, const SpinConfig& best_s) {
    if (e != best_e) return e < best_e;
    return std::lexicographical_compare(s.begin(), s.end(), best_s.begin(), best_s.end());
}

}  // namespace

SolveResult brute_force(const IsingProblem& problem) {
    const std::size_t n = problem.num_nodes;
    if (n > kBruteForceMaxNodes) {
        throw CapacityError("brute force limited to " + std::to_string(kBruteForceMaxNodes) +
                            " nodes, problem has " + std::to_string(n));
    }
    const auto terms = local_terms(problem);
    SpinConfig s(n, -1);
    Energy e = energy(problem, s);

    // Gray-code walk; key = configuration read as a binary number with node 0
    // as most significant bit, which orders configurations lexicographically.
    std::uint64_t key = 0;
    Energy best_e = e;
    std::uint64_t best_key = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t x = 1; x < total; ++x) {
        const int bit = std::countr_zero(x);
        const std::size_t node = n - 1 - static_cast<std::size_t>(bit);
        e.eighths += flip_delta(terms, s, node);
        s[node] = static_cast<Spin>(-s[node]);
        key ^= std::uint64_t{1} << bit;
        if (e < best_e || (e == best_e && key < best_key)) {
            best_e = e;
            best_key = key;
        }
    }

    SolveResult result;
    result.method = SolveMethod::BruteForce;
    result.best_energy = best_e;
    result.best_config.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.best_config[i] = ((best_key >> (n - 1 - i)) & 1u) ? Spin{1} : Spin{-1};
    }
    return result;
}

SolveResult anneal(const IsingProblem& problem, const AnnealOptions& options) {
    if (options.sweeps < 1) {
        throw ParameterError("sweeps must be >= 1, got " + std::to_string(options.sweeps));
    }
    if (options.restarts < 1) {
        throw ParameterError("restarts must be >= 1, got " + std::to_string(options.restarts));
    }
    const std::size_t n = problem.num_nodes;
    const auto terms = local_terms(problem);

    std::int64_t max_field = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t sum = std::abs(terms.h[i]);
        for (const auto& [j, w] : terms.adj[i]) sum += std::abs(w);
        max_field = std::max(max_field, sum);
    }
    const double t_cold = 1.0 / 64.0;
    const double t_hot = std::max(2.0 * static_cast<double>(max_field) / 8.0, t_cold);
    std::vector<double> schedule(static_cast<std::size_t>(options.sweeps));
    for (int k = 0; k < options.sweeps; ++k) {
        const double frac = options.sweeps == 1 ? 1.0 : static_cast<double>(k) / (options.sweeps - 1);
        schedule[k] = t_hot * std::pow(t_cold / t_hot, frac);
    }

    SolveResult result;
    result.method = SolveMethod::Anneal;
    result.seed = options.seed;
    bool have_best = false;

    for (int r = 0; r < options.restarts; ++r) {
        std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(r));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        SpinConfig s(n, 1);
        if (r > 0) {
            for (auto& spin : s) spin = (rng() & 1u) ? Spin{1} : Spin{-1};
        }
        Energy e = energy(problem, s);
        SpinConfig best_s = s;
        Energy best_e = e;
        for (double temperature : schedule) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t delta = flip_delta(terms, s, i);
                const double d = static_cast<double>(delta) / 8.0;
                if (delta <= 0 || uniform(rng) < std::exp(-d / temperature)) {
                    s[i] = static_cast<Spin>(-s[i]);
                    e.eighths += delta;
                    if (better(e, s, best_e, best_s)) {
                        best_e = e;
                        best_s = s;
                    }
                }
            }
        }
        if (!have_best || better(best_e, best_s, result.best_energy, result.best_config)) {
            result.best_energy = best_e;
            result.best_config = best_s;
            have_best = true;
        }
    }
    return result;
}

namespace {

// Splits a numerator over `parts` members, truncating toward zero and giving
// the remainder to the first member, so the parts always sum to `numerator`.
std::vector<int> split_numerator(int numerator, std::size_t parts) {
    std::vector<int> out(parts, 0);
    if (parts == 0) return out;
    const int k = static_cast<int>(parts);
    const int base = numerator / k;
    std::fill(out.begin(), out.end(), base);
    out[0] += numerator - base * k;
    return out;
}

}  // namespace

IsingProblem embed_problem(const IsingProblem& logical, const Embedding& embedding,
                           QuantizedWeight chain_weight) {
    if (chain_weight.numerator() >= 0) {
        throw ParameterError("chain weight must be ferromagnetic (< 0), got " +
                             std::to_string(chain_weight.value()));
    }
    if (logical.num_nodes != embedding.chains.size()) {
        throw ParameterError("logical problem has " + std::to_string(logical.num_nodes) +
                             " nodes but embedding has " +
                             std::to_string(embedding.chains.size()) + " chains");
    }
    IsingProblem physical(embedding.spec.num_qubits());
    for (std::size_t i = 0; i < logical.num_nodes; ++i) {
        const Chain& chain = embedding.chain(static_cast<int>(i));
        for (const auto& [a, b] : chain.intra) physical.set_J(a, b, chain_weight);
        const auto parts = split_numerator(logical.h[i].numerator(), chain.qubits.size());
        for (std::size_t q = 0; q < parts.size(); ++q) {
            physical.set_h(chain.qubits[q], QuantizedWeight::from_numerator(parts[q]));
        }
    }
    for (const auto& [e, w] : logical.J) {
        if (w.numerator() == 0) continue;
        auto it = embedding.inter.find(e);
        if (it == embedding.inter.end() || it->second.empty()) {
            throw TopologyError("no inter-chain coupler for logical pair (" +
                                std::to_string(e.first) + "," + std::to_string(e.second) + ")");
        }
        const auto parts = split_numerator(w.numerator(), it->second.size());
        for (std::size_t c = 0; c < parts.size(); ++c) {
            physical.set_J(it->second[c].first, it->second[c].second,
                           QuantizedWeight::from_numerator(parts[c]));
        }
    }
    return physical;
}

DecodeResult decode(const SpinConfig& physical, const Embedding& embedding) {
    std::vector<const Chain*> ordered(embedding.chains.size(), nullptr);
    for (const auto& chain : embedding.chains) {
        if (chain.logical_id < 0 || static_cast<std::size_t>(chain.logical_id) >= ordered.size()) {
            throw LookupError("logical id " + std::to_string(chain.logical_id) +
                              " outside [0, chain count)");
        }
        ordered[chain.logical_id] = &chain;
    }
    DecodeResult result;
    result.logical.resize(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        int up = 0;
        int down = 0;
        for (int q : ordered[i]->qubits) {
            if (q < 0 || static_cast<std::size_t>(q) >= physical.size()) {
                throw StateError("physical config does not cover qubit " + std::to_string(q));
            }
            (physical[q] > 0 ? up : down)++;
        }
        result.logical[i] = up > down ? Spin{1} : Spin{-1};
        if (up > 0 && down > 0) result.broken_chains.push_back(static_cast<int>(i));
    }
    return result;
}

}  // namespace qactl
