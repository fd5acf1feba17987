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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qactl/embedding.hpp"

namespace qactl {

/// A problem weight restricted to {-1, -7/8, ..., +7/8, +1}.
class QuantizedWeight {
public:
    static constexpr int kDenominator = 8;

    constexpr QuantizedWeight() = default;
    /// Throws QuantizationError unless numerator is in [-8, 8].
    static QuantizedWeight from_numerator(int numerator);

    [[nodiscard]] constexpr int numerator() const noexcept { return numerator_; }
    [[nodiscard]] constexpr double value() const noexcept {
        return static_cast<double>(numerator_) / kDenominator;
    }
    friend constexpr auto operator<=>(QuantizedWeight, QuantizedWeight) = default;

private:
    constexpr explicit QuantizedWeight(int n) : numerator_(n) {}
    int numerator_ = 0;
};

/// Nearest multiple of 1/8, ties away from zero. Inputs beyond 1 + 1/16 in
/// magnitude throw RangeError.
QuantizedWeight quantize(double value);

/// Exact energy. Weights are n/8 and spins are +-1, so every energy is an
/// integer number of eighths.
struct Energy {
    std::int64_t eighths = 0;

    [[nodiscard]] double value() const { return static_cast<double>(eighths) / 8.0; }
    /// Reduced fraction, e.g. "-3/2" or "4".
    [[nodiscard]] std::string to_fraction() const;
    friend constexpr auto operator<=>(const Energy&, const Energy&) = default;
};

using Spin = std::int8_t;
using SpinConfig = std::vector<Spin>;

struct IsingProblem {
    std::size_t num_nodes = 0;
    std::vector<QuantizedWeight> h;                 // size num_nodes
    std::map<Edge, QuantizedWeight> J;              // keys have first < second

    explicit IsingProblem(std::size_t n = 0) : num_nodes(n), h(n) {}

    void set_h(int node, QuantizedWeight w);
    void set_J(int a, int b, QuantizedWeight w);
    [[nodiscard]] QuantizedWeight coupling(int a, int b) const;

    /// Throws TopologyError if some J key is not an edge of graph.
    void validate_against(const SimpleGraph& graph) const;
};

/// Throws StateError when config does not assign +-1 to every node.
Energy energy(const IsingProblem& problem, const SpinConfig& config);

enum class SolveMethod { BruteForce, Anneal };

struct SolveResult {
    SpinConfig best_config;
    Energy best_energy;
    SolveMethod method = SolveMethod::BruteForce;
    std::uint64_t seed = 0;

    friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

inline constexpr std::size_t kBruteForceMaxNodes = 24;

/// Exhaustive minimum. Among equal energies the lexicographically smallest
/// configuration wins (-1 sorts before +1, node 0 first).
SolveResult brute_force(const IsingProblem& problem);

struct AnnealOptions {
    int sweeps = 1000;
    int restarts = 16;
    std::uint64_t seed = 1;
};

/// Single-spin Metropolis with a geometric schedule from
/// 2 * max_i(|h_i| + sum_j |J_ij|) down to 1/64, one sweep per temperature in
/// node order. Restart r uses seed + r; restart 0 starts from all +1, so the
/// result is never worse than that configuration.
SolveResult anneal(const IsingProblem& problem, const AnnealOptions& options);

/// Maps a logical problem onto the chains of an embedding. Intra-chain
/// couplers get chain_weight; h_i and J_ij are split in whole eighths across
/// chain members / inter-chain couplers, the remainder going to the first.
IsingProblem embed_problem(const IsingProblem& logical, const Embedding& embedding,
                           QuantizedWeight chain_weight);

struct DecodeResult {
    SpinConfig logical;
    std::vector<int> broken_chains;  // logical ids with internal disagreement

    [[nodiscard]] bool has_breaks() const { return !broken_chains.empty(); }
};

/// Majority vote per chain; exact ties decode to -1.
DecodeResult decode(const SpinConfig& physical, const Embedding& embedding);

}  // namespace qactl
