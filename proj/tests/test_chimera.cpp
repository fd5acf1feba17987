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

#include <doctest.h>

#include <random>
#include <set>

#include "qactl/chimera.hpp"
#include "qactl/error.hpp"

using namespace qactl;

namespace {

// Adjacency straight from the tile definition, checked pair by pair.
bool oracle_adjacent(const QubitId& a, const QubitId& b) {
    if (a.tile_row == b.tile_row && a.tile_col == b.tile_col)
        return a.orientation != b.orientation;
    if (a.orientation != b.orientation || a.shore != b.shore) return false;
    if (a.orientation == Orientation::Horizontal)
        return a.tile_row == b.tile_row && std::abs(a.tile_col - b.tile_col) == 1;
    return a.tile_col == b.tile_col && std::abs(a.tile_row - b.tile_row) == 1;
}

}  // namespace

TEST_CASE("C_8 has 512 qubits and 1472 couplers") {
    const HardwareGraph g = build_chimera({8, 8, 4});
    CHECK(g.num_qubits() == 512);
    CHECK(g.couplers().size() == 1472);
    CHECK(g.count(CouplerKind::Internal) == 1024);
    CHECK(g.count(CouplerKind::External) == 448);
}

TEST_CASE("unit tile is K_{4,4}") {
    const HardwareGraph g = build_chimera({1, 1, 4});
    CHECK(g.num_qubits() == 8);
    CHECK(g.couplers().size() == 16);
    for (int q = 0; q < 8; ++q) CHECK(g.degree(q) == 4);
    CHECK(g.count(CouplerKind::External) == 0);
}

TEST_CASE("2x3 grid with m=2") {
    const HardwareGraph g = build_chimera({2, 3, 2});
    CHECK(g.num_qubits() == 24);
    CHECK(g.count(CouplerKind::Internal) == 24);
    // 2 * (2*2 + 3*1)
    CHECK(g.count(CouplerKind::External) == 14);
}

TEST_CASE("edge set matches pairwise definition on random grids") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dim(1, 5), mm(1, 5);
    for (int trial = 0; trial < 25; ++trial) {
        const ChimeraSpec spec{dim(rng), dim(rng), mm(rng)};
        const HardwareGraph g = build_chimera(spec);
        REQUIRE(g.num_qubits() == spec.num_qubits());
        std::size_t expected = 0;
        const int n = static_cast<int>(g.num_qubits());
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const bool adj = oracle_adjacent(qubit_from_index(spec, u), qubit_from_index(spec, v));
                expected += adj;
                CHECK(g.has_edge(u, v) == adj);
            }
        }
        CHECK(g.couplers().size() == expected);
        CHECK(g.count(CouplerKind::Internal) == spec.num_internal_couplers());
        CHECK(g.count(CouplerKind::External) == spec.num_external_couplers());
    }
}

TEST_CASE("degree is m internal plus at most two external") {
    const ChimeraSpec spec{4, 4, 4};
    const HardwareGraph g = build_chimera(spec);
    for (int q = 0; q < static_cast<int>(g.num_qubits()); ++q) {
        CHECK(g.degree(q) >= 4);
        CHECK(g.degree(q) <= 6);
        auto nb = g.neighbors(q);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
    }
    CHECK(g.is_connected());
}

TEST_CASE("linear index round trip and layout") {
    const ChimeraSpec spec{3, 5, 4};
    std::set<int> seen;
    for (int i = 0; i < static_cast<int>(spec.num_qubits()); ++i) {
        const QubitId q = qubit_from_index(spec, i);
        CHECK(qubit_linear_index(spec, q) == i);
        seen.insert(i);
    }
    CHECK(seen.size() == spec.num_qubits());
    // ((r * C + c) * 2 + o) * m + s
    CHECK(qubit_linear_index(spec, {1, 2, Orientation::Vertical, 3}) == ((1 * 5 + 2) * 2 + 1) * 4 + 3);
}

TEST_CASE("couplers are ordered and typed") {
    const HardwareGraph g = build_chimera({2, 2, 4});
    for (const auto& c : g.couplers()) {
        CHECK(c.u < c.v);
        const QubitId a = qubit_from_index(g.spec(), c.u);
        const QubitId b = qubit_from_index(g.spec(), c.v);
        const bool same_tile = a.tile_row == b.tile_row && a.tile_col == b.tile_col;
        CHECK((c.kind == CouplerKind::Internal) == same_tile);
        CHECK(g.coupler(c.v, c.u) == c);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(build_chimera({0, 1, 4}), ParameterError);
    CHECK_THROWS_AS(build_chimera({1, 1, 0}), ParameterError);
    const ChimeraSpec spec{1, 1, 4};
    CHECK_THROWS_AS(qubit_linear_index(spec, {1, 0, Orientation::Horizontal, 0}), RangeError);
    CHECK_THROWS_AS(qubit_linear_index(spec, {0, 0, Orientation::Horizontal, 4}), RangeError);
    CHECK_THROWS_AS(qubit_from_index(spec, 8), RangeError);
    const HardwareGraph g = build_chimera(spec);
    CHECK_THROWS_AS((void)g.neighbors(8), LookupError);
    CHECK_THROWS_AS((void)g.coupler(0, 1), LookupError);
    CHECK_THROWS_AS((void)g.neighbors(QubitId{0, 1, Orientation::Horizontal, 0}), Error);
}
