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

#include <cmath>
#include <random>

#include "qactl/error.hpp"
#include "qactl/ising.hpp"

using namespace qactl;

namespace {

QuantizedWeight w(int n) { return QuantizedWeight::from_numerator(n); }

// Energy in eighths from the definition, pair by pair.
std::int64_t oracle_energy(const IsingProblem& p, const SpinConfig& s) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < p.num_nodes; ++i) {
        e += p.h[i].numerator() * s[i];
        for (std::size_t j = i + 1; j < p.num_nodes; ++j)
            e += p.coupling(static_cast<int>(i), static_cast<int>(j)).numerator() * s[i] * s[j];
    }
    return e;
}

SpinConfig config_of(std::uint32_t bits, std::size_t n) {
    // Bit (n-1-i) set means node i is +1, so counting up walks the
    // lexicographic order with node 0 most significant.
    SpinConfig s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> (n - 1 - i)) & 1u ? 1 : -1;
    return s;
}

std::pair<std::int64_t, SpinConfig> oracle_minimum(const IsingProblem& p) {
    std::int64_t best = 0;
    SpinConfig arg;
    for (std::uint32_t b = 0; b < (1u << p.num_nodes); ++b) {
        const SpinConfig s = config_of(b, p.num_nodes);
        const std::int64_t e = oracle_energy(p, s);
        if (arg.empty() || e < best) {
            best = e;
            arg = s;
        }
    }
    return {best, arg};
}

IsingProblem random_problem(std::size_t n, double density, int max_num, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::bernoulli_distribution keep(density);
    IsingProblem p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.set_h(static_cast<int>(i), w(num(rng)));
        for (std::size_t j = i + 1; j < n; ++j)
            if (keep(rng)) p.set_J(static_cast<int>(i), static_cast<int>(j), w(num(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("quantized weights") {
    CHECK(w(8).value() == 1.0);
    CHECK(w(-7).value() == -0.875);
    CHECK_THROWS_AS(w(9), QuantizationError);
    CHECK_THROWS_AS(w(-9), QuantizationError);
}

TEST_CASE("quantize picks the nearest of the 17 levels") {
    CHECK(quantize(0.5).numerator() == 4);
    CHECK(quantize(0.4999).numerator() == 4);
    CHECK(quantize(1.0 / 16).numerator() == 1);
    CHECK(quantize(-1.0 / 16).numerator() == -1);
    CHECK(quantize(1.0625).numerator() == 8);
    CHECK_THROWS_AS(quantize(1.07), RangeError);
    CHECK_THROWS_AS(quantize(NAN), RangeError);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0625, 1.0625);
    for (int t = 0; t < 2000; ++t) {
        const double x = u(rng);
        int best = -8;
        for (int n = -8; n <= 8; ++n)
            if (std::abs(x - n / 8.0) < std::abs(x - best / 8.0)) best = n;
        CHECK(quantize(x).numerator() == best);
        CHECK(std::abs(quantize(x).value() - x) <= 1.0 / 16 + 1e-15);
    }
}

TEST_CASE("energy small cases") {
    IsingProblem empty(3);
    CHECK(energy(empty, {1, -1, 1}).eighths == 0);
    IsingProblem one(1);
    one.set_h(0, w(-8));
    CHECK(energy(one, {1}).value() == -1.0);
    IsingProblem two(2);
    two.set_J(0, 1, w(-8));
    CHECK(energy(two, {1, 1}).value() == -1.0);
    CHECK(energy(two, {1, -1}).value() == 1.0);
    CHECK_THROWS_AS(energy(two, {1}), StateError);
    CHECK_THROWS_AS(energy(two, {1, 0}), StateError);
}

TEST_CASE("energy fractions") {
    CHECK(Energy{-12}.to_fraction() == "-3/2");
    CHECK(Energy{16}.to_fraction() == "2");
    CHECK(Energy{0}.to_fraction() == "0");
    CHECK(Energy{3}.to_fraction() == "3/8");
}

TEST_CASE("energy matches the pairwise sum on random problems") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const IsingProblem p = random_problem(10, 0.4, 8, rng);
        std::uniform_int_distribution<std::uint32_t> bits(0, 1023);
        const SpinConfig s = config_of(bits(rng), 10);
        CHECK(energy(p, s).eighths == oracle_energy(p, s));
    }
}

TEST_CASE("spin-flip symmetry without fields") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        IsingProblem p = random_problem(9, 0.5, 8, rng);
        for (auto& h : p.h) h = w(0);
        std::uniform_int_distribution<std::uint32_t> bits(0, 511);
        SpinConfig s = config_of(bits(rng), 9);
        SpinConfig flipped = s;
        for (auto& x : flipped) x = static_cast<Spin>(-x);
        CHECK(energy(p, s) == energy(p, flipped));
    }
}

TEST_CASE("brute force small cases") {
    IsingProblem one(1);
    one.set_h(0, w(8));
    const auto r = brute_force(one);
    CHECK(r.best_config == SpinConfig{-1});
    CHECK(r.best_energy.value() == -1.0);

    IsingProblem ring(8);
    for (int i = 0; i < 8; ++i) ring.set_J(i, (i + 1) % 8, w(-8));
    const auto rr = brute_force(ring);
    CHECK(rr.best_energy.value() == -8.0);
    CHECK(rr.best_config == SpinConfig(8, -1));

    IsingProblem kb(8);
    for (int a = 0; a < 4; ++a)
        for (int b = 4; b < 8; ++b) kb.set_J(a, b, w(-8));
    CHECK(brute_force(kb).best_energy.value() == -16.0);
}

TEST_CASE("brute force equals plain enumeration, including tie-break") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 150; ++t) {
        std::uniform_int_distribution<int> size(1, 11);
        const IsingProblem p = random_problem(static_cast<std::size_t>(size(rng)), 0.5, 2, rng);
        const auto [e, cfg] = oracle_minimum(p);
        const auto r = brute_force(p);
        CHECK(r.best_energy.eighths == e);
        CHECK(r.best_config == cfg);
        CHECK(energy(p, r.best_config) == r.best_energy);
    }
    CHECK_THROWS_AS(brute_force(IsingProblem(25)), CapacityError);
}

TEST_CASE("anneal is deterministic and never beats the minimum") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const IsingProblem p = random_problem(14, 0.4, 8, rng);
        const AnnealOptions opt{200, 4, 99};
        const auto a = anneal(p, opt);
        CHECK(a == anneal(p, opt));
        CHECK(a.best_energy >= brute_force(p).best_energy);
        CHECK(a.best_energy <= energy(p, SpinConfig(14, 1)));
        CHECK(energy(p, a.best_config) == a.best_energy);
        CHECK(a.method == SolveMethod::Anneal);
        CHECK(a.seed == 99);
    }
}

TEST_CASE("anneal solves a ferromagnetic chain") {
    IsingProblem chain(12);
    for (int i = 0; i + 1 < 12; ++i) chain.set_J(i, i + 1, w(-8));
    const auto a = anneal(chain, {});
    CHECK(a.best_energy == brute_force(chain).best_energy);
    CHECK(a.best_energy.value() == -11.0);
}

TEST_CASE("embedding K_4 into C_1") {
    const Embedding emb = embed_complete(4, {1, 1, 4});
    IsingProblem logical(4);
    for (int i = 0; i < 4; ++i) {
        logical.set_h(i, w(i % 2 ? 2 : -2));
        for (int j = i + 1; j < 4; ++j) logical.set_J(i, j, w((i + j) % 2 ? 2 : -2));
    }
    const IsingProblem phys = embed_problem(logical, emb, w(-8));
    CHECK(phys.num_nodes == 8);
    for (const auto& c : emb.chains) {
        for (const auto& e : c.intra) CHECK(phys.coupling(e.first, e.second).numerator() == -8);
        int sum = 0;
        for (int q : c.qubits) sum += phys.h[q].numerator();
        CHECK(sum == logical.h[c.logical_id].numerator());
    }
    for (const auto& [pair, edges] : emb.inter) {
        int sum = 0;
        for (const auto& e : edges) sum += phys.coupling(e.first, e.second).numerator();
        CHECK(sum == logical.coupling(pair.first, pair.second).numerator());
    }
}

TEST_CASE("weight splitting") {
    const Embedding emb = embed_complete(4, {1, 1, 4});
    IsingProblem logical(4);
    logical.set_J(0, 1, w(4));
    logical.set_h(2, w(3));
    const IsingProblem phys = embed_problem(logical, emb, w(-8));
    for (const auto& e : emb.inter.at({0, 1})) CHECK(phys.coupling(e.first, e.second).numerator() == 2);
    const auto& c2 = emb.chain(2);
    CHECK(phys.h[c2.qubits[0]].numerator() == 2);
    CHECK(phys.h[c2.qubits[1]].numerator() == 1);

    IsingProblem zero(4);
    const IsingProblem pz = embed_problem(zero, emb, w(-8));
    for (const auto& h : pz.h) CHECK(h.numerator() == 0);

    CHECK_THROWS_AS(embed_problem(zero, emb, w(0)), ParameterError);
    CHECK_THROWS_AS(embed_problem(IsingProblem(5), emb, w(-8)), ParameterError);
}

TEST_CASE("decode majority and ties") {
    Embedding emb;
    emb.spec = {1, 1, 4};
    emb.chains = {{0, {0, 1, 2}, {}}, {1, {3, 4}, {}}, {2, {5, 6}, {}}};
    SpinConfig s{1, -1, 1, 1, -1, 1, 1, -1};
    auto d = decode(s, emb);
    CHECK(d.logical == SpinConfig{1, -1, 1});
    CHECK(d.broken_chains == std::vector<int>{0, 1});
    SpinConfig all_up(8, 1);
    d = decode(all_up, emb);
    CHECK_FALSE(d.has_breaks());
    CHECK(d.logical == SpinConfig{1, 1, 1});
}

TEST_CASE("ground states survive embedding for weak logical weights") {
    // Chain bonds of -1 cost 2 per break; logical weights of at most 1/4
    // can never pay that back, so the physical ground state is unbroken.
    const Embedding emb = embed_complete(4, {1, 1, 4});
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const IsingProblem logical = random_problem(4, 1.0, 2, rng);
        const IsingProblem phys = embed_problem(logical, emb, w(-8));
        const auto d = decode(brute_force(phys).best_config, emb);
        CHECK_FALSE(d.has_breaks());
        CHECK(energy(logical, d.logical) == brute_force(logical).best_energy);
    }
}

TEST_CASE("problem topology checks") {
    IsingProblem p(3);
    p.set_J(0, 2, w(1));
    SimpleGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK_THROWS_AS(p.validate_against(path), TopologyError);
    CHECK_NOTHROW(p.validate_against(complete_graph(3)));
    CHECK_THROWS_AS(p.set_h(3, w(1)), LookupError);
    CHECK_THROWS_AS(p.set_J(1, 1, w(1)), Error);
}
