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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "qactl/address_fabric.hpp"
#include "qactl/error.hpp"

using namespace qactl;

namespace {

constexpr double kPhi0 = 2.067833848e-15;

const AddressFabric& c8() {
    static const AddressFabric f = build_fabric(8, 4);
    return f;
}

// Line assignment written out from the layout rules, independent of the
// library's bookkeeping.
DacAddress expected_address(const DacSlot& s, int n, int m) {
    const int p = m + 1;
    DacAddress a;
    a.pwr_domain = (s.tile_row / 2) * (n / 2) + s.tile_col / 2;
    a.trig_line = p * (s.tile_row % 2) + s.plaquette_row;
    a.addr_line = 3 * p * (s.tile_col % 2) + 3 * s.plaquette_col + s.position;
    return a;
}

struct Rig {
    DacDesign design = programming_design();
    CriticalLine line{PulseSourceParams{}};
    double span = loop_current_span(design);
    BiasLevels levels = find_operating_point(line, 45.0, span).value();
    PulseProgrammer prog{line, levels, span};
};

const Rig& rig() {
    static const Rig r;
    return r;
}

}  // namespace

TEST_CASE("reference fabric counts") {
    const auto& f = c8();
    CHECK(f.slots_per_tile() == 72);
    CHECK(f.num_slots() == 4608);
    CHECK(f.num_pwr_domains() == 16);
    CHECK(f.num_addr_lines() == 30);
    CHECK(f.num_trig_lines() == 10);
    CHECK(f.total_lines() == 56);

    std::map<SlotRole, int> per_role;
    for (const auto& s : f.slots())
        if (s.tile_row == 3 && s.tile_col == 4) ++per_role[s.role];
    CHECK(per_role[SlotRole::QubitControl] == 48);
    CHECK(per_role[SlotRole::InternalCoupler] == 16);
    CHECK(per_role[SlotRole::ExternalCoupler] == 8);
    CHECK(4608 * 2 == 9216);
}

TEST_CASE("small fabric counts") {
    const auto f = build_fabric(2, 4);
    CHECK(f.num_slots() == 288);
    CHECK(f.num_pwr_domains() == 1);
    CHECK(f.total_lines() == 41);
}

TEST_CASE("construction preconditions") {
    CHECK_THROWS_AS(build_fabric(7, 4), ConfigError);
    CHECK_THROWS_AS(build_fabric(0, 4), ConfigError);
    CHECK_THROWS_AS(build_fabric(2, 0), ConfigError);
    CHECK_THROWS_AS((void)c8().slot(4608), LookupError);
    CHECK_THROWS_AS((void)c8().slot(-1), LookupError);
    CHECK_THROWS_AS((void)c8().slot_at(0, 0, 4, 4, 0), LookupError);
    CHECK_THROWS_AS((void)c8().activate({16, 0, 0}), RangeError);
    CHECK_THROWS_AS((void)c8().activate({0, 30, 0}), RangeError);
    CHECK_THROWS_AS((void)c8().activate({0, 0, -1}), RangeError);
}

TEST_CASE("every tile has one empty plaquette") {
    const auto& f = c8();
    std::map<std::pair<int, int>, std::set<std::pair<int, int>>> used;
    for (const auto& s : f.slots())
        used[{s.tile_row, s.tile_col}].insert({s.plaquette_row, s.plaquette_col});
    CHECK(used.size() == 64);
    for (const auto& [tile, plaq] : used) {
        CHECK(plaq.size() == 24);
        CHECK_FALSE(plaq.contains({4, 4}));
    }
}

TEST_CASE("line assignment follows the layout") {
    for (auto [n, m] : {std::pair{8, 4}, std::pair{2, 4}, std::pair{4, 2}, std::pair{6, 3}}) {
        const auto f = build_fabric(n, m);
        for (const auto& s : f.slots()) {
            REQUIRE(f.address_of(s) == expected_address(s, n, m));
        }
    }
}

TEST_CASE("activation is unique over every triple") {
    const auto& f = c8();
    int hit = 0, empty = 0;
    std::vector<int> times(f.num_slots(), 0);
    for (int p = 0; p < 16; ++p)
        for (int a = 0; a < 30; ++a)
            for (int t = 0; t < 10; ++t) {
                const auto s = f.activate({p, a, t});
                if (!s) {
                    ++empty;
                    continue;
                }
                ++hit;
                ++times[*s];
                // The slot's own lines must be exactly this triple.
                REQUIRE(expected_address(f.slot(*s), 8, 4) == DacAddress{p, a, t});
                // And it is the only slot touched by all three lines.
                const auto bp = f.touched_by(p, std::nullopt, std::nullopt);
                const auto ba = f.touched_by(std::nullopt, a, std::nullopt);
                const auto bt = f.touched_by(std::nullopt, std::nullopt, t);
                std::set<int> sp(bp.begin(), bp.end()), sa(ba.begin(), ba.end());
                int all3 = 0;
                for (int x : bt)
                    if (sp.contains(x) && sa.contains(x)) ++all3;
                if (p == 0 && a < 3) REQUIRE(all3 == 1);
            }
    CHECK(hit == 4608);
    CHECK(empty == 192);
    for (int c : times) REQUIRE(c == 1);
}

TEST_CASE("round trip and domain translation") {
    const auto& f = c8();
    for (const auto& s : f.slots()) REQUIRE(f.activate(f.address_of(s)) == s.index);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dp(0, 15), da(0, 29), dt(0, 9);
    for (int i = 0; i < 500; ++i) {
        const int a = da(rng), t = dt(rng), p1 = dp(rng), p2 = dp(rng);
        const auto s1 = f.activate({p1, a, t});
        const auto s2 = f.activate({p2, a, t});
        REQUIRE(s1.has_value() == s2.has_value());
        if (!s1) continue;
        const auto &x = f.slot(*s1), &y = f.slot(*s2);
        CHECK(x.tile_row % 2 == y.tile_row % 2);
        CHECK(x.tile_col % 2 == y.tile_col % 2);
        CHECK(x.plaquette_row == y.plaquette_row);
        CHECK(x.plaquette_col == y.plaquette_col);
        CHECK(x.position == y.position);
        CHECK(x.role == y.role);
        CHECK((x.tile_row / 2) * 4 + x.tile_col / 2 == p1);
        CHECK((y.tile_row / 2) * 4 + y.tile_col / 2 == p2);
    }
}

TEST_CASE("slots cover every qubit and coupler once") {
    const auto& f = c8();
    const auto g = build_chimera(f.spec());
    std::map<Edge, int> coupler_hits;
    std::vector<int> qubit_hits(g.num_qubits(), 0);
    int boundary = 0;
    for (const auto& s : f.slots()) {
        if (s.role == SlotRole::QubitControl) {
            ++qubit_hits[s.qubit];
        } else if (s.coupler) {
            ++coupler_hits[*s.coupler];
            CHECK(f.coupler_slot(s.coupler->first, s.coupler->second) == s.index);
        } else {
            CHECK(s.role == SlotRole::ExternalCoupler);
            CHECK_FALSE(s.has_target());
            ++boundary;
        }
    }
    for (int q = 0; q < g.num_qubits(); ++q) {
        REQUIRE(qubit_hits[q] == 6);
        REQUIRE(f.control_slots(q).size() == 6u);
    }
    CHECK(coupler_hits.size() == g.couplers().size());
    for (const auto& c : g.couplers()) REQUIRE(coupler_hits[{std::min(c.u, c.v), std::max(c.u, c.v)}] == 1);
    // 8 tiles on each of the bottom and right edges, 4 shores each.
    CHECK(boundary == 64);
    CHECK_THROWS_AS((void)f.coupler_slot(0, 1), LookupError);
}

TEST_CASE("line budget") {
    CHECK(line_budget(4608).lower_bound == 50);
    CHECK(line_budget(4608).reference_actual == 56);
    CHECK(line_budget(1).lower_bound == 3);
    CHECK(line_budget(1000).lower_bound == 30);
    CHECK(line_budget(8).lower_bound == 6);
    CHECK_THROWS_AS(line_budget(0), RangeError);
    // Floating cube roots against an integer search.
    for (std::int64_t n = 1; n <= 5000; n += 37) {
        // smallest L with L^3 >= 27 n
        std::int64_t L = 0;
        while (L * L * L < 27 * n) ++L;
        REQUIRE(line_budget(n).lower_bound == L);
    }
}

TEST_CASE("compile examples") {
    const auto& f = c8();
    const DacDesign d = reference_design();

    const auto empty = compile_program(f, {}, d);
    REQUIRE(empty.events.size() == 1);
    CHECK(empty.events[0].kind == EventKind::Reset);
    CHECK(empty.num_pulse_events() == 0);
    CHECK(compile_program(f, {{5, {0, 0}}, {9, {0, 0}}}, d) == empty);

    const auto seq = compile_program(f, {{100, {-3, 5}}}, d);
    REQUIRE(seq.num_pulse_events() == 2);
    const auto& lsd = seq.events[1];
    const auto& msd = seq.events[2];
    CHECK(lsd.pulses == 3);
    CHECK(msd.pulses == 5);
    CHECK(lsd.pwr_sign == -msd.pwr_sign);
    CHECK(lsd.polarity == 1);
    CHECK(msd.polarity == -1);
    const DacAddress a = f.address_of(100);
    for (const auto* e : {&lsd, &msd}) {
        CHECK(e->pwr_domain == a.pwr_domain);
        CHECK(e->addr_line == a.addr_line);
        CHECK(e->trig_line == a.trig_line);
    }
    CHECK_NOTHROW(validate_sequence(f, seq));

    CHECK_THROWS_AS(compile_program(f, {{0, {17, 0}}}, d), CapacityError);
    CHECK_THROWS_AS(compile_program(f, {{0, {0, -17}}}, d), CapacityError);
    CHECK_THROWS_AS(compile_program(f, {{4608, {1, 0}}}, d), LookupError);

    // Initial states size the reset.
    const SlotStates init{{1, {-4, 2}}, {2, {3, 0}}};
    CHECK(compile_program(f, {}, d, &init).events[0].reset_sfq == 9);
}

TEST_CASE("malformed sequences are rejected") {
    const auto& f = c8();
    ProgramSequence s;
    s.events.push_back({EventKind::Pulse, 16, 1, 0, 0, 1, 1, 0});
    CHECK_THROWS_AS(validate_sequence(f, s), ParameterError);
    s.events = {{EventKind::Pulse, 0, 1, 0, 0, 1, 0, 0}};
    CHECK_THROWS_AS(validate_sequence(f, s), ParameterError);
    s.events = {{EventKind::Pulse, 0, 2, 0, 0, 1, 1, 0}};
    CHECK_THROWS_AS(validate_sequence(f, s), ParameterError);
}

TEST_CASE("simulate reproduces the single-slot example") {
    const auto& r = rig();
    const auto& f = c8();
    const auto seq = compile_program(f, {{100, {-3, 5}}}, r.design);
    const auto out = simulate(f, seq, r.design, r.prog, r.line);
    REQUIRE(out.size() == 4608);
    for (std::size_t i = 0; i < out.size(); ++i)
        REQUIRE(out[i] == (i == 100 ? DacState{-3, 5} : DacState{}));

    const ProgramSequence reset_only{{{EventKind::Reset}}};
    std::vector<DacState> dirty(4608, DacState{2, -1});
    for (const auto& s : simulate(f, reset_only, r.design, r.prog, r.line, &dirty))
        REQUIRE(s == DacState{});
}

TEST_CASE("full-chip replay with non-disturbance") {
    const auto& r = rig();
    const auto& f = c8();
    std::mt19937_64 rng(2026);
    const int cap = r.design.maxsfq_lsd;
    std::uniform_int_distribution<int> d(-cap, cap);

    SlotStates targets;
    std::vector<DacState> initial(f.num_slots());
    for (int i = 0; i < int(f.num_slots()); ++i) {
        targets[i] = {d(rng), d(rng)};
        initial[i] = {d(rng), d(rng)};
    }
    SlotStates init_map;
    for (int i = 0; i < int(f.num_slots()); ++i) init_map[i] = initial[i];
    const auto seq = compile_program(f, targets, r.design, &init_map);

    std::int64_t expected_reset = 0;
    for (const auto& s : initial) expected_reset += std::abs(s.m_lsd) + std::abs(s.m_msd);
    CHECK(seq.events[0].reset_sfq == expected_reset);

    int disturbed = 0;
    std::size_t changes = 0;
    const auto out = simulate(
        f, seq, r.design, r.prog, r.line, &initial,
        [&](std::size_t ev, int slot, const DacState& before, const DacState& after) {
            ++changes;
            const auto& e = seq.events[ev];
            if (e.kind == EventKind::Reset) return;
            const DacAddress a = f.address_of(slot);
            const bool addressed = e.pwr_domain == a.pwr_domain && e.addr_line == a.addr_line &&
                                   e.trig_line == a.trig_line;
            const int dl = std::abs(after.m_lsd - before.m_lsd);
            const int dm = std::abs(after.m_msd - before.m_msd);
            if (!addressed || dl + dm != 1) ++disturbed;
        });
    CHECK(disturbed == 0);
    CHECK(changes > 0);
    for (int i = 0; i < int(f.num_slots()); ++i) REQUIRE(out[i] == targets.at(i));
}

TEST_CASE("two-line events change nothing") {
    const auto& r = rig();
    const auto& f = c8();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-r.design.maxsfq_lsd, r.design.maxsfq_lsd);
    std::vector<DacState> initial(f.num_slots());
    for (auto& s : initial) s = {d(rng), d(rng)};

    ProgramSequence seq;
    for (int p = 0; p < 16; p += 5)
        for (int sign : {1, -1})
            for (int pol : {1, -1}) {
                seq.events.push_back({EventKind::Pulse, p, sign, 7, std::nullopt, pol, 3, 0});
                seq.events.push_back({EventKind::Pulse, p, sign, std::nullopt, 4, pol, 3, 0});
                seq.events.push_back({EventKind::Pulse, std::nullopt, sign, 7, 4, pol, 3, 0});
                seq.events.push_back({EventKind::Pulse, p, sign, std::nullopt, std::nullopt, pol, 3, 0});
            }
    int changed = 0;
    const auto out = simulate(f, seq, r.design, r.prog, r.line, &initial,
                              [&](std::size_t, int, const DacState&, const DacState&) { ++changed; });
    CHECK(changed == 0);
    CHECK(out == initial);
}

TEST_CASE("simulate refuses levels that fail margins") {
    const auto& f = build_fabric(2, 4);
    const auto& r = rig();
    const ProgramSequence seq{{{EventKind::Reset}}};
    CHECK_THROWS_AS(simulate(f, seq, r.design, PulseSourceParams{}, BiasLevels{45.0, 0.0, 0.0}),
                    MarginError);
    CHECK_THROWS_AS(simulate(f, seq, reference_design(), PulseSourceParams{}, r.levels),
                    MarginError);
    CHECK_NOTHROW(simulate(f, seq, r.design, PulseSourceParams{}, r.levels));
}

TEST_CASE("energy accounting") {
    CHECK(energy_per_sfq(55.0) == doctest::Approx(2 * 55e-6 * kPhi0).epsilon(1e-12));
    CHECK(energy_per_sfq(55.0) * 1e18 == doctest::Approx(0.2275).epsilon(1e-3));
    CHECK(std::abs(energy_per_sfq(55.0) * 1e18 - 0.22) / 0.22 < 0.05);

    const double full = full_reprogram_energy(9216, 16, 55.0);
    CHECK(full == doctest::Approx(9216.0 * 32 * 2 * 55e-6 * kPhi0).epsilon(1e-12));
    CHECK(full * 1e15 == doctest::Approx(67.08).epsilon(1e-3));
    CHECK(std::abs(full * 1e15 - 65.0) / 65.0 < 0.05);

    const ProgramSequence none;
    CHECK(energy_of(none, 55.0).total_J == 0.0);
    CHECK_THROWS_AS(energy_of(none, 0.0), ParameterError);

    const auto& f = c8();
    const DacDesign d = reference_design();
    const auto s = compile_program(f, {{0, {-3, 5}}, {4607, {16, -16}}}, d);
    const auto rep = energy_of(s, 55.0);
    CHECK(rep.total_sfq == 3 + 5 + 16 + 16);
    CHECK(rep.total_J == doctest::Approx(40 * energy_per_sfq(55.0)));
    CHECK(rep.per_domain_sfq.at(0) == 8);
    CHECK(rep.per_domain_sfq.at(15) == 32);
}

TEST_CASE("energy is additive over concatenation") {
    const auto& f = c8();
    const DacDesign d = reference_design();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> slot(0, 4607), v(-16, 16);
    for (int trial = 0; trial < 50; ++trial) {
        SlotStates a, b, ia;
        for (int i = 0; i < 20; ++i) {
            a[slot(rng)] = {v(rng), v(rng)};
            b[slot(rng)] = {v(rng), v(rng)};
            ia[slot(rng)] = {v(rng), v(rng)};
        }
        const auto s1 = compile_program(f, a, d, &ia);
        const auto s2 = compile_program(f, b, d, &a);
        const auto e1 = energy_of(s1, 55.0), e2 = energy_of(s2, 55.0);
        const auto e = energy_of(concat(s1, s2), 55.0);
        REQUIRE(e.total_sfq == e1.total_sfq + e2.total_sfq);
        REQUIRE(e.total_J == doctest::Approx(e1.total_J + e2.total_J).epsilon(1e-12));
    }
}

TEST_CASE("problem weights round trip through slot states") {
    const auto& r = rig();
    const auto f = build_fabric(2, 4);
    const ChimeraSpec spec{1, 1, 4};
    const auto g = build_chimera(spec);
    IsingProblem p(g.num_qubits());
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> v(-2, 2);
    for (int i = 0; i < int(p.num_nodes); ++i) p.set_h(i, QuantizedWeight::from_numerator(v(rng)));
    for (const auto& c : g.couplers()) p.set_J(c.u, c.v, QuantizedWeight::from_numerator(v(rng)));

    const auto targets = problem_targets(f, r.design, p, spec, 17.5);
    const auto seq = compile_program(f, targets, r.design);
    const auto states = simulate(f, seq, r.design, r.prog, r.line);
    const auto back = read_back(f, r.design, states, p, spec, 17.5);
    CHECK(back.h == p.h);
    CHECK(back.J == p.J);
}
