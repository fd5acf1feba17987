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

#include "qactl/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "qactl/address_fabric.hpp"
#include "qactl/chimera.hpp"
#include "qactl/embedding.hpp"
#include "qactl/error.hpp"
#include "qactl/flux_dac.hpp"
#include "qactl/ising.hpp"
#include "qactl/pulse_source.hpp"

namespace qactl {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

ReproRow exact(std::string what, long long expected, long long actual) {
    return {std::move(what), std::to_string(expected), std::to_string(actual), expected == actual};
}

ReproRow close(std::string what, double expected, double actual, double rel, const char* unit) {
    const bool ok = std::abs(actual - expected) <= rel * std::abs(expected);
    return {std::move(what), fmt(expected) + unit, fmt(actual) + unit, ok};
}

// Output flux per eighth of problem weight: full scale 1 maps to 140 mPhi0.
constexpr double kFluxPerEighth = 17.5;

}  // namespace

EndToEndStats run_end_to_end(int problems, std::uint64_t seed) {
    const ChimeraSpec c1{1, 1, 4};
    const Embedding emb = embed_complete(4, c1);
    const AddressFabric fabric = build_fabric(2, 4);
    const DacDesign design = programming_design();
    const CriticalLine line(PulseSourceParams{});
    const double span = loop_current_span(design);
    const auto levels = find_operating_point(line, 45.0, span);
    if (!levels) throw MarginError("no operating point for the programming design");
    const PulseProgrammer prog(line, *levels, span);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> weight(-2, 2);
    EndToEndStats st;
    for (int t = 0; t < problems; ++t) {
        IsingProblem logical(4);
        for (int i = 0; i < 4; ++i) {
            logical.set_h(i, QuantizedWeight::from_numerator(weight(rng)));
            for (int j = i + 1; j < 4; ++j)
                logical.set_J(i, j, QuantizedWeight::from_numerator(weight(rng)));
        }
        const IsingProblem physical =
            embed_problem(logical, emb, QuantizedWeight::from_numerator(-8));
        const auto targets = problem_targets(fabric, design, physical, c1, kFluxPerEighth);
        const auto states = simulate(fabric, compile_program(fabric, targets, design), design, prog, line);
        const IsingProblem programmed = read_back(fabric, design, states, physical, c1, kFluxPerEighth);

        ++st.problems;
        if (programmed.h != physical.h || programmed.J != physical.J) ++st.readback_mismatches;
        const DecodeResult dec = decode(brute_force(programmed).best_config, emb);
        if (dec.has_breaks()) ++st.chain_breaks;
        if (energy(logical, dec.logical) != brute_force(logical).best_energy) ++st.energy_mismatches;
    }
    return st;
}

std::vector<ReproRow> reproduce_table(std::uint64_t seed) {
    std::vector<ReproRow> rows;
    const HardwareGraph c8 = build_chimera({8, 8, 4});
    rows.push_back(exact("C_8 qubits", 512, static_cast<long long>(c8.num_qubits())));
    rows.push_back(exact("C_8 couplers", 1472, static_cast<long long>(c8.couplers().size())));
    rows.push_back(exact("C_8 internal couplers", 1024, static_cast<long long>(c8.count(CouplerKind::Internal))));
    rows.push_back(exact("C_8 external couplers", 448, static_cast<long long>(c8.count(CouplerKind::External))));

    const ChimeraSpec c4{4, 4, 4};
    const Embedding k16 = embed_complete(16, c4);
    const bool verified = verify_embedding(k16, build_chimera(c4), 16).passed;
    rows.push_back({"K_16 in C_4 physical qubits", "80, verified",
                    std::to_string(k16.num_physical_qubits()) + (verified ? ", verified" : ", FAILED"),
                    verified && k16.num_physical_qubits() == 80});

    const DacDesign ref = reference_design();
    rows.push_back(close("W_MSD", 20.0, ref.w_msd, 1e-9, " mPhi0"));
    rows.push_back(close("W_LSD", 1.25, ref.w_lsd, 1e-9, " mPhi0"));
    rows.push_back(close("division ratio", 16.0, ref.division_ratio, 1e-9, ""));
    rows.push_back(exact("MAXSFQ", 16, ref.maxsfq_msd));
    rows.push_back(close("range", 320.0, ref.range, 1e-9, " mPhi0"));
    rows.push_back(close("effective bits", 8.0, ref.effective_bits, 1e-9, ""));

    const CriticalLine line(PulseSourceParams{});
    rows.push_back(close("I_max(0), 55 uA junctions", 110.0, line.at(0.0), 1e-9, " uA"));
    const DacDesign prog = programming_design();
    const auto op = find_operating_point(line, 45.0, loop_current_span(prog));
    rows.push_back({"operating point at PWR 45 uA", "exists",
                    op ? "ADDR " + fmt(op->phi_addr_mphi0, "%.1f") + ", TRIG " +
                             fmt(op->phi_trig_mphi0, "%.1f") + " mPhi0"
                       : "none",
                    op.has_value()});

    const AddressFabric fabric = build_fabric(8, 4);
    rows.push_back(exact("DAC slots", 4608, static_cast<long long>(fabric.num_slots())));
    rows.push_back(exact("PWR domains", 16, fabric.num_pwr_domains()));
    rows.push_back(exact("control lines", 56, fabric.total_lines()));
    rows.push_back(exact("line lower bound", 50, line_budget(4608).lower_bound));

    rows.push_back(close("energy per SFQ", 0.22, energy_per_sfq(55.0) * 1e18, 0.05, " aJ"));
    rows.push_back(close("full reprogram", 65.0, full_reprogram_energy(9216, 16, 55.0) * 1e15, 0.05, " fJ"));

    rows.push_back(close("optimal area split", 0.5, optimal_area_split(), 1e-6, ""));
    rows.push_back(close("area reduction at 36x Jc", 6.0, area_scaling(36.0).reduction, 1e-9, ""));

    const EndToEndStats e2e = run_end_to_end(100, seed);
    rows.push_back({"end-to-end K_4 problems", "100 exact",
                    std::to_string(e2e.problems - e2e.energy_mismatches) + " exact, " +
                        std::to_string(e2e.chain_breaks) + " broken",
                    e2e.ok() && e2e.problems == 100});
    return rows;
}

}  // namespace qactl
