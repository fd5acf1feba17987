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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qactl/chimera.hpp"
#include "qactl/flux_dac.hpp"
#include "qactl/ising.hpp"
#include "qactl/pulse_source.hpp"

namespace qactl {

// XYZ addressing. Each tile holds an (m+1) x (m+1) grid of three-DAC
// plaquettes with the corner plaquette left empty. Plaquette (r, c) with
// r, c < m drives V_c control, coupler (H_r, V_c), H_r control. The extra
// row drives the external vertical coupler of shore c between two V_c
// controls; the extra column does the same for horizontal shore r.
//
// Lines: one TRIG per plaquette row, one ADDR per plaquette column and
// position. Tiles in a 2 x 2 power domain use separate banks: tile row parity
// picks the TRIG bank, tile column parity the ADDR bank.

enum class SlotRole : std::uint8_t { QubitControl, InternalCoupler, ExternalCoupler };

std::string to_string(SlotRole r);

struct DacSlot {
    int index = 0;
    int tile_row = 0;
    int tile_col = 0;
    int plaquette_row = 0;
    int plaquette_col = 0;
    int position = 0;
    SlotRole role = SlotRole::QubitControl;
    /// Controlled qubit (QubitControl) as a linear index of the fabric graph.
    int qubit = -1;
    /// Controlled coupler endpoints, u < v; absent for boundary external slots.
    std::optional<Edge> coupler;

    /// False only for external-coupler slots on the grid boundary, which are
    /// addressable but have no coupler to drive.
    [[nodiscard]] bool has_target() const {
        return role == SlotRole::QubitControl || coupler.has_value();
    }
};

struct DacAddress {
    int pwr_domain = 0;
    int addr_line = 0;
    int trig_line = 0;
    friend auto operator<=>(const DacAddress&, const DacAddress&) = default;
};

std::string to_string(const DacAddress& a);

class AddressFabric {
public:
    /// n tiles per side (even), m qubits per shore. ConfigError otherwise.
    AddressFabric(int n_tiles_per_side, int m);

    [[nodiscard]] int tiles_per_side() const noexcept { return n_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] const ChimeraSpec& spec() const noexcept { return spec_; }

    [[nodiscard]] int plaquettes_per_side() const noexcept { return m_ + 1; }
    [[nodiscard]] int slots_per_tile() const noexcept { return 3 * ((m_ + 1) * (m_ + 1) - 1); }
    [[nodiscard]] int num_pwr_domains() const noexcept { return (n_ / 2) * (n_ / 2); }
    [[nodiscard]] int num_addr_lines() const noexcept { return 2 * 3 * (m_ + 1); }
    [[nodiscard]] int num_trig_lines() const noexcept { return 2 * (m_ + 1); }
    [[nodiscard]] int total_lines() const noexcept {
        return num_addr_lines() + num_trig_lines() + num_pwr_domains();
    }

    [[nodiscard]] const std::vector<DacSlot>& slots() const noexcept { return slots_; }
    [[nodiscard]] std::size_t num_slots() const noexcept { return slots_.size(); }
    /// Throws LookupError for an index out of range.
    [[nodiscard]] const DacSlot& slot(int index) const;
    /// Throws LookupError for coordinates outside the fabric or the empty plaquette.
    [[nodiscard]] const DacSlot& slot_at(int tile_row, int tile_col, int plaquette_row,
                                         int plaquette_col, int position) const;

    [[nodiscard]] DacAddress address_of(int slot_index) const;
    [[nodiscard]] DacAddress address_of(const DacSlot& slot) const { return address_of(slot.index); }
    /// Slot whose three lines are exactly this triple, if any. RangeError for
    /// line numbers outside the fabric.
    [[nodiscard]] std::optional<int> activate(const DacAddress& a) const;

    /// Slots reached by at least one of the given lines.
    [[nodiscard]] std::vector<int> touched_by(std::optional<int> pwr_domain,
                                              std::optional<int> addr_line,
                                              std::optional<int> trig_line) const;

    /// Control slots of a qubit (m + 2 of them) in slot order.
    [[nodiscard]] const std::vector<int>& control_slots(int qubit) const;
    /// Coupler slot for edge (u, v). Throws LookupError when none exists.
    [[nodiscard]] int coupler_slot(int u, int v) const;

private:
    int n_;
    int m_;
    ChimeraSpec spec_;
    std::vector<DacSlot> slots_;
    std::vector<int> grid_;  // tile-local plaquette position -> slot index, -1 if empty
    std::vector<std::vector<int>> by_qubit_;
    std::map<Edge, int> by_coupler_;
    std::vector<std::vector<int>> by_pwr_, by_addr_, by_trig_;

    int grid_key(int tr, int tc, int pr, int pc, int pos) const;
};

AddressFabric build_fabric(int n_tiles_per_side, int m);

struct LineBudget {
    int lower_bound = 0;             ///< ceil(3 * cbrt(n_dacs))
    int reference_actual = 56;       ///< lines used by the C_8 fabric
};

/// RangeError for n_dacs < 1.
LineBudget line_budget(std::int64_t n_dacs);

enum class EventKind : std::uint8_t { Reset, Pulse };

/// One step of a programming sequence. A Reset zeroes every DAC; reset_sfq
/// records how many SFQ it removes when the prior states are known. A Pulse
/// ramps the listed lines pulses times; absent lines stay inactive.
struct ProgramEvent {
    EventKind kind = EventKind::Pulse;
    std::optional<int> pwr_domain;
    int pwr_sign = 1;
    std::optional<int> addr_line;
    std::optional<int> trig_line;
    int polarity = 1;  ///< +1: TRIG adds to ADDR in the LSD source
    int pulses = 1;
    std::int64_t reset_sfq = 0;

    friend bool operator==(const ProgramEvent&, const ProgramEvent&) = default;
};

struct ProgramSequence {
    std::vector<ProgramEvent> events;

    [[nodiscard]] std::size_t num_pulse_events() const;
    friend bool operator==(const ProgramSequence&, const ProgramSequence&) = default;
};

ProgramSequence concat(const ProgramSequence& a, const ProgramSequence& b);

/// Throws ParameterError when an event is malformed for the fabric.
void validate_sequence(const AddressFabric& fabric, const ProgramSequence& seq);

using SlotStates = std::map<int, DacState>;

/// Reset followed by per-slot events in slot order, LSD before MSD. Slots
/// absent from targets end at (0, 0). initial, when given, sizes the reset.
/// CapacityError when a target exceeds the design.
ProgramSequence compile_program(const AddressFabric& fabric, const SlotStates& targets,
                                const DacDesign& design, const SlotStates* initial = nullptr);

using ChangeObserver =
    std::function<void(std::size_t event, int slot, const DacState& before, const DacState& after)>;

/// Replays a sequence on every slot reached by an active line. Each slot sees
/// PWR, ADDR and TRIG only when its own lines are the active ones; the pulse
/// rule decides the rest. Returns the final state of every slot.
std::vector<DacState> simulate(const AddressFabric& fabric, const ProgramSequence& seq,
                               const DacDesign& design, const PulseProgrammer& programmer,
                               const CriticalLine& line,
                               const std::vector<DacState>* initial = nullptr,
                               const ChangeObserver& observer = {});

/// Builds the programmer for the design's loop-current span; MarginError when
/// the levels fail.
std::vector<DacState> simulate(const AddressFabric& fabric, const ProgramSequence& seq,
                               const DacDesign& design, const PulseSourceParams& params,
                               const BiasLevels& levels,
                               const std::vector<DacState>* initial = nullptr);

struct EnergyReport {
    std::int64_t total_sfq = 0;
    std::int64_t reset_sfq = 0;
    double energy_per_sfq_J = 0.0;
    double total_J = 0.0;
    std::map<int, std::int64_t> per_domain_sfq;
};

/// Two junction switchings per admitted flux quantum: 2 * i_c * Phi0, joules.
double energy_per_sfq(double i_c_uA);

/// ParameterError for i_c <= 0.
EnergyReport energy_of(const ProgramSequence& seq, double i_c_uA);

/// Reprogramming n_stages from -capacity to +capacity.
double full_reprogram_energy(std::int64_t n_stages, int capacity, double i_c_uA);

// Problem weights to DAC targets. A weight of n/8 becomes n * flux_per_eighth
// at the DAC output. Each qubit's bias goes on its first control slot.

SlotStates problem_targets(const AddressFabric& fabric, const DacDesign& design,
                           const IsingProblem& problem, const ChimeraSpec& problem_spec,
                           double flux_per_eighth_mphi0);

/// Inverse of problem_targets: reads weights back from slot states. The
/// problem keeps the J keys of `shape`.
IsingProblem read_back(const AddressFabric& fabric, const DacDesign& design,
                       const std::vector<DacState>& states, const IsingProblem& shape,
                       const ChimeraSpec& problem_spec, double flux_per_eighth_mphi0);

}  // namespace qactl
