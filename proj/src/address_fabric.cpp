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

#include "qactl/address_fabric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qactl/error.hpp"
#include "qactl/units.hpp"

namespace qactl {

std::string to_string(SlotRole r) {
    switch (r) {
        case SlotRole::QubitControl: return "qubit-control";
        case SlotRole::InternalCoupler: return "internal-coupler";
        case SlotRole::ExternalCoupler: return "external-coupler";
    }
    return "?";
}

std::string to_string(const DacAddress& a) {
    return "(pwr " + std::to_string(a.pwr_domain) + ", addr " + std::to_string(a.addr_line) +
           ", trig " + std::to_string(a.trig_line) + ")";
}

AddressFabric::AddressFabric(int n_tiles_per_side, int m) : n_(n_tiles_per_side), m_(m) {
    if (n_ < 2 || n_ % 2 != 0)
        throw ConfigError("tiles per side must be a positive even number, got " +
                          std::to_string(n_));
    if (m_ < 1) throw ConfigError("m must be positive, got " + std::to_string(m_));
    spec_ = ChimeraSpec{n_, n_, m_};

    const int p = m_ + 1;
    grid_.assign(static_cast<std::size_t>(n_) * n_ * p * p * 3, -1);
    by_qubit_.resize(spec_.num_qubits());
    by_pwr_.resize(num_pwr_domains());
    by_addr_.resize(num_addr_lines());
    by_trig_.resize(num_trig_lines());

    auto qubit = [&](int tr, int tc, Orientation o, int s) {
        return qubit_linear_index(spec_, {tr, tc, o, s});
    };

    for (int tr = 0; tr < n_; ++tr) {
        for (int tc = 0; tc < n_; ++tc) {
            for (int pr = 0; pr < p; ++pr) {
                for (int pc = 0; pc < p; ++pc) {
                    if (pr == m_ && pc == m_) continue;
                    for (int pos = 0; pos < 3; ++pos) {
                        DacSlot s;
                        s.index = static_cast<int>(slots_.size());
                        s.tile_row = tr;
                        s.tile_col = tc;
                        s.plaquette_row = pr;
                        s.plaquette_col = pc;
                        s.position = pos;
                        if (pr < m_ && pc < m_) {
                            const int h = qubit(tr, tc, Orientation::Horizontal, pr);
                            const int v = qubit(tr, tc, Orientation::Vertical, pc);
                            if (pos == 1) {
                                s.role = SlotRole::InternalCoupler;
                                s.coupler = make_edge(h, v);
                            } else {
                                s.qubit = pos == 0 ? v : h;
                            }
                        } else if (pr == m_) {
                            const int v = qubit(tr, tc, Orientation::Vertical, pc);
                            if (pos == 1) {
                                s.role = SlotRole::ExternalCoupler;
                                if (tr + 1 < n_)
                                    s.coupler = make_edge(v, qubit(tr + 1, tc, Orientation::Vertical, pc));
                            } else {
                                s.qubit = v;
                            }
                        } else {
                            const int h = qubit(tr, tc, Orientation::Horizontal, pr);
                            if (pos == 1) {
                                s.role = SlotRole::ExternalCoupler;
                                if (tc + 1 < n_)
                                    s.coupler = make_edge(h, qubit(tr, tc + 1, Orientation::Horizontal, pr));
                            } else {
                                s.qubit = h;
                            }
                        }
                        grid_[grid_key(tr, tc, pr, pc, pos)] = s.index;
                        if (s.qubit >= 0) by_qubit_[s.qubit].push_back(s.index);
                        if (s.coupler) by_coupler_.emplace(*s.coupler, s.index);
                        slots_.push_back(s);
                        const DacAddress a = address_of(s.index);
                        by_pwr_[a.pwr_domain].push_back(s.index);
                        by_addr_[a.addr_line].push_back(s.index);
                        by_trig_[a.trig_line].push_back(s.index);
                    }
                }
            }
        }
    }
}

int AddressFabric::grid_key(int tr, int tc, int pr, int pc, int pos) const {
    const int p = m_ + 1;
    return (((tr * n_ + tc) * p + pr) * p + pc) * 3 + pos;
}

const DacSlot& AddressFabric::slot(int index) const {
    if (index < 0 || static_cast<std::size_t>(index) >= slots_.size())
        throw LookupError("no DAC slot " + std::to_string(index));
    return slots_[index];
}

const DacSlot& AddressFabric::slot_at(int tr, int tc, int pr, int pc, int pos) const {
    const int p = m_ + 1;
    if (tr < 0 || tr >= n_ || tc < 0 || tc >= n_ || pr < 0 || pr >= p || pc < 0 || pc >= p ||
        pos < 0 || pos > 2)
        throw LookupError("slot coordinates outside the fabric");
    const int idx = grid_[grid_key(tr, tc, pr, pc, pos)];
    if (idx < 0) throw LookupError("plaquette (" + std::to_string(pr) + "," + std::to_string(pc) +
                                   ") is the empty plaquette");
    return slots_[idx];
}

DacAddress AddressFabric::address_of(int slot_index) const {
    const DacSlot& s = slot(slot_index);
    const int p = m_ + 1;
    return {(s.tile_row / 2) * (n_ / 2) + s.tile_col / 2,
            3 * p * (s.tile_col % 2) + 3 * s.plaquette_col + s.position,
            p * (s.tile_row % 2) + s.plaquette_row};
}

std::optional<int> AddressFabric::activate(const DacAddress& a) const {
    if (a.pwr_domain < 0 || a.pwr_domain >= num_pwr_domains())
        throw RangeError("PWR domain " + std::to_string(a.pwr_domain) + " out of range");
    if (a.addr_line < 0 || a.addr_line >= num_addr_lines())
        throw RangeError("ADDR line " + std::to_string(a.addr_line) + " out of range");
    if (a.trig_line < 0 || a.trig_line >= num_trig_lines())
        throw RangeError("TRIG line " + std::to_string(a.trig_line) + " out of range");
    const int p = m_ + 1;
    const int half = n_ / 2;
    const int tr = 2 * (a.pwr_domain / half) + a.trig_line / p;
    const int tc = 2 * (a.pwr_domain % half) + a.addr_line / (3 * p);
    const int pr = a.trig_line % p;
    const int pc = (a.addr_line % (3 * p)) / 3;
    const int idx = grid_[grid_key(tr, tc, pr, pc, a.addr_line % 3)];
    if (idx < 0) return std::nullopt;
    return idx;
}

std::vector<int> AddressFabric::touched_by(std::optional<int> pwr, std::optional<int> addr,
                                           std::optional<int> trig) const {
    std::vector<int> out;
    auto add = [&](const std::vector<std::vector<int>>& table, std::optional<int> line,
                   const char* what) {
        if (!line) return;
        if (*line < 0 || static_cast<std::size_t>(*line) >= table.size())
            throw RangeError(std::string(what) + " line " + std::to_string(*line) + " out of range");
        out.insert(out.end(), table[*line].begin(), table[*line].end());
    };
    add(by_pwr_, pwr, "PWR");
    add(by_addr_, addr, "ADDR");
    add(by_trig_, trig, "TRIG");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<int>& AddressFabric::control_slots(int qubit) const {
    if (qubit < 0 || static_cast<std::size_t>(qubit) >= by_qubit_.size())
        throw LookupError("no qubit " + std::to_string(qubit) + " in the fabric");
    return by_qubit_[qubit];
}

int AddressFabric::coupler_slot(int u, int v) const {
    auto it = by_coupler_.find(make_edge(u, v));
    if (it == by_coupler_.end())
        throw LookupError("no coupler slot for (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return it->second;
}

AddressFabric build_fabric(int n_tiles_per_side, int m) { return AddressFabric(n_tiles_per_side, m); }

LineBudget line_budget(std::int64_t n_dacs) {
    if (n_dacs < 1) throw RangeError("line budget needs at least one DAC");
    // Smallest L with (L/3)^3 >= n, i.e. L^3 >= 27 n, in exact integers.
    std::int64_t l = static_cast<std::int64_t>(std::floor(3.0 * std::cbrt(static_cast<double>(n_dacs))));
    l = std::max<std::int64_t>(l - 2, 1);
    while (l * l * l < 27 * n_dacs) ++l;
    return {static_cast<int>(l), 56};
}

std::size_t ProgramSequence::num_pulse_events() const {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto& e) {
        return e.kind == EventKind::Pulse;
    }));
}

ProgramSequence concat(const ProgramSequence& a, const ProgramSequence& b) {
    ProgramSequence out = a;
    out.events.insert(out.events.end(), b.events.begin(), b.events.end());
    return out;
}

void validate_sequence(const AddressFabric& fabric, const ProgramSequence& seq) {
    for (std::size_t i = 0; i < seq.events.size(); ++i) {
        const auto& e = seq.events[i];
        const std::string at = "event " + std::to_string(i) + ": ";
        if (e.kind == EventKind::Reset) {
            if (e.reset_sfq < 0) throw ParameterError(at + "reset_sfq must be non-negative");
            continue;
        }
        if (e.pulses < 1) throw ParameterError(at + "pulses must be at least 1");
        if (e.pwr_sign != 1 && e.pwr_sign != -1) throw ParameterError(at + "pwr_sign must be +1 or -1");
        if (e.polarity != 1 && e.polarity != -1) throw ParameterError(at + "polarity must be +1 or -1");
        if (e.pwr_domain && (*e.pwr_domain < 0 || *e.pwr_domain >= fabric.num_pwr_domains()))
            throw ParameterError(at + "pwr_domain out of range");
        if (e.addr_line && (*e.addr_line < 0 || *e.addr_line >= fabric.num_addr_lines()))
            throw ParameterError(at + "addr_line out of range");
        if (e.trig_line && (*e.trig_line < 0 || *e.trig_line >= fabric.num_trig_lines()))
            throw ParameterError(at + "trig_line out of range");
    }
}

ProgramSequence compile_program(const AddressFabric& fabric, const SlotStates& targets,
                                const DacDesign& design, const SlotStates* initial) {
    ProgramSequence seq;
    ProgramEvent rst;
    rst.kind = EventKind::Reset;
    if (initial) {
        for (const auto& [idx, st] : *initial) {
            (void)fabric.slot(idx);
            rst.reset_sfq += std::abs(st.m_lsd) + std::abs(st.m_msd);
        }
    }
    seq.events.push_back(rst);

    for (const auto& [idx, st] : targets) {
        (void)fabric.slot(idx);
        for (Stage s : {Stage::LSD, Stage::MSD}) {
            if (std::abs(st.count(s)) > design.capacity(s))
                throw CapacityError("slot " + std::to_string(idx) + " " + to_string(s) + " target " +
                                    std::to_string(st.count(s)) + " exceeds capacity " +
                                    std::to_string(design.capacity(s)));
        }
        const DacAddress a = fabric.address_of(idx);
        for (Stage s : {Stage::LSD, Stage::MSD}) {
            const int n = st.count(s);
            if (n == 0) continue;
            ProgramEvent e;
            e.pwr_domain = a.pwr_domain;
            e.pwr_sign = n > 0 ? 1 : -1;
            e.addr_line = a.addr_line;
            e.trig_line = a.trig_line;
            e.polarity = s == Stage::LSD ? 1 : -1;
            e.pulses = std::abs(n);
            seq.events.push_back(e);
        }
    }
    return seq;
}

std::vector<DacState> simulate(const AddressFabric& fabric, const ProgramSequence& seq,
                               const DacDesign& design, const PulseProgrammer& programmer,
                               const CriticalLine& line, const std::vector<DacState>* initial,
                               const ChangeObserver& observer) {
    validate_sequence(fabric, seq);
    programmer.require_compatible(design);
    std::vector<DacState> states(fabric.num_slots());
    if (initial) {
        if (initial->size() != states.size())
            throw ParameterError("initial state count does not match the fabric");
        for (const auto& st : *initial) check_state(design, st);
        states = *initial;
    }

    const BiasLevels reset_levels = default_reset_levels(line);
    for (std::size_t ei = 0; ei < seq.events.size(); ++ei) {
        const auto& e = seq.events[ei];
        if (e.kind == EventKind::Reset) {
            for (std::size_t i = 0; i < states.size(); ++i) {
                if (states[i].m_lsd == 0 && states[i].m_msd == 0) continue;
                const DacState after = reset(design, states[i], line, reset_levels).state;
                if (observer) observer(ei, static_cast<int>(i), states[i], after);
                states[i] = after;
            }
            continue;
        }
        const auto touched = fabric.touched_by(e.pwr_domain, e.addr_line, e.trig_line);
        std::vector<Activation> acts;
        acts.reserve(touched.size());
        for (int idx : touched) {
            const DacAddress a = fabric.address_of(idx);
            acts.push_back({e.pwr_domain == a.pwr_domain, e.pwr_sign, e.addr_line == a.addr_line,
                            e.trig_line == a.trig_line, e.polarity});
        }
        for (int p = 0; p < e.pulses; ++p) {
            for (std::size_t k = 0; k < touched.size(); ++k) {
                DacState& st = states[touched[k]];
                const DacState after = programmer.pulse(design, st, acts[k]);
                if (after.m_lsd == st.m_lsd && after.m_msd == st.m_msd) continue;
                if (observer) observer(ei, touched[k], st, after);
                st = after;
            }
        }
    }
    return states;
}

std::vector<DacState> simulate(const AddressFabric& fabric, const ProgramSequence& seq,
                               const DacDesign& design, const PulseSourceParams& params,
                               const BiasLevels& levels, const std::vector<DacState>* initial) {
    const CriticalLine line(params);
    const PulseProgrammer prog(line, levels, loop_current_span(design));
    return simulate(fabric, seq, design, prog, line, initial);
}

double energy_per_sfq(double i_c_uA) {
    if (!(i_c_uA > 0.0)) throw ParameterError("critical current must be positive");
    return 2.0 * units::uA_to_A(i_c_uA) * units::kPhi0;
}

EnergyReport energy_of(const ProgramSequence& seq, double i_c_uA) {
    EnergyReport r;
    r.energy_per_sfq_J = energy_per_sfq(i_c_uA);
    for (const auto& e : seq.events) {
        if (e.kind == EventKind::Reset) {
            r.reset_sfq += e.reset_sfq;
            continue;
        }
        // Only fully addressed events admit flux quanta.
        if (!e.pwr_domain || !e.addr_line || !e.trig_line) continue;
        r.per_domain_sfq[*e.pwr_domain] += e.pulses;
        r.total_sfq += e.pulses;
    }
    r.total_sfq += r.reset_sfq;
    r.total_J = static_cast<double>(r.total_sfq) * r.energy_per_sfq_J;
    return r;
}

double full_reprogram_energy(std::int64_t n_stages, int capacity, double i_c_uA) {
    return static_cast<double>(n_stages) * 2.0 * capacity * energy_per_sfq(i_c_uA);
}

namespace {

int fabric_qubit(const AddressFabric& fabric, const ChimeraSpec& problem_spec, int node) {
    if (problem_spec.m != fabric.m())
        throw ParameterError("problem graph and fabric disagree on m");
    const QubitId q = qubit_from_index(problem_spec, node);
    if (q.tile_row >= fabric.tiles_per_side() || q.tile_col >= fabric.tiles_per_side())
        throw ParameterError("problem qubit " + to_string(q) + " lies outside the fabric");
    return qubit_linear_index(fabric.spec(), q);
}

DacState target_for(const DacDesign& design, QuantizedWeight w, double fpe) {
    return compile_target(design, w.numerator() * fpe).state;
}

QuantizedWeight weight_of(const DacDesign& design, const DacState& st, double fpe) {
    return QuantizedWeight::from_numerator(
        static_cast<int>(std::lround(output_flux(design, st) / fpe)));
}

}  // namespace

SlotStates problem_targets(const AddressFabric& fabric, const DacDesign& design,
                           const IsingProblem& problem, const ChimeraSpec& problem_spec,
                           double fpe) {
    if (!(fpe > 0.0)) throw ParameterError("flux per eighth must be positive");
    SlotStates out;
    for (std::size_t i = 0; i < problem.num_nodes; ++i) {
        if (problem.h[i].numerator() == 0) continue;
        const int q = fabric_qubit(fabric, problem_spec, static_cast<int>(i));
        out[fabric.control_slots(q).front()] = target_for(design, problem.h[i], fpe);
    }
    for (const auto& [e, w] : problem.J) {
        if (w.numerator() == 0) continue;
        const int u = fabric_qubit(fabric, problem_spec, e.first);
        const int v = fabric_qubit(fabric, problem_spec, e.second);
        out[fabric.coupler_slot(u, v)] = target_for(design, w, fpe);
    }
    return out;
}

IsingProblem read_back(const AddressFabric& fabric, const DacDesign& design,
                       const std::vector<DacState>& states, const IsingProblem& shape,
                       const ChimeraSpec& problem_spec, double fpe) {
    if (states.size() != fabric.num_slots())
        throw ParameterError("state count does not match the fabric");
    IsingProblem out(shape.num_nodes);
    for (std::size_t i = 0; i < shape.num_nodes; ++i) {
        const int q = fabric_qubit(fabric, problem_spec, static_cast<int>(i));
        out.h[i] = weight_of(design, states[fabric.control_slots(q).front()], fpe);
    }
    for (const auto& [e, _] : shape.J) {
        const int u = fabric_qubit(fabric, problem_spec, e.first);
        const int v = fabric_qubit(fabric, problem_spec, e.second);
        out.J[e] = weight_of(design, states[fabric.coupler_slot(u, v)], fpe);
    }
    return out;
}

}  // namespace qactl
