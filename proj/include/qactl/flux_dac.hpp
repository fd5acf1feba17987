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
#include <string>
#include <vector>

namespace qactl {

// Two-stage flux DAC arithmetic over a three-port (LSD, MSD, OUT) inductance
// matrix. Output flux is modeled as linear in the stored SFQ counts: the
// junction-inductance correction is omitted, which holds while junction
// inductances stay small next to the storage loops.

/// Symmetric three-port inductance matrix, all entries in pH.
struct InductanceMatrix {
    double l_lsd = 0.0;
    double l_msd = 0.0;
    double l_out = 0.0;
    double m_lsd_msd = 0.0;
    double m_lsd_out = 0.0;
    double m_msd_out = 0.0;

    /// Throws DesignError unless self-inductances are positive and every
    /// mutual satisfies |M_ab| < sqrt(L_a * L_b).
    void validate() const;
};

enum class Stage { LSD, MSD };

std::string to_string(Stage s);

/// Signed SFQ counts held in each storage loop.
struct DacState {
    int m_lsd = 0;
    int m_msd = 0;

    [[nodiscard]] int count(Stage s) const { return s == Stage::LSD ? m_lsd : m_msd; }
    int& count(Stage s) { return s == Stage::LSD ? m_lsd : m_msd; }
    friend bool operator==(const DacState&, const DacState&) = default;
};

struct DacDesign {
    InductanceMatrix matrix;
    double i_in_uA = 0.0;     ///< pulse-source drive into the storage loops
    double derating = 0.0;    ///< fraction of capacity held back for spread

    double w_lsd = 0.0;       ///< mPhi0 at the output per LSD quantum
    double w_msd = 0.0;       ///< mPhi0 at the output per MSD quantum
    int maxsfq_lsd = 0;
    int maxsfq_msd = 0;
    double division_ratio = 0.0;
    double range = 0.0;       ///< mPhi0
    double effective_bits = 0.0;

    /// The LSD can span one MSD step: division_ratio <= MAXSFQ_LSD.
    [[nodiscard]] bool covers_msd_step() const;
    [[nodiscard]] int capacity(Stage s) const { return s == Stage::LSD ? maxsfq_lsd : maxsfq_msd; }
    /// Storage-loop inductance of a stage, pH.
    [[nodiscard]] double loop_inductance(Stage s) const {
        return s == Stage::LSD ? matrix.l_lsd : matrix.l_msd;
    }
};

/// Stage weights, capacities, ratio, range and bits. Throws DesignError for a non-passive matrix or when
/// W_LSD is zero; ParameterError for i_in <= 0 or derating outside [0, 1).
DacDesign derive_params(const InductanceMatrix& matrix, double i_in_uA, double derating = 0.0);

/// Throws StateError if either count exceeds its stage capacity.
void check_state(const DacDesign& design, const DacState& state);

/// m_MSD * W_MSD + m_LSD * W_LSD, mPhi0.
double output_flux(const DacDesign& design, const DacState& state);

struct CompileResult {
    DacState state;
    double achieved = 0.0;  ///< mPhi0
    double error = 0.0;     ///< |achieved - target|, mPhi0
};

/// Largest |target| compile_target accepts: range + |W_LSD| * MAXSFQ_LSD.
double reachable_span(const DacDesign& design);

/// Rounds the target onto the MSD grid (clamped to capacity), then rounds the
/// residual onto the LSD grid; both roundings are half-away-from-zero.
/// Throws RangeError beyond reachable_span().
CompileResult compile_target(const DacDesign& design, double target_mphi0);

/// Maximizes x(1-x), the L*Ic product when a fraction x of the DAC area holds
/// the storage inductor and the rest holds junctions.
double optimal_area_split();

/// Scaling when junction critical-current density rises by jc_ratio while
/// L*Ic is held fixed: L shrinks and Ic grows by sqrt(jc_ratio).
struct AreaScaling {
    double inductance_factor = 1.0;
    double critical_current_factor = 1.0;
    double junction_area_factor = 1.0;
    double inductor_area_factor = 1.0;
    double reduction = 1.0;   ///< total area divides by this
};

/// Throws ParameterError for jc_ratio <= 0.
AreaScaling area_scaling(double jc_ratio);

/// 1..3 storage stages driving one output through an (n+1)-port matrix.
struct StageChainDesign {
    std::size_t n_stages = 0;
    std::vector<double> weights;     ///< mPhi0 per SFQ, coarsest first
    std::vector<int> capacities;
    double range = 0.0;              ///< coarsest weight * coarsest capacity
    double effective_bits = 0.0;     ///< log2|range / finest weight|
    double level_bits = 0.0;         ///< log2(2 * |range / finest weight| + 1)
    bool ordered = false;            ///< |weights| strictly decreasing
    bool covered = false;            ///< each finer stage spans one coarser step
};

/// ports = [stage 0 (coarsest) ... stage n-1 (finest), OUT], entries in pH.
/// Stage k couples W_k = 1000 * (M_k,OUT - sum_{j<k} M_k,j * W_j / 1000) / L_k:
/// its direct mutual minus what it induces through every coarser loop. With
/// two stages this is exactly derive_params.
StageChainDesign derive_stage_chain(const std::vector<std::vector<double>>& ports_pH,
                                    double i_in_uA);

/// Three-port matrix reordered as [MSD, LSD, OUT] for derive_stage_chain.
std::vector<std::vector<double>> to_stage_ports(const InductanceMatrix& m);

/// Reference design used throughout the docs and tests: 1 nH loops,
/// M_MSD_OUT = 20 pH, M_LSD_MSD = 50 pH, M_LSD_OUT = 2.25 pH, I_in = 33.1 uA.
DacDesign reference_design();

/// Design whose full SFQ range fits inside the nominal pulse-source margins
/// (|m| <= 8 on 1 nH loops, ratio 8): the one programming simulations use.
DacDesign programming_design();

}  // namespace qactl
