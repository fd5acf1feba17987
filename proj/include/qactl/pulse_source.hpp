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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qactl/flux_dac.hpp"

namespace qactl {

// Quasi-static model of the dc-SQUID SFQ pulse source. A source is stable
// while its bias point (phi_b, I_b) stays inside the critical line of its
// zero-fluxoid state; crossing the line admits one flux quantum into the
// storage loop it feeds. Junction dynamics (shunts, beta_c) are carried for
// reference only.
//
// Units: currents in uA, fluxes in mPhi0, inductances in pH.

struct PulseSourceParams {
    double ic0_uA = 55.0;
    double ic1_uA = 55.0;
    double l_squid_pH = 24.0;
    double r_shunt_ohm = 0.58;   // informational
    double beta_c = 0.05;        // informational
    double l_main_pH = 1000.0;   // storage loop, sets the reset asymmetry limit

    /// Throws ParameterError for non-positive currents or inductances.
    void validate() const;
};

/// Programming levels. i_pwr_uA is the active PWR magnitude; its sign per
/// pulse follows the SFQ direction. ADDR and TRIG are given as the flux they
/// put into a pulse-source loop. TRIG adds to ADDR in the LSD source for
/// polarity +1 and in the MSD source for polarity -1.
struct BiasLevels {
    double i_pwr_uA = 45.0;
    double phi_addr_mphi0 = 0.0;
    double phi_trig_mphi0 = 0.0;
};

/// Which control lines reach a DAC during one pulse.
struct Activation {
    bool pwr = false;
    int pwr_sign = 1;   ///< +1 adds SFQ, -1 removes
    bool addr = false;
    bool trig = false;
    int polarity = 1;   ///< +1 selects LSD, -1 selects MSD

    static Activation full(Stage stage, int sfq_sign) {
        return {true, sfq_sign, true, true, stage == Stage::LSD ? 1 : -1};
    }
};

/// Maximum bias current of any stable state at applied flux phi_b: the
/// Phi0-periodic envelope over all fluxoid states. Found by scanning one
/// junction phase, solving the fluxoid constraint for the other, keeping
/// stable solutions, and refining the best candidates.
double critical_current(const PulseSourceParams& params, double phi_b_mphi0);

/// Critical line of the zero-fluxoid state only, for positive bias. Equal to
/// the envelope for |phi_b| <= Phi0/2 with symmetric junctions, then falls
/// to zero where the zero state stops existing. The negative-bias line is
/// zero_state_critical_current(params, -phi_b). Returns 0 where no stable
/// zero state carries positive current.
double zero_state_critical_current(const PulseSourceParams& params, double phi_b_mphi0);

/// Largest |phi_b| at which a stable zero-fluxoid state exists (either sign).
double critical_line_extent(const PulseSourceParams& params);

/// Memoizes zero-state critical currents for a fixed parameter set.
class CriticalLine {
public:
    explicit CriticalLine(PulseSourceParams params);

    [[nodiscard]] const PulseSourceParams& params() const noexcept { return params_; }
    /// Critical current for bias of the given sign (+1 / -1).
    double at(double phi_mphi0, int current_sign = 1) const;
    /// Smallest |phi| on the side of sign(phi_side) where the line drops to
    /// |current|. Returns 0 if it is already below at phi = 0.
    double crossing_flux(double current_uA, int current_sign, int phi_side) const;
    double extent() const;

private:
    PulseSourceParams params_;
    mutable std::map<double, double> cache_;
    mutable std::optional<double> extent_;
};

struct MarginCheck {
    std::string zone;
    bool must_cross = false;
    int current_sign = 1;
    double flux_mphi0 = 0.0;       ///< flux the source sees
    double current_uA = 0.0;       ///< worst-case |I_b| for the check
    double critical_uA = 0.0;      ///< critical line at that flux
    double current_margin_uA = 0.0;
    double flux_margin_mphi0 = 0.0;
    bool ok = false;
};

struct ZoneExtent {
    std::string name;
    double i_lo_uA = 0.0;
    double i_hi_uA = 0.0;
    [[nodiscard]] double height() const { return i_hi_uA - i_lo_uA; }
};

struct MarginReport {
    std::vector<MarginCheck> checks;
    std::vector<ZoneExtent> zones;
    bool passed = false;
    double min_current_margin_uA = 0.0;

    [[nodiscard]] const ZoneExtent& zone(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> failures() const;
};

/// i_in_uA is the storage-loop current span: the loop current of any
/// reachable state lies in [-i_in/2, +i_in/2].
///  - fully addressed: ADDR+TRIG must cross for every |I_b| >= |PWR| - i_in/2
///  - PWR with one flux line, the unselected source, PWR alone: must not
///    cross for |I_b| up to |PWR| + i_in/2
///  - ADDR+TRIG without PWR: must not cross for |I_b| up to i_in/2
MarginReport check_margins(const PulseSourceParams& params, const BiasLevels& levels,
                           double i_in_uA);
MarginReport check_margins(const CriticalLine& line, const BiasLevels& levels, double i_in_uA);

/// Searches ADDR/TRIG flux for the levels with the largest relative margin.
/// Returns nothing when no grid point passes.
std::optional<BiasLevels> find_operating_point(const CriticalLine& line, double i_pwr_uA,
                                               double i_in_uA, int grid = 160);

/// Loop-current span 2 * max_stage(MAXSFQ * Phi0 / L) of a design, uA.
double loop_current_span(const DacDesign& design);

/// Bias current seen by a stage's source, uA.
double stage_bias_current(const DacDesign& design, const DacState& state, Stage stage,
                          const Activation& act, const BiasLevels& levels);

/// Applies one line activation to both stages under fixed levels. Holds the
/// margin report so repeated pulses do not recompute it.
class PulseProgrammer {
public:
    /// Throws MarginError if the levels fail margins for span i_in_uA.
    PulseProgrammer(const CriticalLine& line, BiasLevels levels, double i_in_uA);

    [[nodiscard]] const MarginReport& report() const noexcept { return report_; }
    [[nodiscard]] const BiasLevels& levels() const noexcept { return levels_; }
    [[nodiscard]] double i_in_uA() const noexcept { return i_in_uA_; }

    /// Throws MarginError if the design's loop current exceeds the margined span.
    void require_compatible(const DacDesign& design) const;
    /// One pulse; a stage moves by at most one SFQ and never past capacity.
    DacState pulse(const DacDesign& design, DacState state, const Activation& act) const;

private:
    BiasLevels levels_;
    double i_in_uA_;
    MarginReport report_;
    // critical current by [addr][trig][stage polarity > 0][bias sign > 0]
    double table_[2][2][2][2] = {};
};

/// One fully addressed pulse on `stage`. Refuses (MarginError) when the
/// levels do not pass margins for the design's loop-current span.
DacState apply_pulse(const DacDesign& design, const DacState& state, Stage stage, int sfq_sign,
                     const PulseSourceParams& params, const BiasLevels& levels);

struct ResetResult {
    DacState state;
    int lsd_pulses = 0;
    int msd_pulses = 0;
};

/// Largest junction critical-current difference for reliable reset, uA:
/// 0.1 * Phi0 / l_main.
double reset_asymmetry_limit(const PulseSourceParams& params);

/// Reset levels: PWR off, ADDR+TRIG beyond the critical-line extent.
BiasLevels default_reset_levels(const CriticalLine& line);

/// De-programs both stages one SFQ per pulse with PWR off. Requires
/// i_pwr == 0 and ADDR+TRIG past the critical-line extent (ParameterError);
/// throws ResetError when junction asymmetry exceeds reset_asymmetry_limit().
ResetResult reset(const DacDesign& design, const DacState& state, const CriticalLine& line,
                  const BiasLevels& reset_levels);
ResetResult reset(const DacDesign& design, const DacState& state, const PulseSourceParams& params,
                  const BiasLevels& reset_levels);

/// (phi_b, I_max) samples of the zero-state line over [-extent, extent].
std::vector<std::pair<double, double>> sample_critical_line(const CriticalLine& line,
                                                            int samples);

}  // namespace qactl
