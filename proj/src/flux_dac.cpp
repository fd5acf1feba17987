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

#include "qactl/flux_dac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qactl/error.hpp"
#include "qactl/units.hpp"

namespace qactl {

namespace {

void check_mutual(double m, double la, double lb, const char* name) {
    if (!(std::abs(m) < std::sqrt(la * lb))) {
        throw DesignError(std::string("non-passive matrix: |") + name + "| = " +
                          std::to_string(std::abs(m)) + " pH >= sqrt(L_a*L_b)");
    }
}

int capacity_quanta(double i_in_uA, double l_pH, double derating) {
    const double quanta =
        units::uA_to_A(i_in_uA) * units::pH_to_H(l_pH) / units::kPhi0 * (1.0 - derating);
    return static_cast<int>(std::floor(quanta));
}

}  // namespace

void InductanceMatrix::validate() const {
    if (!(l_lsd > 0.0) || !(l_msd > 0.0) || !(l_out > 0.0)) {
        throw DesignError("self-inductances must be positive");
    }
    check_mutual(m_lsd_msd, l_lsd, l_msd, "M_LSD_MSD");
    check_mutual(m_lsd_out, l_lsd, l_out, "M_LSD_OUT");
    check_mutual(m_msd_out, l_msd, l_out, "M_MSD_OUT");
}

std::string to_string(Stage s) { return s == Stage::LSD ? "LSD" : "MSD"; }

bool DacDesign::covers_msd_step() const {
    return std::abs(division_ratio) <= static_cast<double>(maxsfq_lsd);
}

DacDesign derive_params(const InductanceMatrix& matrix, double i_in_uA, double derating) {
    matrix.validate();
    if (!(i_in_uA > 0.0)) {
        throw ParameterError("i_in must be positive, got " + std::to_string(i_in_uA) + " uA");
    }
    if (!(derating >= 0.0 && derating < 1.0)) {
        throw ParameterError("derating must be in [0, 1), got " + std::to_string(derating));
    }
    const auto& m = matrix;
    DacDesign d;
    d.matrix = matrix;
    d.i_in_uA = i_in_uA;
    d.derating = derating;
    // Written over a common denominator so exact pH inputs give exact weights.
    d.w_msd = 1000.0 * m.m_msd_out / m.l_msd;
    d.w_lsd = (1000.0 * m.m_lsd_out * m.l_msd - 1000.0 * m.m_lsd_msd * m.m_msd_out) /
              (m.l_lsd * m.l_msd);
    if (d.w_lsd == 0.0) {
        throw DesignError("degenerate design: W_LSD = 0, division ratio undefined");
    }
    d.maxsfq_lsd = capacity_quanta(i_in_uA, m.l_lsd, derating);
    d.maxsfq_msd = capacity_quanta(i_in_uA, m.l_msd, derating);
    d.division_ratio = d.w_msd / d.w_lsd;
    d.range = d.w_msd * d.maxsfq_msd;
    d.effective_bits = d.range == 0.0 ? -std::numeric_limits<double>::infinity()
                                      : std::log2(std::abs(d.range / d.w_lsd));
    return d;
}

void check_state(const DacDesign& design, const DacState& state) {
    if (std::abs(state.m_lsd) > design.maxsfq_lsd || std::abs(state.m_msd) > design.maxsfq_msd) {
        throw StateError("state (m_lsd=" + std::to_string(state.m_lsd) +
                         ", m_msd=" + std::to_string(state.m_msd) + ") exceeds capacity (" +
                         std::to_string(design.maxsfq_lsd) + ", " +
                         std::to_string(design.maxsfq_msd) + ")");
    }
}

double output_flux(const DacDesign& design, const DacState& state) {
    check_state(design, state);
    return state.m_msd * design.w_msd + state.m_lsd * design.w_lsd;
}

double reachable_span(const DacDesign& design) {
    return std::abs(design.range) + std::abs(design.w_lsd) * design.maxsfq_lsd;
}

CompileResult compile_target(const DacDesign& design, double target) {
    const double span = reachable_span(design);
    if (!std::isfinite(target) || std::abs(target) > span * (1.0 + 1e-12)) {
        throw RangeError("target " + std::to_string(target) + " mPhi0 beyond reachable span " +
                         std::to_string(span) + " mPhi0");
    }
    CompileResult r;
    if (design.w_msd != 0.0) {
        const double coarse = std::round(target / design.w_msd);
        r.state.m_msd = static_cast<int>(
            std::clamp(coarse, -static_cast<double>(design.maxsfq_msd),
                       static_cast<double>(design.maxsfq_msd)));
    }
    const double residual = target - r.state.m_msd * design.w_msd;
    const double fine = std::round(residual / design.w_lsd);
    r.state.m_lsd = static_cast<int>(std::clamp(fine, -static_cast<double>(design.maxsfq_lsd),
                                                static_cast<double>(design.maxsfq_lsd)));
    r.achieved = output_flux(design, r.state);
    r.error = std::abs(r.achieved - target);
    return r;
}

double optimal_area_split() {
    // Golden-section search for the maximum of x(1-x) on (0, 1).
    const auto objective = [](double x) { return x * (1.0 - x); };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0;
    double hi = 1.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = objective(a);
    double fb = objective(b);
    while (hi - lo > 1e-12) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = objective(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = objective(a);
        }
    }
    return 0.5 * (lo + hi);
}

AreaScaling area_scaling(double jc_ratio) {
    if (!(jc_ratio > 0.0)) {
        throw ParameterError("jc_ratio must be positive, got " + std::to_string(jc_ratio));
    }
    const double root = std::sqrt(jc_ratio);
    AreaScaling s;
    s.inductance_factor = 1.0 / root;
    s.critical_current_factor = root;
    // Junction area ~ Ic / Jc; spiral inductor area ~ L.
    s.junction_area_factor = root / jc_ratio;
    s.inductor_area_factor = 1.0 / root;
    s.reduction = root;
    return s;
}

StageChainDesign derive_stage_chain(const std::vector<std::vector<double>>& ports,
                                    double i_in_uA) {
    const std::size_t size = ports.size();
    if (size < 2 || size > 4) {
        throw ParameterError("stage chain needs 1..3 stages plus OUT, got " +
                             std::to_string(size) + " ports");
    }
    for (const auto& row : ports) {
        if (row.size() != size) throw ParameterError("inductance matrix must be square");
    }
    if (!(i_in_uA > 0.0)) {
        throw ParameterError("i_in must be positive, got " + std::to_string(i_in_uA) + " uA");
    }
    for (std::size_t a = 0; a < size; ++a) {
        if (!(ports[a][a] > 0.0)) throw DesignError("self-inductances must be positive");
        for (std::size_t b = a + 1; b < size; ++b) {
            if (ports[a][b] != ports[b][a]) throw DesignError("inductance matrix not symmetric");
            check_mutual(ports[a][b], ports[a][a], ports[b][b], "M");
        }
    }

    const std::size_t n = size - 1;
    const std::size_t out = n;
    StageChainDesign d;
    d.n_stages = n;
    d.weights.resize(n);
    d.capacities.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double net = ports[k][out];
        for (std::size_t j = 0; j < k; ++j) net -= ports[k][j] * d.weights[j] / 1000.0;
        d.weights[k] = 1000.0 * net / ports[k][k];
        d.capacities[k] = capacity_quanta(i_in_uA, ports[k][k], 0.0);
        if (d.weights[k] == 0.0) {
            throw DesignError("degenerate stage " + std::to_string(k) + ": zero output weight");
        }
    }
    d.range = d.weights[0] * d.capacities[0];
    const double steps = std::abs(d.range / d.weights[n - 1]);
    d.effective_bits = std::log2(steps);
    d.level_bits = std::log2(2.0 * steps + 1.0);
    d.ordered = true;
    d.covered = true;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!(std::abs(d.weights[k]) > std::abs(d.weights[k + 1]))) d.ordered = false;
        if (std::abs(d.weights[k + 1]) * d.capacities[k + 1] * (1.0 + 1e-12) < std::abs(d.weights[k])) {
            d.covered = false;
        }
    }
    return d;
}

std::vector<std::vector<double>> to_stage_ports(const InductanceMatrix& m) {
    return {{m.l_msd, m.m_lsd_msd, m.m_msd_out},
            {m.m_lsd_msd, m.l_lsd, m.m_lsd_out},
            {m.m_msd_out, m.m_lsd_out, m.l_out}};
}

DacDesign reference_design() {
    InductanceMatrix m;
    m.l_lsd = 1000.0;
    m.l_msd = 1000.0;
    m.l_out = 1000.0;
    m.m_lsd_msd = 50.0;
    m.m_lsd_out = 2.25;
    m.m_msd_out = 20.0;
    return derive_params(m, 33.1);
}

DacDesign programming_design() {
    InductanceMatrix m;
    m.l_lsd = 1000.0;
    m.l_msd = 1000.0;
    m.l_out = 1000.0;
    m.m_lsd_msd = 50.0;
    m.m_lsd_out = 3.5;
    m.m_msd_out = 20.0;
    return derive_params(m, 16.6);
}

}  // namespace qactl
