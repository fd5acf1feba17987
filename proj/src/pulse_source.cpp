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

#include "qactl/pulse_source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qactl/error.hpp"
#include "qactl/units.hpp"

namespace qactl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNone = -std::numeric_limits<double>::infinity();

// Working quantities in uA: k is the loop "stiffness" Phi0 / (2 pi L).
struct Squid {
    double a;
    double b;
    double k;
};

Squid make_squid(const PulseSourceParams& p) {
    p.validate();
    return {p.ic0_uA, p.ic1_uA,
            units::A_to_uA(units::kPhi0 / (2.0 * kPi * units::pH_to_H(p.l_squid_pH)))};
}

// Largest bias current among stable solutions with junction-0 phase phi0.
// The fluxoid constraint phi1 - phi0 = theta + (a sin phi0 - b sin phi1) / (2k)
// is solved for phi1 by scanning its bracket and bisecting sign changes.
double best_at_phase(const Squid& s, double theta, double phi0, bool zero_state) {
    const double ba = s.a / (2.0 * s.k);
    const double bb = s.b / (2.0 * s.k);
    const double c = phi0 + theta + ba * std::sin(phi0);
    auto f = [&](double x) { return x + bb * std::sin(x) - c; };

    const double lo = c - bb - 1e-9;
    const double hi = c + bb + 1e-9;
    const int n = std::max(8, static_cast<int>(std::ceil((hi - lo) / 0.05)));
    const double step = (hi - lo) / n;

    const double cos0 = std::cos(phi0);
    const double sin0 = std::sin(phi0);
    double best = kNone;
    auto consider = [&](double x) {
        if (zero_state && (x <= -kPi || x > kPi)) return;
        const double h00 = s.a * cos0 + s.k;
        const double h11 = s.b * std::cos(x) + s.k;
        const double det = h00 * h11 - s.k * s.k;
        const double tol = 1e-12 * (s.a + s.b + s.k) * (s.a + s.b + s.k);
        if (h00 <= 0.0 || det < -tol) return;
        best = std::max(best, s.a * sin0 + s.b * std::sin(x));
    };

    double x0 = lo;
    double f0 = f(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = lo + i * step;
        const double f1 = f(x1);
        if (f0 == 0.0) {
            consider(x0);
        } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
            double l = x0, r = x1, fl = f0;
            for (int it = 0; it < 80 && r - l > 1e-14; ++it) {
                const double mid = 0.5 * (l + r);
                const double fm = f(mid);
                if ((fm < 0.0) == (fl < 0.0)) {
                    l = mid;
                    fl = fm;
                } else {
                    r = mid;
                }
            }
            consider(0.5 * (l + r));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) consider(x0);
    return best;
}

double max_current(const PulseSourceParams& params, double phi_mphi0, bool zero_state) {
    const Squid s = make_squid(params);
    const double theta = 2.0 * kPi * phi_mphi0 / 1000.0;

    constexpr int kGrid = 360;
    const double h = 2.0 * kPi / kGrid;
    std::vector<std::pair<double, double>> samples;
    samples.reserve(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double p0 = -kPi + i * h;
        samples.emplace_back(best_at_phase(s, theta, p0, zero_state), p0);
    }
    double best = kNone;
    for (const auto& [v, _] : samples) best = std::max(best, v);
    if (best == kNone) return 0.0;

    // Refine around the local maxima with the largest values.
    std::vector<std::pair<double, double>> peaks;
    for (int i = 0; i < kGrid; ++i) {
        const double v = samples[i].first;
        if (v == kNone) continue;
        const double l = samples[(i + kGrid - 1) % kGrid].first;
        const double r = samples[(i + 1) % kGrid].first;
        if (v >= l && v >= r) peaks.push_back(samples[i]);
    }
    std::sort(peaks.begin(), peaks.end(), std::greater<>());
    if (peaks.size() > 3) peaks.resize(3);

    for (auto [v, centre] : peaks) {
        double span = h;
        while (span > 1e-13) {
            double arg = centre;
            for (int j = -10; j <= 10; ++j) {
                const double p0 = centre + j * span / 5.0;
                const double w = best_at_phase(s, theta, p0, zero_state);
                if (w > v) {
                    v = w;
                    arg = p0;
                }
            }
            centre = arg;
            span /= 5.0;
        }
        best = std::max(best, v);
    }
    return std::max(best, 0.0);
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

double phi0_over_l_uA(double l_pH) {
    return units::A_to_uA(units::kPhi0 / units::pH_to_H(l_pH));
}

}  // namespace

void PulseSourceParams::validate() const {
    if (!(ic0_uA > 0.0) || !(ic1_uA > 0.0))
        throw ParameterError("junction critical currents must be positive");
    if (!(l_squid_pH > 0.0) || !(l_main_pH > 0.0))
        throw ParameterError("inductances must be positive");
    if (r_shunt_ohm < 0.0 || beta_c < 0.0)
        throw ParameterError("shunt resistance and beta_c must be non-negative");
}

double critical_current(const PulseSourceParams& params, double phi_b_mphi0) {
    return max_current(params, phi_b_mphi0, false);
}

double zero_state_critical_current(const PulseSourceParams& params, double phi_b_mphi0) {
    return max_current(params, phi_b_mphi0, true);
}

double critical_line_extent(const PulseSourceParams& params) {
    return CriticalLine(params).extent();
}

CriticalLine::CriticalLine(PulseSourceParams params) : params_(params) { params_.validate(); }

double CriticalLine::at(double phi_mphi0, int current_sign) const {
    const double phi = current_sign < 0 ? -phi_mphi0 : phi_mphi0;
    if (extent_ && std::abs(phi) >= *extent_) return 0.0;
    const double key = phi == 0.0 ? 0.0 : phi;  // fold -0 into 0
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const double v = zero_state_critical_current(params_, key);
    cache_.emplace(key, v);
    return v;
}

double CriticalLine::extent() const {
    if (extent_) return *extent_;
    double result = 0.0;
    for (int side : {1, -1}) {
        double lo = 0.0;
        double hi = 0.0;
        bool found = false;
        for (int i = 1; i <= 60; ++i) {
            hi = 50.0 * i;
            if (at(side * hi, 1) <= 0.0) {
                found = true;
                break;
            }
            lo = hi;
        }
        if (!found) throw ParameterError("critical line does not close within 3 Phi0");
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            (at(side * mid, 1) > 0.0 ? lo : hi) = mid;
        }
        result = std::max(result, hi);
    }
    extent_ = result;
    return result;
}

double CriticalLine::crossing_flux(double current_uA, int current_sign, int phi_side) const {
    const double target = std::abs(current_uA);
    const int side = phi_side < 0 ? -1 : 1;
    if (at(0.0, current_sign) <= target) return 0.0;
    double lo = 0.0;
    double hi = extent();
    for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        (at(side * mid, current_sign) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

const ZoneExtent& MarginReport::zone(const std::string& name) const {
    for (const auto& z : zones)
        if (z.name == name) return z;
    throw LookupError("no margin zone '" + name + "'");
}

std::vector<std::string> MarginReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (c.ok) continue;
        out.push_back(c.zone + (c.current_sign > 0 ? "+" : "-") + " at " +
                      std::to_string(c.flux_mphi0) + " mPhi0: |I|=" +
                      std::to_string(c.current_uA) + " uA vs Ic=" + std::to_string(c.critical_uA));
    }
    return out;
}

namespace {

struct CheckSpec {
    const char* zone;
    bool must_cross;
    double flux;
    double current;
};

std::vector<CheckSpec> check_specs(const BiasLevels& lv, double i_in_uA) {
    const double p = std::abs(lv.i_pwr_uA);
    const double half = i_in_uA / 2.0;
    const double on = lv.phi_addr_mphi0 + lv.phi_trig_mphi0;
    const double off = lv.phi_addr_mphi0 - lv.phi_trig_mphi0;
    return {
        {"selected", true, on, p - half},
        {"unselected", false, off, p + half},
        {"pwr+addr", false, lv.phi_addr_mphi0, p + half},
        {"pwr+trig", false, lv.phi_trig_mphi0, p + half},
        {"pwr+trig", false, -lv.phi_trig_mphi0, p + half},
        {"addr+trig", false, on, half},
        {"addr+trig", false, off, half},
        {"pwr", false, 0.0, p + half},
    };
}

std::vector<ZoneExtent> zones_for(double p, double i_in_uA) {
    const double half = i_in_uA / 2.0;
    return {
        {"green+", p - half, p},
        {"green-", -p, -p + half},
        {"red+", p, p + half},
        {"red-", -p - half, -p},
        {"c", -half, half},
    };
}

}  // namespace

MarginReport check_margins(const CriticalLine& line, const BiasLevels& levels, double i_in_uA) {
    if (!(i_in_uA > 0.0)) throw ParameterError("loop-current span must be positive");
    const double p = std::abs(levels.i_pwr_uA);
    if (!(p > 0.0)) throw ParameterError("PWR level must be non-zero");

    MarginReport rep;
    rep.zones = zones_for(p, i_in_uA);
    rep.passed = true;
    rep.min_current_margin_uA = std::numeric_limits<double>::infinity();

    for (const auto& spec : check_specs(levels, i_in_uA)) {
        for (int sgn : {1, -1}) {
            MarginCheck c;
            c.zone = spec.zone;
            c.must_cross = spec.must_cross;
            c.current_sign = sgn;
            c.flux_mphi0 = spec.flux;
            c.current_uA = spec.current;
            c.critical_uA = line.at(spec.flux, sgn);
            const int side = spec.flux < 0.0 ? -1 : 1;
            const double cross = line.crossing_flux(spec.current, sgn, side);
            if (spec.must_cross) {
                c.current_margin_uA = spec.current - c.critical_uA;
                c.flux_margin_mphi0 = std::abs(spec.flux) - cross;
                c.ok = spec.current > 0.0 && c.current_margin_uA >= 0.0;
            } else {
                c.current_margin_uA = c.critical_uA - spec.current;
                c.flux_margin_mphi0 = cross - std::abs(spec.flux);
                c.ok = c.current_margin_uA > 0.0;
            }
            rep.passed = rep.passed && c.ok;
            rep.min_current_margin_uA = std::min(rep.min_current_margin_uA, c.current_margin_uA);
            rep.checks.push_back(std::move(c));
        }
    }
    return rep;
}

MarginReport check_margins(const PulseSourceParams& params, const BiasLevels& levels,
                           double i_in_uA) {
    return check_margins(CriticalLine(params), levels, i_in_uA);
}

std::optional<BiasLevels> find_operating_point(const CriticalLine& line, double i_pwr_uA,
                                               double i_in_uA, int grid) {
    if (grid < 4) throw ParameterError("operating-point grid too coarse");
    const double ext = line.extent();
    const double h = ext / grid;
    // table[side][i] = line.at(i * h, side), i in [-grid, grid]
    std::vector<double> plus(2 * grid + 1), minus(2 * grid + 1);
    for (int i = -grid; i <= grid; ++i) {
        plus[i + grid] = line.at(i * h, 1);
        minus[i + grid] = line.at(i * h, -1);
    }
    auto f = [&](int idx, int sgn) {
        if (idx <= -grid || idx >= grid) return 0.0;
        return sgn > 0 ? plus[idx + grid] : minus[idx + grid];
    };

    std::optional<BiasLevels> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int ia = 1; ia < grid; ++ia) {
        for (int it = 1; it < grid; ++it) {
            BiasLevels lv{i_pwr_uA, ia * h, it * h};
            const auto specs = check_specs(lv, i_in_uA);
            // Flux indices line up with specs order.
            const int idx[] = {ia + it, ia - it, ia, it, -it, ia + it, ia - it, 0};
            double score = std::numeric_limits<double>::infinity();
            for (std::size_t s = 0; s < specs.size(); ++s) {
                for (int sgn : {1, -1}) {
                    const double ic = f(idx[s], sgn);
                    const double m = specs[s].must_cross ? specs[s].current - ic
                                                         : ic - specs[s].current;
                    score = std::min(score, m);
                }
            }
            if (score > best_score) {
                best_score = score;
                best = lv;
            }
        }
    }
    if (!best || best_score <= 0.0) return std::nullopt;
    return best;
}

double loop_current_span(const DacDesign& design) {
    double worst = 0.0;
    for (Stage s : {Stage::LSD, Stage::MSD})
        worst = std::max(worst, design.capacity(s) * phi0_over_l_uA(design.loop_inductance(s)));
    return 2.0 * worst;
}

double stage_bias_current(const DacDesign& design, const DacState& state, Stage stage,
                          const Activation& act, const BiasLevels& levels) {
    const double drive = act.pwr ? (act.pwr_sign < 0 ? -1.0 : 1.0) * std::abs(levels.i_pwr_uA)
                                 : 0.0;
    return drive - state.count(stage) * phi0_over_l_uA(design.loop_inductance(stage));
}

PulseProgrammer::PulseProgrammer(const CriticalLine& line, BiasLevels levels, double i_in_uA)
    : levels_(levels), i_in_uA_(i_in_uA),
      report_(check_margins(line, levels, i_in_uA)) {
    if (!report_.passed) {
        const auto f = report_.failures();
        throw MarginError("bias levels fail margins (" + std::to_string(f.size()) +
                          " checks), first: " + f.front());
    }
    for (int a = 0; a < 2; ++a)
        for (int t = 0; t < 2; ++t)
            for (int pol = 0; pol < 2; ++pol)
                for (int sg = 0; sg < 2; ++sg) {
                    const double phi = (a ? levels_.phi_addr_mphi0 : 0.0) +
                                       (t ? (pol ? 1.0 : -1.0) * levels_.phi_trig_mphi0 : 0.0);
                    table_[a][t][pol][sg] = line.at(phi, sg ? 1 : -1);
                }
}

void PulseProgrammer::require_compatible(const DacDesign& design) const {
    const double span = loop_current_span(design);
    if (span > i_in_uA_ * (1.0 + 1e-9))
        throw MarginError("design loop-current span " + std::to_string(span) +
                          " uA exceeds the margined span " + std::to_string(i_in_uA_) + " uA");
}

DacState PulseProgrammer::pulse(const DacDesign& design, DacState state,
                                const Activation& act) const {
    DacState next = state;
    for (Stage s : {Stage::LSD, Stage::MSD}) {
        const int pol = s == Stage::LSD ? act.polarity : -act.polarity;
        const double ib = stage_bias_current(design, state, s, act, levels_);
        const int d = sign_of(ib);
        if (d == 0) continue;
        if (std::abs(ib) < table_[act.addr][act.trig][pol > 0][d > 0]) continue;
        const int m = state.count(s) + d;
        if (std::abs(m) > design.capacity(s)) continue;
        next.count(s) = m;
    }
    return next;
}

DacState apply_pulse(const DacDesign& design, const DacState& state, Stage stage, int sfq_sign,
                     const PulseSourceParams& params, const BiasLevels& levels) {
    check_state(design, state);
    if (sfq_sign != 1 && sfq_sign != -1) throw ParameterError("SFQ sign must be +1 or -1");
    const CriticalLine line(params);
    const PulseProgrammer prog(line, levels, loop_current_span(design));
    return prog.pulse(design, state, Activation::full(stage, sfq_sign));
}

double reset_asymmetry_limit(const PulseSourceParams& params) {
    return 0.1 * phi0_over_l_uA(params.l_main_pH);
}

BiasLevels default_reset_levels(const CriticalLine& line) {
    const double half = 0.55 * line.extent();
    return {0.0, half, half};
}

ResetResult reset(const DacDesign& design, const DacState& state, const CriticalLine& line,
                  const BiasLevels& reset_levels) {
    check_state(design, state);
    if (reset_levels.i_pwr_uA != 0.0) throw ParameterError("reset requires PWR off");
    const double amp = std::abs(reset_levels.phi_addr_mphi0 + reset_levels.phi_trig_mphi0);
    if (!(amp > line.extent()))
        throw ParameterError("reset flux " + std::to_string(amp) +
                             " mPhi0 does not exceed the critical-line extent " +
                             std::to_string(line.extent()));
    const auto& p = line.params();
    if (std::abs(p.ic0_uA - p.ic1_uA) > reset_asymmetry_limit(p))
        throw ResetError("junction asymmetry " + std::to_string(std::abs(p.ic0_uA - p.ic1_uA)) +
                         " uA exceeds reset limit " + std::to_string(reset_asymmetry_limit(p)));

    ResetResult out{state, 0, 0};
    for (Stage target : {Stage::LSD, Stage::MSD}) {
        Activation act{false, 1, true, true, target == Stage::LSD ? 1 : -1};
        const int limit = 2 * (design.capacity(Stage::LSD) + design.capacity(Stage::MSD)) + 4;
        for (int i = 0; i < limit; ++i) {
            DacState next = out.state;
            for (Stage s : {Stage::LSD, Stage::MSD}) {
                const int pol = s == Stage::LSD ? act.polarity : -act.polarity;
                const double phi = reset_levels.phi_addr_mphi0 + pol * reset_levels.phi_trig_mphi0;
                const double ib = stage_bias_current(design, out.state, s, act, reset_levels);
                const int d = sign_of(ib);
                if (d == 0 || std::abs(ib) < line.at(phi, d)) continue;
                next.count(s) += d;
            }
            if (next.m_lsd == out.state.m_lsd && next.m_msd == out.state.m_msd) break;
            out.lsd_pulses += std::abs(next.m_lsd - out.state.m_lsd);
            out.msd_pulses += std::abs(next.m_msd - out.state.m_msd);
            out.state = next;
        }
    }
    if (out.state.m_lsd != 0 || out.state.m_msd != 0)
        throw ResetError("reset did not reach the zero state");
    return out;
}

ResetResult reset(const DacDesign& design, const DacState& state, const PulseSourceParams& params,
                  const BiasLevels& reset_levels) {
    return reset(design, state, CriticalLine(params), reset_levels);
}

std::vector<std::pair<double, double>> sample_critical_line(const CriticalLine& line,
                                                            int samples) {
    if (samples < 2) throw ParameterError("need at least two samples");
    const double ext = line.extent();
    std::vector<std::pair<double, double>> out;
    out.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double phi = -ext + 2.0 * ext * i / (samples - 1);
        out.emplace_back(phi, line.at(phi, 1));
    }
    return out;
}

}  // namespace qactl
