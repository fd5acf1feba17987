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

// Unit conventions: the public API takes inductances in pH, currents in uA
// and fluxes in mPhi0 wherever the quantity is user-facing. Internally the
// pulse-source model works in SI.

namespace qactl::units {

/// Magnetic flux quantum h/2e, Wb (CODATA).
inline constexpr double kPhi0 = 2.067833848e-15;

inline constexpr double kPico = 1e-12;
inline constexpr double kMicro = 1e-6;

constexpr double pH_to_H(double v) { return v * kPico; }
constexpr double H_to_pH(double v) { return v / kPico; }
constexpr double uA_to_A(double v) { return v * kMicro; }
constexpr double A_to_uA(double v) { return v / kMicro; }
constexpr double mPhi0_to_Wb(double v) { return v * 1e-3 * kPhi0; }
constexpr double Wb_to_mPhi0(double v) { return v / kPhi0 * 1e3; }

}  // namespace qactl::units
