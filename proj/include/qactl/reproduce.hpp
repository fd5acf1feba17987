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

#include <cstdint>
#include <string>
#include <vector>

namespace qactl {

struct ReproRow {
    std::string quantity;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Recomputes the headline figures of the control architecture with default
/// parameters. Deterministic for a given seed.
std::vector<ReproRow> reproduce_table(std::uint64_t seed = 1);

/// Outcome of programming random K_4 problems through the full stack.
struct EndToEndStats {
    int problems = 0;
    int readback_mismatches = 0;
    int chain_breaks = 0;
    int energy_mismatches = 0;
    [[nodiscard]] bool ok() const {
        return readback_mismatches == 0 && chain_breaks == 0 && energy_mismatches == 0;
    }
};

/// Random K_4 problems with |h|, |J| <= 2/8, embedded into C_1 with chain
/// weight -1, compiled to DAC targets on a C_2 fabric, replayed through the
/// pulse model, read back and solved exactly.
EndToEndStats run_end_to_end(int problems, std::uint64_t seed);

}  // namespace qactl
