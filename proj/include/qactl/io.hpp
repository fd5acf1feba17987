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

#include <string>
#include <vector>

#include <json.hpp>

#include "qactl/address_fabric.hpp"
#include "qactl/chimera.hpp"
#include "qactl/embedding.hpp"
#include "qactl/flux_dac.hpp"
#include "qactl/ising.hpp"
#include "qactl/pulse_source.hpp"

// JSON is the only structured input format. Loaders reject unknown keys and
// report the offending field in a FormatError. DOT and CSV are export-only.
namespace qactl::io {

using Json = nlohmann::ordered_json;

Json to_json(const ChimeraSpec& spec);
ChimeraSpec spec_from_json(const Json& j);

Json to_json(const HardwareGraph& graph);
/// Rebuilds the graph from its spec and checks the coupler list matches.
HardwareGraph graph_from_json(const Json& j);
std::string to_dot(const HardwareGraph& graph);

Json to_json(const Embedding& emb);
/// Chains come from the file; intra and inter couplers are recomputed from
/// the Chimera graph of the stored spec.
Embedding embedding_from_json(const Json& j);

/// {"nodes", "h": [numerators], "J": [[a, b, numerator], ...],
///  optional "chimera": spec}. Weights are stored as eighths.
Json to_json(const IsingProblem& p, const ChimeraSpec* chimera = nullptr);
/// Numerators must be integers in [-8, 8] (QuantizationError otherwise). J
/// keys must be edges of the stated Chimera graph, or of the complete graph
/// when none is given (TopologyError).
IsingProblem problem_from_json(const Json& j, ChimeraSpec* chimera_out = nullptr);
IsingProblem load_problem(const std::string& path, ChimeraSpec* chimera_out = nullptr);

/// {"matrix_pH": {...}, "i_in_uA", "derating"}.
InductanceMatrix matrix_from_json(const Json& j);
Json to_json(const InductanceMatrix& m);
Json design_input_json(const DacDesign& d);
DacDesign design_from_json(const Json& j);
/// Derived quantities, with exact flags, for reports.
Json design_report(const DacDesign& d);

Json to_json(const DacState& s);
DacState state_from_json(const Json& j);

Json to_json(const ProgramSequence& seq);
ProgramSequence sequence_from_json(const Json& j);

Json to_json(const EnergyReport& r);
EnergyReport energy_from_json(const Json& j);

Json to_json(const MarginReport& r);
/// phi_mphi0,ic_pos_uA,ic_neg_uA,envelope_uA
std::string critical_line_csv(const CriticalLine& line, int samples);

/// {"slots": [{"slot": i, "m_lsd": a, "m_msd": b}, ...]}
Json to_json(const SlotStates& s);
SlotStates slot_states_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qactl::io
