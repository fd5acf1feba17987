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

#include "qactl/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "qactl/error.hpp"

namespace qactl::io {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& ctx) {
    if (!j.is_object()) throw FormatError(ctx + ": expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw FormatError(ctx + ": unknown key '" + key + "'");
    }
}

const Json& field(const Json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(ctx + ": missing field '" + key + "'");
    return *it;
}

template <class T>
T get(const Json& j, const char* key, const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw FormatError(ctx + ": field '" + key + "' has the wrong type");
    }
}

int get_int(const Json& v, const std::string& ctx) {
    if (!v.is_number_integer()) throw FormatError(ctx + ": expected an integer");
    return v.get<int>();
}

std::string orientation_tag(Orientation o) { return o == Orientation::Horizontal ? "H" : "V"; }

}  // namespace

Json to_json(const ChimeraSpec& s) {
    return Json{{"n_rows", s.n_rows}, {"n_cols", s.n_cols}, {"m", s.m}};
}

ChimeraSpec spec_from_json(const Json& j) {
    check_keys(j, {"n_rows", "n_cols", "m"}, "spec");
    ChimeraSpec s{get<int>(j, "n_rows", "spec"), get<int>(j, "n_cols", "spec"),
                  get<int>(j, "m", "spec")};
    s.validate();
    return s;
}

Json to_json(const HardwareGraph& g) {
    Json qubits = Json::array();
    for (std::size_t i = 0; i < g.num_qubits(); ++i) {
        const QubitId q = qubit_from_index(g.spec(), static_cast<int>(i));
        qubits.push_back({{"index", i}, {"tile_row", q.tile_row}, {"tile_col", q.tile_col},
                          {"orientation", orientation_tag(q.orientation)}, {"shore", q.shore}});
    }
    Json couplers = Json::array();
    for (const auto& c : g.couplers())
        couplers.push_back({{"u", c.u}, {"v", c.v}, {"kind", to_string(c.kind)}});
    return Json{{"spec", to_json(g.spec())},
                {"num_qubits", g.num_qubits()},
                {"num_couplers", g.couplers().size()},
                {"qubits", qubits},
                {"couplers", couplers}};
}

HardwareGraph graph_from_json(const Json& j) {
    check_keys(j, {"spec", "num_qubits", "num_couplers", "qubits", "couplers"}, "graph");
    HardwareGraph g = build_chimera(spec_from_json(field(j, "spec", "graph")));
    if (j.contains("num_qubits") && get<std::size_t>(j, "num_qubits", "graph") != g.num_qubits())
        throw FormatError("graph: num_qubits does not match spec");
    if (j.contains("couplers")) {
        const Json& cs = j["couplers"];
        if (!cs.is_array() || cs.size() != g.couplers().size())
            throw FormatError("graph: couplers do not match spec");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string ctx = "graph.couplers[" + std::to_string(i) + "]";
            check_keys(cs[i], {"u", "v", "kind"}, ctx);
            const int u = get<int>(cs[i], "u", ctx);
            const int v = get<int>(cs[i], "v", ctx);
            if (u < 0 || v < 0 || !g.has_edge(u, v)) throw FormatError(ctx + ": not a Chimera edge");
        }
    }
    return g;
}

std::string to_dot(const HardwareGraph& g) {
    std::ostringstream os;
    os << "graph chimera {\n";
    for (std::size_t i = 0; i < g.num_qubits(); ++i)
        os << "  " << i << " [label=\"" << to_string(qubit_from_index(g.spec(), static_cast<int>(i)))
           << "\"];\n";
    for (const auto& c : g.couplers()) {
        os << "  " << c.u << " -- " << c.v;
        if (c.kind == CouplerKind::External) os << " [style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

Json to_json(const Embedding& emb) {
    Json chains = Json::array();
    for (const auto& c : emb.chains) chains.push_back({{"logical_id", c.logical_id}, {"qubits", c.qubits}});
    Json inter = Json::array();
    for (const auto& [pair, edges] : emb.inter) {
        Json es = Json::array();
        for (const auto& e : edges) es.push_back({e.first, e.second});
        inter.push_back({{"a", pair.first}, {"b", pair.second}, {"couplers", es}});
    }
    return Json{{"spec", to_json(emb.spec)},
                {"num_physical_qubits", emb.num_physical_qubits()},
                {"chains", chains},
                {"inter", inter}};
}

Embedding embedding_from_json(const Json& j) {
    check_keys(j, {"spec", "num_physical_qubits", "chains", "inter"}, "embedding");
    Embedding emb;
    emb.spec = spec_from_json(field(j, "spec", "embedding"));
    const HardwareGraph g = build_chimera(emb.spec);
    const Json& chains = field(j, "chains", "embedding");
    if (!chains.is_array()) throw FormatError("embedding: chains must be an array");
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const std::string ctx = "embedding.chains[" + std::to_string(i) + "]";
        check_keys(chains[i], {"logical_id", "qubits"}, ctx);
        Chain c;
        c.logical_id = get<int>(chains[i], "logical_id", ctx);
        c.qubits = get<std::vector<int>>(chains[i], "qubits", ctx);
        for (int q : c.qubits)
            if (q < 0 || static_cast<std::size_t>(q) >= g.num_qubits())
                throw FormatError(ctx + ": qubit " + std::to_string(q) + " outside the graph");
        for (std::size_t a = 0; a < c.qubits.size(); ++a)
            for (std::size_t b = a + 1; b < c.qubits.size(); ++b)
                if (g.has_edge(c.qubits[a], c.qubits[b]))
                    c.intra.push_back(make_edge(c.qubits[a], c.qubits[b]));
        emb.chains.push_back(std::move(c));
    }
    collect_inter_couplers(emb, g);
    return emb;
}

Json to_json(const IsingProblem& p, const ChimeraSpec* chimera) {
    Json h = Json::array();
    for (const auto& w : p.h) h.push_back(w.numerator());
    Json J = Json::array();
    for (const auto& [e, w] : p.J) J.push_back({e.first, e.second, w.numerator()});
    Json out{{"nodes", p.num_nodes}, {"h", h}, {"J", J}};
    if (chimera) out["chimera"] = to_json(*chimera);
    return out;
}

namespace {

QuantizedWeight numerator_of(const Json& v, const std::string& ctx) {
    if (!v.is_number()) throw FormatError(ctx + ": expected a number");
    const double x = v.get<double>();
    if (x != std::floor(x))
        throw QuantizationError(ctx + ": " + v.dump() +
                                " is not a whole number of eighths; run quantize first");
    if (std::abs(x) > 8.0)
        throw QuantizationError(ctx + ": numerator " + v.dump() + " outside [-8, 8]");
    return QuantizedWeight::from_numerator(static_cast<int>(x));
}

}  // namespace

IsingProblem problem_from_json(const Json& j, ChimeraSpec* chimera_out) {
    check_keys(j, {"nodes", "h", "J", "chimera"}, "problem");
    const int n = get<int>(j, "nodes", "problem");
    if (n < 0) throw FormatError("problem: nodes must be non-negative");
    IsingProblem p(static_cast<std::size_t>(n));
    if (j.contains("h")) {
        const Json& h = j["h"];
        if (!h.is_array() || h.size() != p.num_nodes)
            throw FormatError("problem: h must list one numerator per node");
        for (std::size_t i = 0; i < h.size(); ++i)
            p.h[i] = numerator_of(h[i], "problem.h[" + std::to_string(i) + "]");
    }
    if (j.contains("J")) {
        const Json& J = j["J"];
        if (!J.is_array()) throw FormatError("problem: J must be an array");
        for (std::size_t i = 0; i < J.size(); ++i) {
            const std::string ctx = "problem.J[" + std::to_string(i) + "]";
            if (!J[i].is_array() || J[i].size() != 3) throw FormatError(ctx + ": expected [a, b, numerator]");
            const int a = get_int(J[i][0], ctx);
            const int b = get_int(J[i][1], ctx);
            if (a < 0 || b < 0 || a >= n || b >= n || a == b)
                throw FormatError(ctx + ": bad endpoints");
            p.set_J(a, b, numerator_of(J[i][2], ctx));
        }
    }
    SimpleGraph graph;
    if (j.contains("chimera")) {
        const ChimeraSpec spec = spec_from_json(j["chimera"]);
        if (spec.num_qubits() != p.num_nodes)
            throw FormatError("problem: nodes does not match the chimera spec");
        graph = to_simple_graph(build_chimera(spec));
        if (chimera_out) *chimera_out = spec;
    } else {
        graph = complete_graph(n);
    }
    p.validate_against(graph);
    return p;
}

IsingProblem load_problem(const std::string& path, ChimeraSpec* chimera_out) {
    return problem_from_json(read_json_file(path), chimera_out);
}

Json to_json(const InductanceMatrix& m) {
    return Json{{"l_lsd", m.l_lsd},         {"l_msd", m.l_msd},         {"l_out", m.l_out},
                {"m_lsd_msd", m.m_lsd_msd}, {"m_lsd_out", m.m_lsd_out}, {"m_msd_out", m.m_msd_out}};
}

InductanceMatrix matrix_from_json(const Json& j) {
    const std::string ctx = "matrix_pH";
    check_keys(j, {"l_lsd", "l_msd", "l_out", "m_lsd_msd", "m_lsd_out", "m_msd_out"}, ctx);
    InductanceMatrix m;
    m.l_lsd = get<double>(j, "l_lsd", ctx);
    m.l_msd = get<double>(j, "l_msd", ctx);
    m.l_out = get<double>(j, "l_out", ctx);
    m.m_lsd_msd = get<double>(j, "m_lsd_msd", ctx);
    m.m_lsd_out = get<double>(j, "m_lsd_out", ctx);
    m.m_msd_out = get<double>(j, "m_msd_out", ctx);
    return m;
}

Json design_input_json(const DacDesign& d) {
    return Json{{"matrix_pH", to_json(d.matrix)}, {"i_in_uA", d.i_in_uA}, {"derating", d.derating}};
}

DacDesign design_from_json(const Json& j) {
    check_keys(j, {"matrix_pH", "i_in_uA", "derating"}, "design");
    const double derating = j.contains("derating") ? get<double>(j, "derating", "design") : 0.0;
    return derive_params(matrix_from_json(field(j, "matrix_pH", "design")),
                         get<double>(j, "i_in_uA", "design"), derating);
}

Json design_report(const DacDesign& d) {
    return Json{{"input", design_input_json(d)},
                {"w_msd_mphi0", d.w_msd},
                {"w_lsd_mphi0", d.w_lsd},
                {"division_ratio", d.division_ratio},
                {"maxsfq_msd", d.maxsfq_msd},
                {"maxsfq_lsd", d.maxsfq_lsd},
                {"range_mphi0", d.range},
                {"effective_bits", d.effective_bits},
                {"covers_msd_step", d.covers_msd_step()}};
}

Json to_json(const DacState& s) { return Json{{"m_lsd", s.m_lsd}, {"m_msd", s.m_msd}}; }

DacState state_from_json(const Json& j) {
    check_keys(j, {"m_lsd", "m_msd"}, "state");
    return {get<int>(j, "m_lsd", "state"), get<int>(j, "m_msd", "state")};
}

Json to_json(const ProgramSequence& seq) {
    Json events = Json::array();
    for (const auto& e : seq.events) {
        if (e.kind == EventKind::Reset) {
            events.push_back({{"kind", "reset"}, {"reset_sfq", e.reset_sfq}});
            continue;
        }
        auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
        events.push_back({{"kind", "pulse"},
                          {"pwr_domain", opt(e.pwr_domain)},
                          {"pwr_sign", e.pwr_sign},
                          {"addr_line", opt(e.addr_line)},
                          {"trig_line", opt(e.trig_line)},
                          {"polarity", e.polarity},
                          {"pulses", e.pulses}});
    }
    return events;
}

ProgramSequence sequence_from_json(const Json& j) {
    if (!j.is_array()) throw FormatError("sequence: expected an array of events");
    ProgramSequence seq;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ctx = "sequence[" + std::to_string(i) + "]";
        const Json& ev = j[i];
        if (!ev.is_object()) throw FormatError(ctx + ": expected an object");
        const auto kind = get<std::string>(ev, "kind", ctx);
        ProgramEvent e;
        if (kind == "reset") {
            check_keys(ev, {"kind", "reset_sfq"}, ctx);
            e.kind = EventKind::Reset;
            e.reset_sfq = ev.contains("reset_sfq") ? get<std::int64_t>(ev, "reset_sfq", ctx) : 0;
        } else if (kind == "pulse") {
            check_keys(ev, {"kind", "pwr_domain", "pwr_sign", "addr_line", "trig_line", "polarity",
                            "pulses"},
                       ctx);
            auto opt = [&](const char* key) -> std::optional<int> {
                if (!ev.contains(key) || ev[key].is_null()) return std::nullopt;
                return get_int(ev[key], ctx + "." + key);
            };
            e.pwr_domain = opt("pwr_domain");
            e.addr_line = opt("addr_line");
            e.trig_line = opt("trig_line");
            e.pwr_sign = get<int>(ev, "pwr_sign", ctx);
            e.polarity = get<int>(ev, "polarity", ctx);
            e.pulses = get<int>(ev, "pulses", ctx);
        } else {
            throw FormatError(ctx + ": unknown kind '" + kind + "'");
        }
        seq.events.push_back(e);
    }
    return seq;
}

Json to_json(const EnergyReport& r) {
    Json per = Json::object();
    for (const auto& [d, n] : r.per_domain_sfq) per[std::to_string(d)] = n;
    return Json{{"total_sfq", r.total_sfq},
                {"reset_sfq", r.reset_sfq},
                {"energy_per_sfq_J", r.energy_per_sfq_J},
                {"total_J", r.total_J},
                {"per_domain_sfq", per}};
}

EnergyReport energy_from_json(const Json& j) {
    const std::string ctx = "energy";
    check_keys(j, {"total_sfq", "reset_sfq", "energy_per_sfq_J", "total_J", "per_domain_sfq"}, ctx);
    EnergyReport r;
    r.total_sfq = get<std::int64_t>(j, "total_sfq", ctx);
    r.reset_sfq = get<std::int64_t>(j, "reset_sfq", ctx);
    r.energy_per_sfq_J = get<double>(j, "energy_per_sfq_J", ctx);
    r.total_J = get<double>(j, "total_J", ctx);
    const Json& per = field(j, "per_domain_sfq", ctx);
    if (!per.is_object()) throw FormatError(ctx + ": per_domain_sfq must be an object");
    for (const auto& [k, v] : per.items()) {
        try {
            r.per_domain_sfq[std::stoi(k)] = v.get<std::int64_t>();
        } catch (const std::exception&) {
            throw FormatError(ctx + ": bad per_domain_sfq entry '" + k + "'");
        }
    }
    return r;
}

Json to_json(const MarginReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"zone", c.zone},
                          {"must_cross", c.must_cross},
                          {"current_sign", c.current_sign},
                          {"flux_mphi0", c.flux_mphi0},
                          {"current_uA", c.current_uA},
                          {"critical_uA", c.critical_uA},
                          {"current_margin_uA", c.current_margin_uA},
                          {"flux_margin_mphi0", c.flux_margin_mphi0},
                          {"ok", c.ok}});
    Json zones = Json::array();
    for (const auto& z : r.zones)
        zones.push_back({{"name", z.name}, {"i_lo_uA", z.i_lo_uA}, {"i_hi_uA", z.i_hi_uA}});
    return Json{{"passed", r.passed},
                {"min_current_margin_uA", r.min_current_margin_uA},
                {"zones", zones},
                {"checks", checks}};
}

std::string critical_line_csv(const CriticalLine& line, int samples) {
    std::ostringstream os;
    os.precision(10);
    os << "phi_mphi0,ic_pos_uA,ic_neg_uA,envelope_uA\n";
    for (const auto& [phi, ic] : sample_critical_line(line, samples))
        os << phi << ',' << ic << ',' << line.at(phi, -1) << ','
           << critical_current(line.params(), phi) << '\n';
    return os.str();
}

Json to_json(const SlotStates& s) {
    Json slots = Json::array();
    for (const auto& [idx, st] : s)
        slots.push_back({{"slot", idx}, {"m_lsd", st.m_lsd}, {"m_msd", st.m_msd}});
    return Json{{"slots", slots}};
}

SlotStates slot_states_from_json(const Json& j) {
    check_keys(j, {"slots"}, "targets");
    const Json& slots = field(j, "slots", "targets");
    if (!slots.is_array()) throw FormatError("targets: slots must be an array");
    SlotStates out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::string ctx = "targets.slots[" + std::to_string(i) + "]";
        check_keys(slots[i], {"slot", "m_lsd", "m_msd"}, ctx);
        const int idx = get<int>(slots[i], "slot", ctx);
        if (out.count(idx)) throw FormatError(ctx + ": duplicate slot " + std::to_string(idx));
        out[idx] = {get<int>(slots[i], "m_lsd", ctx), get<int>(slots[i], "m_msd", ctx)};
    }
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

}  // namespace qactl::io
