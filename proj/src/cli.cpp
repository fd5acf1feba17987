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

#include "qactl/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qactl/address_fabric.hpp"
#include "qactl/error.hpp"
#include "qactl/io.hpp"
#include "qactl/reproduce.hpp"
#include "qactl/units.hpp"

namespace qactl::cli {

namespace {

struct Options {
    int n = 8;
    int m = 4;
    int k = 0;
    std::uint64_t seed = 1;
    int sweeps = 1000;
    int restarts = 16;
    std::string out;
    std::string format;
    std::string file;
    std::string design_file;
    double target = 0.0;
    double i_pwr = 45.0;
    double i_c = 55.0;
    int samples = 201;
    std::string method = "brute";
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    } else {
        io::write_text_file(o.out, text);
    }
}

std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

int cmd_topology(const Options& o, std::ostream& out) {
    const HardwareGraph g = build_chimera({o.n, o.n, o.m});
    if (o.format == "dot") {
        emit(o, out, io::to_dot(g));
    } else if (o.format.empty() || o.format == "json") {
        emit(o, out, dump(io::to_json(g)));
    } else {
        throw ParameterError("topology supports --format json or dot");
    }
    return kExitOk;
}

int cmd_embed(const Options& o, std::ostream& out) {
    const ChimeraSpec spec{o.n, o.n, o.m};
    const Embedding emb = embed_complete(o.k, spec);
    const VerificationReport rep = verify_embedding(emb, build_chimera(spec), o.k);
    io::Json j{{"embedding", io::to_json(emb)},
               {"verification", {{"passed", rep.passed}, {"failures", rep.failures}}}};
    emit(o, out, dump(j));
    return rep.passed ? kExitOk : kExitCheckFailed;
}

DacDesign load_design(const Options& o) {
    return o.design_file.empty() ? reference_design()
                                 : io::design_from_json(io::read_json_file(o.design_file));
}

int cmd_dac_design(const Options& o, std::ostream& out) {
    const DacDesign d = io::design_from_json(io::read_json_file(o.file));
    emit(o, out, dump(io::design_report(d)));
    return d.covers_msd_step() ? kExitOk : kExitCheckFailed;
}

int cmd_dac_compile(const Options& o, std::ostream& out) {
    const DacDesign d = load_design(o);
    const CompileResult r = compile_target(d, o.target);
    io::Json j{{"target_mphi0", o.target},
               {"state", io::to_json(r.state)},
               {"achieved_mphi0", r.achieved},
               {"achieved_Wb", units::mPhi0_to_Wb(r.achieved)},
               {"error_mphi0", r.error},
               {"within_half_lsd", r.error <= d.w_lsd / 2.0 + 1e-12}};
    emit(o, out, dump(j));
    return kExitOk;
}

DacDesign programming_or_file(const Options& o) {
    return o.design_file.empty() ? programming_design()
                                 : io::design_from_json(io::read_json_file(o.design_file));
}

int cmd_margin(const Options& o, std::ostream& out, std::ostream& err) {
    const CriticalLine line(PulseSourceParams{});
    const double span = loop_current_span(programming_or_file(o));
    const auto lv = find_operating_point(line, o.i_pwr, span);
    BiasLevels levels = lv.value_or(BiasLevels{o.i_pwr, 0.0, 0.0});
    const MarginReport rep = check_margins(line, levels, span);
    if (o.format == "json") {
        io::Json j = io::to_json(rep);
        j["levels"] = {{"i_pwr_uA", levels.i_pwr_uA},
                       {"phi_addr_mphi0", levels.phi_addr_mphi0},
                       {"phi_trig_mphi0", levels.phi_trig_mphi0}};
        j["i_in_span_uA"] = span;
        j["extent_mphi0"] = line.extent();
        emit(o, out, dump(j));
    } else if (o.format.empty() || o.format == "csv") {
        emit(o, out, io::critical_line_csv(line, o.samples));
        err << std::fixed << std::setprecision(3) << "levels: PWR " << levels.i_pwr_uA
            << " uA, ADDR " << levels.phi_addr_mphi0 << " mPhi0, TRIG " << levels.phi_trig_mphi0
            << " mPhi0, span " << span << " uA\n";
        for (const auto& z : rep.zones)
            err << "zone " << z.name << ": [" << z.i_lo_uA << ", " << z.i_hi_uA << "] uA\n";
        err << "margins " << (rep.passed ? "pass" : "FAIL") << ", min " << rep.min_current_margin_uA
            << " uA\n";
    } else {
        throw ParameterError("margin supports --format csv or json");
    }
    return rep.passed ? kExitOk : kExitCheckFailed;
}

int cmd_program(const Options& o, std::ostream& out, std::ostream& err) {
    const AddressFabric fabric = build_fabric(o.n, o.m);
    const DacDesign design = programming_or_file(o);
    const SlotStates targets = io::slot_states_from_json(io::read_json_file(o.file));
    const ProgramSequence seq = compile_program(fabric, targets, design);

    const CriticalLine line(PulseSourceParams{});
    const double span = loop_current_span(design);
    const auto lv = find_operating_point(line, o.i_pwr, span);
    if (!lv) throw MarginError("no passing operating point at PWR " + std::to_string(o.i_pwr) + " uA");
    const PulseProgrammer prog(line, *lv, span);
    const auto states = simulate(fabric, seq, design, prog, line);

    int mismatches = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto it = targets.find(static_cast<int>(i));
        const DacState want = it == targets.end() ? DacState{} : it->second;
        if (states[i].m_lsd != want.m_lsd || states[i].m_msd != want.m_msd) ++mismatches;
    }
    const EnergyReport energy = energy_of(seq, o.i_c);
    io::Json j{{"sequence", io::to_json(seq)},
               {"simulation", {{"slots", states.size()}, {"mismatches", mismatches}}},
               {"energy", io::to_json(energy)}};
    emit(o, out, dump(j));
    err << seq.num_pulse_events() << " pulse events, " << energy.total_sfq << " SFQ, "
        << energy.total_J << " J, " << mismatches << " mismatched slots\n";
    return mismatches == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const IsingProblem p = io::load_problem(o.file);
    SolveResult r;
    if (o.method == "brute") {
        r = brute_force(p);
    } else if (o.method == "anneal") {
        r = anneal(p, {o.sweeps, o.restarts, o.seed});
    } else {
        throw ParameterError("unknown method '" + o.method + "'");
    }
    std::vector<int> spins(r.best_config.begin(), r.best_config.end());
    io::Json j{{"method", o.method},
               {"energy", r.best_energy.to_fraction()},
               {"energy_value", r.best_energy.value()},
               {"config", spins}};
    if (o.method == "anneal") j["seed"] = o.seed;
    emit(o, out, dump(j));
    return kExitOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
    const auto rows = reproduce_table(o.seed);
    std::ostringstream os;
    bool all = true;
    os << std::left << std::setw(32) << "quantity" << std::setw(22) << "expected" << std::setw(30)
       << "actual" << "result\n";
    for (const auto& r : rows) {
        os << std::left << std::setw(32) << r.quantity << std::setw(22) << r.expected
           << std::setw(30) << r.actual << (r.pass ? "pass" : "FAIL") << '\n';
        all = all && r.pass;
    }
    emit(o, out, os.str());
    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qactl: Chimera annealer control-architecture toolkit", "qactl"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "Write the result to this file");
        c->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"json", "dot", "csv"}));
    };

    auto* topo = app.add_subcommand("topology", "Export the Chimera graph");
    topo->add_option("--n", o.n, "Tiles per side")->check(CLI::PositiveNumber);
    topo->add_option("--m", o.m, "Qubits per shore")->check(CLI::PositiveNumber);
    common(topo);

    auto* emb = app.add_subcommand("embed", "Embed K_k into C_n and verify");
    emb->add_option("--k", o.k, "Logical clique size")->required();
    emb->add_option("--n", o.n, "Tiles per side")->check(CLI::PositiveNumber);
    emb->add_option("--m", o.m, "Qubits per shore")->check(CLI::PositiveNumber);
    common(emb);

    auto* dac = app.add_subcommand("dac", "Flux-DAC design tools");
    dac->require_subcommand(1);
    auto* design = dac->add_subcommand("design", "Audit a DAC design file");
    design->add_option("file", o.file, "Design JSON")->required()->check(CLI::ExistingFile);
    common(design);
    auto* compile = dac->add_subcommand("compile", "Compile a flux target to a DAC state");
    compile->add_option("--target", o.target, "Target flux, mPhi0")->required();
    compile->add_option("--design", o.design_file, "Design JSON (default: reference)")
        ->check(CLI::ExistingFile);
    common(compile);

    auto* margin = app.add_subcommand("margin", "Critical-line curve and margin zones");
    margin->add_option("--pwr", o.i_pwr, "PWR level, uA");
    margin->add_option("--samples", o.samples, "Curve samples")->check(CLI::Range(2, 100000));
    margin->add_option("--design", o.design_file, "Design JSON (default: programming design)")
        ->check(CLI::ExistingFile);
    common(margin);

    auto* program = app.add_subcommand("program", "Compile, simulate and cost a fabric program");
    program->add_option("--targets", o.file, "Slot targets JSON")->required()->check(CLI::ExistingFile);
    program->add_option("--n", o.n, "Tiles per side (even)");
    program->add_option("--m", o.m, "Qubits per shore")->check(CLI::PositiveNumber);
    program->add_option("--design", o.design_file, "Design JSON (default: programming design)")
        ->check(CLI::ExistingFile);
    program->add_option("--pwr", o.i_pwr, "PWR level, uA");
    program->add_option("--ic", o.i_c, "Junction critical current for energy, uA");
    common(program);

    auto* solve = app.add_subcommand("solve", "Find the ground state of an Ising problem");
    solve->add_option("problem", o.file, "Problem JSON")->required()->check(CLI::ExistingFile);
    solve->add_option("--method", o.method, "brute or anneal")
        ->check(CLI::IsMember({"brute", "anneal"}));
    solve->add_option("--seed", o.seed, "Anneal seed");
    solve->add_option("--sweeps", o.sweeps, "Anneal sweeps")->check(CLI::PositiveNumber);
    solve->add_option("--restarts", o.restarts, "Anneal restarts")->check(CLI::PositiveNumber);
    common(solve);

    auto* repro = app.add_subcommand("reproduce", "Print the headline figures with pass/fail");
    repro->add_option("--seed", o.seed, "Seed for the end-to-end problems");
    common(repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        const int code = app.exit(e, os, os);
        err << os.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*topo) return cmd_topology(o, out);
        if (*emb) return cmd_embed(o, out);
        if (*design) return cmd_dac_design(o, out);
        if (*compile) return cmd_dac_compile(o, out);
        if (*margin) return cmd_margin(o, out, err);
        if (*program) return cmd_program(o, out, err);
        if (*solve) return cmd_solve(o, out);
        if (*repro) return cmd_reproduce(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace qactl::cli
