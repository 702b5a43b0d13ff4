// Copyright 2026 The qlat Authors
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

// qlat: resource and reaction-time estimates for surface-code machines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qlat/assembler.h"
#include "qlat/config.h"
#include "qlat/report.h"
#include "qlat/sim.h"
#include "qlat/windows.h"

namespace {

using namespace qlat;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::infeasible_budget:
        case ErrorKind::infeasible_distance_cap:
        case ErrorKind::infeasible_communication_bound:
            return kExitInfeasible;
        case ErrorKind::deadlock:
            return kExitInternal;
        default:
            return kExitConfig;
    }
}

struct Globals {
    std::string config_path;
    std::string format;
    std::string output;
    int jobs = 1;
};

struct Overrides {
    std::string circuit;
    std::string decoder;
    std::string objective;
    std::optional<double> budget;
};

void add_overrides(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--circuit", o.circuit, "circuit preset (fermi_hubbard, conotoxin)");
    cmd->add_option("--decoder", o.decoder,
                    "decoder preset (cc_fpga, cc_asic, alphaqubit, pymatching, ideal)");
    cmd->add_option("--objective", o.objective, "time_optimal or space_optimal")
        ->check(CLI::IsMember({"time_optimal", "space_optimal"}));
    cmd->add_option("--budget", o.budget, "logical error budget");
}

RunConfig load(const Globals &g, const Overrides &o) {
    RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_config_file(g.config_path);
    if (!o.circuit.empty()) {
        auto c = find_circuit_preset(o.circuit);
        if (!c) {
            throw Error(ErrorKind::config, "unknown circuit preset '" + o.circuit + "'");
        }
        cfg.circuit = *c;
    }
    if (!o.decoder.empty()) {
        auto m = find_decoder_preset(o.decoder);
        if (!m) {
            throw Error(ErrorKind::config, "unknown decoder preset '" + o.decoder + "'");
        }
        cfg.decoder = *m;
        cfg.sim.decoder = *m;
    }
    if (!o.objective.empty()) {
        cfg.assembler.objective = o.objective == "time_optimal" ? Objective::time_optimal
                                                                : Objective::space_optimal;
    }
    if (o.budget) {
        cfg.circuit.error_budget = *o.budget;
    }
    return cfg;
}

Format format_or(const Globals &g, Format fallback) {
    return g.format.empty() ? fallback : parse_format(g.format);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qlat: decoder latency, reaction time and footprint estimates"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("-c,--config", g.config_path, "JSON configuration file")
        ->envname("QLAT_CONFIG");
    app.add_option("-f,--format", g.format, "output format: csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("-o,--output", g.output, "write to this file instead of stdout");
    app.add_option("-j,--jobs", g.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

    // estimate
    auto *estimate = app.add_subcommand("estimate", "assemble one architecture");
    Overrides est_o;
    add_overrides(estimate, est_o);
    std::optional<double> est_gamma_us, est_gamma_cycles;
    auto *gus = estimate->add_option("--gamma-us", est_gamma_us,
                                     "fixed reaction time in us for memory and surgery");
    estimate->add_option("--gamma-cycles", est_gamma_cycles,
                         "fixed reaction time in core logical cycles")
        ->excludes(gus);

    // sweep-reaction
    auto *sweep = app.add_subcommand("sweep-reaction", "footprint versus reaction time");
    Overrides sw_o;
    add_overrides(sweep, sw_o);
    double sw_min = 1, sw_max = 1000;
    int sw_points = 31;
    std::string sw_unit = "cycles";
    sweep->add_option("--gamma-min", sw_min, "first reaction time")->check(CLI::PositiveNumber);
    sweep->add_option("--gamma-max", sw_max, "last reaction time")->check(CLI::PositiveNumber);
    sweep->add_option("--points", sw_points, "log-spaced points")->check(CLI::PositiveNumber);
    sweep->add_option("--unit", sw_unit, "cycles (core logical cycles) or us")
        ->check(CLI::IsMember({"cycles", "us"}));

    // decoder-speed
    auto *speed = app.add_subcommand("decoder-speed", "required per-round decoding speed");
    std::string sp_sweep = "t_count";
    std::vector<double> sp_tc = {3600.0, 30 * 86400.0};
    int sp_d = 31;
    double sp_t = 1e8;
    double sp_min = 1e4, sp_max = 1e13;
    int sp_points = 91;
    std::optional<double> sp_tcom;
    speed->add_option("--sweep", sp_sweep, "t_count or d")
        ->check(CLI::IsMember({"t_count", "d"}));
    speed->add_option("--t-circuit-s", sp_tc, "target circuit runtimes in seconds");
    speed->add_option("--d", sp_d, "distance held fixed when sweeping t_count");
    speed->add_option("--t-count", sp_t, "T count held fixed when sweeping d");
    speed->add_option("--min", sp_min, "first sweep value (t_count, or odd d)");
    speed->add_option("--max", sp_max, "last sweep value");
    speed->add_option("--points", sp_points, "log-spaced t_count points")
        ->check(CLI::PositiveNumber);
    speed->add_option("--t-com-us", sp_tcom, "replace the communication latencies by one total");

    // decoders
    auto *fleet = app.add_subcommand("decoders", "decoder fleet and syndrome memory");
    std::string fl_decoder;
    std::optional<double> fl_qpu, fl_frac, fl_uplift, fl_bytes;
    std::optional<int> fl_d;
    fleet->add_option("--decoder", fl_decoder, "decoder preset");
    fleet->add_option("--qpu-qubits", fl_qpu, "physical qubits of the machine");
    fleet->add_option("--core-fraction", fl_frac, "share of qubits in the core");
    fleet->add_option("--d", fl_d, "core code distance");
    fleet->add_option("--uplift", fl_uplift, "extra decoders for distillation");
    fleet->add_option("--bytes-per-syndrome", fl_bytes, "1, or 0.125 for packed bits");

    // simulate
    auto *simulate = app.add_subcommand("simulate", "discrete-event pipeline simulation");
    Overrides si_o;
    simulate->add_option("--decoder", si_o.decoder, "decoder preset");
    std::string si_mode = "chain";
    std::optional<int> si_d, si_n, si_inj, si_streams;
    std::optional<int64_t> si_seed;
    std::optional<double> si_jitter;
    bool si_co_store = false;
    std::string si_trace, si_windows;
    simulate->add_option("--mode", si_mode, "chain (rotation gadgets) or msf (one 15-to-1 unit)")
        ->check(CLI::IsMember({"chain", "msf"}));
    simulate->add_option("--d", si_d, "code distance");
    simulate->add_option("--n-decoders", si_n, "decoder pool size; 0 derives a sufficient pool");
    simulate->add_option("--n-injections", si_inj, "gadgets (chain) or magic states (msf)");
    simulate->add_option("--streams", si_streams, "idle memory patches decoded alongside");
    simulate->add_option("--seed", si_seed, "jitter seed");
    simulate->add_option("--jitter", si_jitter, "relative decode-time jitter in [0, 1)");
    simulate->add_flag("--co-store", si_co_store, "store the produced magic state in the pool");
    simulate->add_option("--trace", si_trace, "write the event trace as JSON lines");
    simulate->add_option("--windows", si_windows, "surgery windows as JSON lines");

    // windows
    auto *windows = app.add_subcommand("windows", "emit decoding windows as JSON lines");
    std::string wi_kind = "surgery";
    int wi_d = 5, wi_cycles = 8, wi_nx = 2, wi_nz = 1;
    bool wi_y = false;
    windows->add_option("--kind", wi_kind, "memory or surgery")
        ->check(CLI::IsMember({"memory", "surgery"}));
    windows->add_option("--d", wi_d, "code distance");
    windows->add_option("--cycles", wi_cycles, "memory length in logical cycles");
    windows->add_option("--nx", wi_nx, "patches along x");
    windows->add_option("--nz", wi_nz, "patches along z");
    windows->add_flag("--y", wi_y, "surgery includes a Y component");

    // config
    auto *config = app.add_subcommand("config", "print the effective configuration or schema");
    bool cf_schema = false;
    config->add_flag("--schema", cf_schema, "print the JSON Schema instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    std::ofstream file;
    if (!g.output.empty()) {
        file.open(g.output);
        if (!file) {
            std::cerr << "error: cannot write " << g.output << '\n';
            return kExitConfig;
        }
    }
    std::ostream &out = g.output.empty() ? std::cout : file;

    try {
        if (estimate->parsed()) {
            RunConfig cfg = load(g, est_o);
            Format f = format_or(g, Format::json);
            Microarchitecture arch;
            if (est_gamma_us || est_gamma_cycles) {
                GammaUnit unit = est_gamma_us ? GammaUnit::micros : GammaUnit::core_cycles;
                double v = est_gamma_us ? *est_gamma_us : *est_gamma_cycles;
                auto rows = sweep_reaction_time(cfg.circuit, cfg.hardware, cfg.fits, {v}, unit,
                                                cfg.assembler);
                if (!rows[0].arch) {
                    throw Error(*rows[0].error_kind, rows[0].error);
                }
                arch = *rows[0].arch;
            } else {
                arch = assemble(cfg.circuit, cfg.hardware, cfg.fits, cfg.decoder, cfg.comms,
                                cfg.assembler);
            }
            write_architecture(arch, cfg.circuit, f, out);
        } else if (sweep->parsed()) {
            RunConfig cfg = load(g, sw_o);
            if (sw_points > 1 && !(sw_min < sw_max)) {
                throw Error(ErrorKind::config, "--gamma-min must be below --gamma-max");
            }
            GammaUnit unit = sw_unit == "us" ? GammaUnit::micros : GammaUnit::core_cycles;
            auto rows = sweep_reaction_time(cfg.circuit, cfg.hardware, cfg.fits,
                                            log_space(sw_min, sw_max, sw_points), unit,
                                            cfg.assembler, g.jobs);
            for (const auto &r : rows) {
                if (!r.arch) {
                    std::cerr << "warning: gamma " << r.gamma_input << ": " << r.error << '\n';
                }
            }
            if (format_or(g, Format::csv) == Format::json) {
                write_sweep_json(rows, out);
            } else {
                write_sweep_csv(rows, out);
            }
        } else if (speed->parsed()) {
            RunConfig cfg = load(g, {});
            CommLatencies c = sp_tcom ? CommLatencies::with_total(Micros(*sp_tcom)) : cfg.comms;
            std::vector<double> values;
            SpeedSweep kind = sp_sweep == "d" ? SpeedSweep::distance : SpeedSweep::t_count;
            if (kind == SpeedSweep::distance) {
                int lo = speed->count("--min") ? static_cast<int>(sp_min) : 3;
                int hi = speed->count("--max") ? static_cast<int>(sp_max) : 61;
                for (int d = lo | 1; d <= hi; d += 2) {
                    values.push_back(d);
                }
            } else {
                values = log_space(sp_min, sp_max, sp_points);
            }
            auto rows = decoder_speed_rows(sp_tc, kind, values, sp_d, sp_t, c);
            if (format_or(g, Format::csv) == Format::json) {
                write_speed_json(rows, out);
            } else {
                write_speed_csv(rows, out);
            }
        } else if (fleet->parsed()) {
            RunConfig cfg = load(g, {"", fl_decoder, "", std::nullopt});
            FleetScenario s = cfg.fleet;
            if (fl_qpu) s.qpu_qubits = *fl_qpu;
            if (fl_frac) s.core_fraction = *fl_frac;
            if (fl_d) s.d = *fl_d;
            if (fl_uplift) s.options.msf_uplift = *fl_uplift;
            if (fl_bytes) s.options.bytes_per_syndrome = *fl_bytes;
            int q = core_logical_qubits(s.qpu_qubits, s.core_fraction, s.d, s.tiles_per_qubit);
            DecoderFleet f = fleet_estimate(q, s.d, cfg.decoder, cfg.comms, s.options);
            write_fleet(f, s, cfg.decoder, format_or(g, Format::json), out);
        } else if (simulate->parsed()) {
            RunConfig cfg = load(g, si_o);
            SimConfig sc = cfg.sim;
            if (si_d) sc.d = *si_d;
            if (si_inj) sc.n_injections = *si_inj;
            if (si_streams) sc.memory_streams = *si_streams;
            if (si_seed) sc.seed = static_cast<uint64_t>(*si_seed);
            if (si_jitter) sc.jitter = *si_jitter;
            if (si_co_store) sc.co_store_magic_state = true;
            sc.record_trace = !si_trace.empty();
            WindowSet surgery = default_surgery_windows(sc.d);
            if (!si_windows.empty()) {
                std::ifstream in(si_windows);
                if (!in) {
                    throw Error(ErrorKind::config, "cannot read windows file " + si_windows);
                }
                surgery = read_windows_jsonl(in);
            }
            if (si_n) {
                sc.n_decoders = *si_n;
            }
            if (si_n && *si_n == 0) {
                sc.n_decoders = si_mode == "msf" ? msf_decoder_count(sc)
                                                 : analytic_decoder_count(sc, surgery);
            }
            SimReport r = si_mode == "msf" ? run_msf_unit(sc) : run(sc, surgery);
            if (!si_trace.empty()) {
                std::ofstream t(si_trace);
                write_trace_jsonl(r.trace, t);
            }
            write_report_json(r, out);
        } else if (windows->parsed()) {
            WindowSet set = wi_kind == "memory" ? memory_windows(wi_cycles, wi_d)
                                                : surgery_windows(wi_nx, wi_nz, wi_d, wi_y);
            write_windows_jsonl(set, out);
        } else if (config->parsed()) {
            out << (cf_schema ? config_schema() : dump_config(load(g, {}))) << '\n';
        }
    } catch (const Error &e) {
        std::cerr << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}
