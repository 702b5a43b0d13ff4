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

#include "qlat/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qlat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &msg) { throw Error(ErrorKind::config, msg); }

// Reads typed fields out of one JSON object and rejects anything left over.
class Section {
   public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail(path_ + " must be an object");
        }
    }

    template <typename T>
    void get(const char *key, T &out) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) {
            return;
        }
        try {
            if constexpr (std::is_same_v<T, int> || std::is_same_v<T, int64_t>) {
                if (!it->is_number_integer()) {
                    fail(where(key) + " must be an integer");
                }
            } else if constexpr (std::is_same_v<T, double>) {
                if (!it->is_number()) {
                    fail(where(key) + " must be a number");
                }
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!it->is_boolean()) {
                    fail(where(key) + " must be true or false");
                }
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!it->is_string()) {
                    fail(where(key) + " must be a string");
                }
            }
            out = it->get<T>();
        } catch (const json::exception &e) {
            fail(where(key) + ": " + e.what());
        }
    }

    void get_us(const char *key, Micros &out) {
        double v = out.count();
        get(key, v);
        out = Micros(v);
    }

    void get_optional(const char *key, std::optional<int> &out) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end() || it->is_null()) {
            return;
        }
        int v = 0;
        get(key, v);
        out = v;
    }

    const json *child(const char *key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string where(const std::string &key) const { return path_ + "." + key; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                fail("unknown key " + where(it.key()));
            }
        }
    }

   private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

// A section given as a bare preset name, or as an object with an optional
// "preset" entry followed by field overrides.
template <typename T, typename Lookup, typename Fields>
void read_section(const json &j, const std::string &path, T &out, Lookup lookup, Fields fields) {
    if (j.is_string()) {
        out = lookup(j.get<std::string>());
        return;
    }
    Section s(j, path);
    std::string preset;
    s.get("preset", preset);
    if (!preset.empty()) {
        out = lookup(preset);
    }
    fields(s);
    s.finish();
}

HardwareParams hardware_preset(const std::string &name) {
    if (name != "default") {
        fail("unknown hardware preset '" + name + "' (known: default)");
    }
    return {};
}

ErrorFitParams fits_preset(const std::string &name) {
    if (name != "default") {
        fail("unknown fits preset '" + name + "' (known: default)");
    }
    return {};
}

CommLatencies comms_preset(const std::string &name) {
    if (name == "measured") {
        return CommLatencies::measured();
    }
    if (name == "literature_10us") {
        return CommLatencies::literature_10us();
    }
    if (name == "zero") {
        return CommLatencies::zero();
    }
    fail("unknown comms preset '" + name + "' (known: measured, literature_10us, zero)");
}

DecoderModel decoder_preset(const std::string &name) {
    if (auto m = find_decoder_preset(name)) {
        return *m;
    }
    fail("unknown decoder preset '" + name +
         "' (known: cc_fpga, cc_asic, alphaqubit, pymatching, ideal)");
}

CircuitSpec circuit_preset(const std::string &name) {
    if (auto c = find_circuit_preset(name)) {
        return *c;
    }
    fail("unknown circuit preset '" + name + "' (known: fermi_hubbard, conotoxin)");
}

Objective parse_objective(const std::string &s) {
    if (s == "time_optimal") {
        return Objective::time_optimal;
    }
    if (s == "space_optimal") {
        return Objective::space_optimal;
    }
    fail("objective must be time_optimal or space_optimal");
}

const char *objective_name(Objective o) {
    return o == Objective::time_optimal ? "time_optimal" : "space_optimal";
}

void read_decoder(const json &j, DecoderModel &out) {
    if (j.is_string()) {
        out = decoder_preset(j.get<std::string>());
        return;
    }
    Section s(j, "decoder");
    std::string preset;
    s.get("preset", preset);
    if (!preset.empty()) {
        out = decoder_preset(preset);
    }
    std::string name = preset.empty() ? "custom" : out.name();
    double alpha = out.alpha_s(), beta = out.beta();
    s.get("name", name);
    s.get("alpha_s", alpha);
    s.get("beta", beta);
    s.finish();
    if (out.is_ideal() && alpha == out.alpha_s() && beta == out.beta()) {
        return;
    }
    try {
        out = DecoderModel(name, alpha, beta);
    } catch (const Error &e) {
        fail(std::string("decoder: ") + e.what());
    }
}

template <typename F>
void validated(const char *section, F f) {
    try {
        f();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::config) {
            throw;
        }
        fail(std::string(section) + ": " + e.what());
    }
}

}  // namespace

RunConfig parse_config(const std::string &text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception &e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    RunConfig cfg;
    Section top(root, "config");

    if (const json *j = top.child("hardware")) {
        read_section(*j, "hardware", cfg.hardware, hardware_preset, [&](Section &s) {
            HardwareParams &h = cfg.hardware;
            s.get("t1_us", h.t1_us);
            s.get("t2_us", h.t2_us);
            s.get("err_1q", h.err_1q);
            s.get("err_2q", h.err_2q);
            s.get("err_prep", h.err_prep);
            s.get("err_meas", h.err_meas);
            s.get("err_reset", h.err_reset);
            s.get("time_1q_ns", h.time_1q_ns);
            s.get("time_2q_ns", h.time_2q_ns);
            s.get("time_prep_ns", h.time_prep_ns);
            s.get("time_meas_ns", h.time_meas_ns);
            s.get("time_reset_ns", h.time_reset_ns);
            s.get("stab_round_us", h.stab_round_us);
        });
    }
    if (const json *j = top.child("fits")) {
        read_section(*j, "fits", cfg.fits, fits_preset, [&](Section &s) {
            ErrorFitParams &f = cfg.fits;
            s.get("mu", f.mu);
            s.get("lambda", f.lambda);
            s.get("mu_s", f.mu_s);
            s.get("lambda_s", f.lambda_s);
            s.get("mu_t", f.mu_t);
            s.get("lambda_t", f.lambda_t);
            s.get("p_magic", f.p_magic);
            s.get("discard_magic", f.discard_magic);
        });
    }
    if (const json *j = top.child("comms")) {
        read_section(*j, "comms", cfg.comms, comms_preset, [&](Section &s) {
            CommLatencies &c = cfg.comms;
            s.get_us("t_qc_us", c.t_qc);
            s.get_us("t_cd_us", c.t_cd);
            s.get_us("t_dd_us", c.t_dd);
            s.get_us("t_do_us", c.t_do);
            s.get_us("t_oc_us", c.t_oc);
            s.get_us("t_cq_us", c.t_cq);
        });
    }
    if (const json *j = top.child("decoder")) {
        read_decoder(*j, cfg.decoder);
    }
    if (const json *j = top.child("circuit")) {
        read_section(*j, "circuit", cfg.circuit, circuit_preset, [&](Section &s) {
            CircuitSpec &c = cfg.circuit;
            s.get("name", c.name);
            s.get("q_logical", c.q_logical);
            s.get("t_count", c.t_count);
            s.get("k_avg", c.k_avg);
            s.get("b_avg", c.b_avg);
            s.get("error_budget", c.error_budget);
        });
    }
    if (const json *j = top.child("assembler")) {
        Section s(*j, "assembler");
        AssemblerOptions &a = cfg.assembler;
        std::string objective = objective_name(a.objective);
        s.get("objective", objective);
        a.objective = parse_objective(objective);
        s.get("core_budget_fraction", a.core_budget_fraction);
        s.get("distance_cap", a.distance_cap);
        s.get("max_levels", a.max_levels);
        s.get("unit_rotations", a.unit_rotations);
        s.get("unit_inputs", a.unit_inputs);
        s.get("distill_coefficient", a.distill_coefficient);
        s.get("unit_k_avg", a.unit_k_avg);
        s.get("unit_b_avg", a.unit_b_avg);
        s.get("transport_cycles", a.transport_cycles);
        s.get("core_tiles_per_qubit", a.core_tiles_per_qubit);
        s.get("core_extra_tiles", a.core_extra_tiles);
        s.get("co_store_magic_state", a.co_store_magic_state);
        if (const json *fj = s.child("footprint")) {
            Section f(*fj, "assembler.footprint");
            UnitFootprint &u = a.footprint;
            f.get("du_data_tiles", u.du_data_tiles);
            f.get("bus_tiles", u.bus_tiles);
            f.get("output_tiles", u.output_tiles);
            f.get("magic_storage_tiles", u.magic_storage_tiles);
            f.get("growth_tiles", u.growth_tiles);
            f.get("correction_prep_tiles", u.correction_prep_tiles);
            f.finish();
        }
        s.finish();
    }
    if (const json *j = top.child("sim")) {
        Section s(*j, "sim");
        SimConfig &m = cfg.sim;
        s.get("d", m.d);
        s.get("n_decoders", m.n_decoders);
        s.get("n_injections", m.n_injections);
        int64_t seed = static_cast<int64_t>(m.seed);
        s.get("seed", seed);
        m.seed = static_cast<uint64_t>(seed);
        s.get("jitter", m.jitter);
        s.get("memory_streams", m.memory_streams);
        s.get("lookahead", m.lookahead);
        s.get_optional("storage_capacity", m.storage_capacity);
        s.get("co_store_magic_state", m.co_store_magic_state);
        s.get("warmup_fraction", m.warmup_fraction);
        s.get("max_jobs", m.max_jobs);
        s.finish();
    }
    if (const json *j = top.child("fleet")) {
        Section s(*j, "fleet");
        FleetScenario &f = cfg.fleet;
        s.get("qpu_qubits", f.qpu_qubits);
        s.get("core_fraction", f.core_fraction);
        s.get("d", f.d);
        s.get("tiles_per_qubit", f.tiles_per_qubit);
        s.get("msf_uplift", f.options.msf_uplift);
        s.get("n_syndrome_qubits", f.options.n_syndrome_qubits);
        s.get("bytes_per_syndrome", f.options.bytes_per_syndrome);
        s.get_optional("multiplicity", f.options.multiplicity);
        s.finish();
    }
    top.finish();

    // Sim and fleet inherit the shared sections.
    cfg.sim.decoder = cfg.decoder;
    cfg.sim.comms = cfg.comms;
    cfg.sim.stab_round = cfg.hardware.stab_round();
    cfg.fleet.options.stab_round = cfg.hardware.stab_round();

    validated("hardware", [&] { cfg.hardware.validate(); });
    validated("fits", [&] { cfg.fits.validate(); });
    validated("comms", [&] { cfg.comms.validate(); });
    validated("circuit", [&] { cfg.circuit.validate(); });
    validated("assembler", [&] { cfg.assembler.validate(); });
    validated("sim", [&] { cfg.sim.validate(); });
    validated("fleet", [&] {
        require_distance(cfg.fleet.d);
        if (!(cfg.fleet.qpu_qubits > 0 && cfg.fleet.core_fraction > 0 &&
              cfg.fleet.core_fraction <= 1)) {
            throw Error(ErrorKind::invalid_argument,
                        "qpu_qubits must be > 0 and core_fraction in (0, 1]");
        }
    });
    return cfg;
}

RunConfig load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot read config file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig &cfg) {
    const HardwareParams &h = cfg.hardware;
    const ErrorFitParams &f = cfg.fits;
    const CommLatencies &c = cfg.comms;
    const CircuitSpec &q = cfg.circuit;
    const AssemblerOptions &a = cfg.assembler;
    const SimConfig &m = cfg.sim;
    const FleetScenario &fl = cfg.fleet;
    json decoder = cfg.decoder.is_ideal()
                       ? json("ideal")
                       : json{{"name", cfg.decoder.name()},
                              {"alpha_s", cfg.decoder.alpha_s()},
                              {"beta", cfg.decoder.beta()}};
    json out = {
        {"hardware",
         {{"t1_us", h.t1_us},
          {"t2_us", h.t2_us},
          {"err_1q", h.err_1q},
          {"err_2q", h.err_2q},
          {"err_prep", h.err_prep},
          {"err_meas", h.err_meas},
          {"err_reset", h.err_reset},
          {"time_1q_ns", h.time_1q_ns},
          {"time_2q_ns", h.time_2q_ns},
          {"time_prep_ns", h.time_prep_ns},
          {"time_meas_ns", h.time_meas_ns},
          {"time_reset_ns", h.time_reset_ns},
          {"stab_round_us", h.stab_round_us}}},
        {"fits",
         {{"mu", f.mu},
          {"lambda", f.lambda},
          {"mu_s", f.mu_s},
          {"lambda_s", f.lambda_s},
          {"mu_t", f.mu_t},
          {"lambda_t", f.lambda_t},
          {"p_magic", f.p_magic},
          {"discard_magic", f.discard_magic}}},
        {"comms",
         {{"t_qc_us", c.t_qc.count()},
          {"t_cd_us", c.t_cd.count()},
          {"t_dd_us", c.t_dd.count()},
          {"t_do_us", c.t_do.count()},
          {"t_oc_us", c.t_oc.count()},
          {"t_cq_us", c.t_cq.count()}}},
        {"decoder", decoder},
        {"circuit",
         {{"name", q.name},
          {"q_logical", q.q_logical},
          {"t_count", q.t_count},
          {"k_avg", q.k_avg},
          {"b_avg", q.b_avg},
          {"error_budget", q.error_budget}}},
        {"assembler",
         {{"objective", objective_name(a.objective)},
          {"core_budget_fraction", a.core_budget_fraction},
          {"distance_cap", a.distance_cap},
          {"max_levels", a.max_levels},
          {"unit_rotations", a.unit_rotations},
          {"unit_inputs", a.unit_inputs},
          {"distill_coefficient", a.distill_coefficient},
          {"unit_k_avg", a.unit_k_avg},
          {"unit_b_avg", a.unit_b_avg},
          {"transport_cycles", a.transport_cycles},
          {"core_tiles_per_qubit", a.core_tiles_per_qubit},
          {"core_extra_tiles", a.core_extra_tiles},
          {"co_store_magic_state", a.co_store_magic_state},
          {"footprint",
           {{"du_data_tiles", a.footprint.du_data_tiles},
            {"bus_tiles", a.footprint.bus_tiles},
            {"output_tiles", a.footprint.output_tiles},
            {"magic_storage_tiles", a.footprint.magic_storage_tiles},
            {"growth_tiles", a.footprint.growth_tiles},
            {"correction_prep_tiles", a.footprint.correction_prep_tiles}}}}},
        {"sim",
         {{"d", m.d},
          {"n_decoders", m.n_decoders},
          {"n_injections", m.n_injections},
          {"seed", static_cast<int64_t>(m.seed)},
          {"jitter", m.jitter},
          {"memory_streams", m.memory_streams},
          {"lookahead", m.lookahead},
          {"storage_capacity", m.storage_capacity ? json(*m.storage_capacity) : json(nullptr)},
          {"co_store_magic_state", m.co_store_magic_state},
          {"warmup_fraction", m.warmup_fraction},
          {"max_jobs", m.max_jobs}}},
        {"fleet",
         {{"qpu_qubits", fl.qpu_qubits},
          {"core_fraction", fl.core_fraction},
          {"d", fl.d},
          {"tiles_per_qubit", fl.tiles_per_qubit},
          {"msf_uplift", fl.options.msf_uplift},
          {"n_syndrome_qubits", fl.options.n_syndrome_qubits},
          {"bytes_per_syndrome", fl.options.bytes_per_syndrome},
          {"multiplicity",
           fl.options.multiplicity ? json(*fl.options.multiplicity) : json(nullptr)}}},
    };
    return out.dump(2);
}

std::string config_schema() {
    auto num = [] { return json{{"type", "number"}}; };
    auto integer = [] { return json{{"type", "integer"}}; };
    auto boolean = [] { return json{{"type", "boolean"}}; };
    auto str = [] { return json{{"type", "string"}}; };
    auto object = [](json props, bool preset) {
        if (preset) {
            props["preset"] = json{{"type", "string"}};
        }
        return json{{"type", "object"}, {"additionalProperties", false}, {"properties", props}};
    };
    auto named = [&](json props, std::vector<std::string> presets) {
        return json{{"oneOf", {json{{"enum", presets}}, object(props, true)}}};
    };
    json hardware = named({{"t1_us", num()},
                           {"t2_us", num()},
                           {"err_1q", num()},
                           {"err_2q", num()},
                           {"err_prep", num()},
                           {"err_meas", num()},
                           {"err_reset", num()},
                           {"time_1q_ns", num()},
                           {"time_2q_ns", num()},
                           {"time_prep_ns", num()},
                           {"time_meas_ns", num()},
                           {"time_reset_ns", num()},
                           {"stab_round_us", num()}},
                          {"default"});
    json fits = named({{"mu", num()},
                       {"lambda", num()},
                       {"mu_s", num()},
                       {"lambda_s", num()},
                       {"mu_t", num()},
                       {"lambda_t", num()},
                       {"p_magic", num()},
                       {"discard_magic", num()}},
                      {"default"});
    json comms = named({{"t_qc_us", num()},
                        {"t_cd_us", num()},
                        {"t_dd_us", num()},
                        {"t_do_us", num()},
                        {"t_oc_us", num()},
                        {"t_cq_us", num()}},
                       {"measured", "literature_10us", "zero"});
    json decoder = named({{"name", str()}, {"alpha_s", num()}, {"beta", num()}},
                         {"cc_fpga", "cc_asic", "alphaqubit", "pymatching", "ideal"});
    json circuit = named({{"name", str()},
                          {"q_logical", integer()},
                          {"t_count", num()},
                          {"k_avg", num()},
                          {"b_avg", num()},
                          {"error_budget", num()}},
                         {"fermi_hubbard", "conotoxin"});
    json footprint = object({{"du_data_tiles", integer()},
                             {"bus_tiles", integer()},
                             {"output_tiles", integer()},
                             {"magic_storage_tiles", integer()},
                             {"growth_tiles", integer()},
                             {"correction_prep_tiles", integer()}},
                            false);
    json assembler = object({{"objective", json{{"enum", {"time_optimal", "space_optimal"}}}},
                             {"core_budget_fraction", num()},
                             {"distance_cap", integer()},
                             {"max_levels", integer()},
                             {"unit_rotations", integer()},
                             {"unit_inputs", integer()},
                             {"distill_coefficient", num()},
                             {"unit_k_avg", num()},
                             {"unit_b_avg", num()},
                             {"transport_cycles", num()},
                             {"core_tiles_per_qubit", num()},
                             {"core_extra_tiles", integer()},
                             {"co_store_magic_state", boolean()},
                             {"footprint", footprint}},
                            false);
    json nullable_int = json{{"type", {"integer", "null"}}};
    json sim = object({{"d", integer()},
                       {"n_decoders", integer()},
                       {"n_injections", integer()},
                       {"seed", integer()},
                       {"jitter", num()},
                       {"memory_streams", integer()},
                       {"lookahead", integer()},
                       {"storage_capacity", nullable_int},
                       {"co_store_magic_state", boolean()},
                       {"warmup_fraction", num()},
                       {"max_jobs", integer()}},
                      false);
    json fleet = object({{"qpu_qubits", num()},
                         {"core_fraction", num()},
                         {"d", integer()},
                         {"tiles_per_qubit", num()},
                         {"msf_uplift", num()},
                         {"n_syndrome_qubits", num()},
                         {"bytes_per_syndrome", num()},
                         {"multiplicity", nullable_int}},
                        false);
    json schema = object({{"hardware", hardware},
                          {"fits", fits},
                          {"comms", comms},
                          {"decoder", decoder},
                          {"circuit", circuit},
                          {"assembler", assembler},
                          {"sim", sim},
                          {"fleet", fleet}},
                         false);
    schema["$schema"] = "https://json-schema.org/draft/2020-12/schema";
    schema["title"] = "qlat run configuration";
    return schema.dump(2);
}

}  // namespace qlat
