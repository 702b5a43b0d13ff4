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

#ifndef QLAT_CONFIG_H
#define QLAT_CONFIG_H

#include <string>

#include "qlat/assembler.h"
#include "qlat/latency.h"
#include "qlat/models.h"
#include "qlat/sim.h"
#include "qlat/windows.h"

namespace qlat {

/// The machine the decoder fleet is sized for.
struct FleetScenario {
    double qpu_qubits = 10e6;
    double core_fraction = 0.9;
    int d = 31;
    double tiles_per_qubit = 2.0;
    FleetOptions options;
};

struct RunConfig {
    HardwareParams hardware;
    ErrorFitParams fits;
    CommLatencies comms;
    DecoderModel decoder = *find_decoder_preset("cc_asic");
    CircuitSpec circuit = *find_circuit_preset("fermi_hubbard");
    AssemblerOptions assembler;
    SimConfig sim;
    FleetScenario fleet;
};

/// Parses a JSON document. Sections may name a preset as a string, or give an
/// object whose optional "preset" key is applied before the other fields.
/// Unknown keys and wrong types raise ErrorKind::config.
RunConfig parse_config(const std::string &json_text);
RunConfig load_config_file(const std::string &path);

/// The effective configuration, re-parseable by parse_config.
std::string dump_config(const RunConfig &config);

/// JSON Schema of the configuration file.
std::string config_schema();

}  // namespace qlat

#endif
