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

#ifndef QLAT_REPORT_H
#define QLAT_REPORT_H

#include <iosfwd>
#include <string>
#include <vector>

#include "qlat/assembler.h"
#include "qlat/config.h"
#include "qlat/latency.h"
#include "qlat/windows.h"

namespace qlat {

enum class Format { csv, json, table };

Format parse_format(const std::string &name);

// The fleet size quoted for the 10M-qubit machine, for side-by-side output.
constexpr int kReferenceFleetSize = 15000;
constexpr double kReferenceSyndromeRamBytes = 1800e6;

/// Reaction-time sweep, one row per distillation level of each point.
void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out);
void write_sweep_json(const std::vector<SweepRow> &rows, std::ostream &out);

/// A single architecture in the requested format. CSV reuses the sweep row
/// layout.
void write_architecture(const Microarchitecture &arch, const CircuitSpec &spec, Format format,
                        std::ostream &out);

enum class SpeedSweep { t_count, distance };

struct SpeedRow {
    SpeedSweep sweep = SpeedSweep::t_count;
    double t_count = 0;
    int d = 0;
    double t_circuit_s = 0;
    // Negative when no decoder can reach the target.
    double required_tau_d_s = -1;
    bool feasible = false;
    bool comm_bound = false;
    // tau_d(d^2) of each preset decoder at this distance.
    std::vector<std::pair<std::string, double>> preset_tau_d_s;
};

// Required speeds below this are dominated by communication latency.
constexpr double kCommBoundSpeedS = 1e-7;

/// Required per-round decoding speed for each (t_circuit, sweep value).
/// Sweeping T holds `d` fixed; sweeping d holds `t_count` fixed.
std::vector<SpeedRow> decoder_speed_rows(const std::vector<double> &t_circuits_s,
                                         SpeedSweep sweep, const std::vector<double> &values,
                                         int d, double t_count, const CommLatencies &c);

void write_speed_csv(const std::vector<SpeedRow> &rows, std::ostream &out);
void write_speed_json(const std::vector<SpeedRow> &rows, std::ostream &out);

void write_fleet(const DecoderFleet &fleet, const FleetScenario &scenario,
                 const DecoderModel &model, Format format, std::ostream &out);

/// Fixed-precision number text shared by every emitter.
std::string fmt_num(double v);

}  // namespace qlat

#endif
