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

#ifndef QLAT_ASSEMBLER_H
#define QLAT_ASSEMBLER_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qlat/latency.h"
#include "qlat/models.h"

namespace qlat {

struct CircuitSpec {
    std::string name = "custom";
    int q_logical = 1;
    double t_count = 1;
    // Mean computational qubits and bus tiles per pi/8 rotation.
    double k_avg = 1;
    double b_avg = 1;
    double error_budget = 0.01;

    void validate() const;
};

/// fermi_hubbard (Q=2562, T=4e6) and conotoxin (Q=241, T=5.11e11).
const std::vector<CircuitSpec> &circuit_presets();
std::optional<CircuitSpec> find_circuit_preset(const std::string &name);

enum class Objective { time_optimal, space_optimal };

/// Tiles of one 15-to-1 distillation unit, each a d x d patch at the level
/// distance. Cultivation slots are only provisioned at the first level and
/// are derived from the discard rate.
struct UnitFootprint {
    int du_data_tiles = 5;
    int bus_tiles = 5;
    int output_tiles = 1;
    int magic_storage_tiles = 1;
    int growth_tiles = 1;
    int correction_prep_tiles = 2;

    int fixed_tiles() const {
        return du_data_tiles + bus_tiles + output_tiles + magic_storage_tiles + growth_tiles +
               correction_prep_tiles;
    }
};

struct AssemblerOptions {
    Objective objective = Objective::time_optimal;
    // Share of the error budget given to the core rotation stream; the rest
    // goes to magic-state production.
    double core_budget_fraction = 0.5;
    int distance_cap = 61;
    int max_levels = 3;

    int unit_rotations = 11;
    int unit_inputs = 15;
    double distill_coefficient = 35.0;
    // Qubits and bus tiles per rotation inside a distillation unit.
    double unit_k_avg = 3.0;
    double unit_b_avg = 2.0;
    // Memory cycles spent growing and moving a state to its consumer.
    double transport_cycles = 1.0;
    UnitFootprint footprint;

    double core_tiles_per_qubit = 2.0;
    int core_extra_tiles = 4;

    // Count the produced magic state in the correction storage pool.
    bool co_store_magic_state = false;

    void validate() const;
};

struct MsfLevel {
    int d_level = 3;
    int n_units = 1;
    int storage_patches = 0;
    int prep_slots = 0;
    int tiles_per_unit = 0;
    double input_error = 0;
    double output_error = 0;
    double success_probability = 1;
};

struct Microarchitecture {
    Objective objective = Objective::time_optimal;
    int d_core = 3;
    std::vector<MsfLevel> msf_levels;
    ReactionTimes reaction;
    Micros injection_period{0};
    Micros tau_logical_core{0};
    double runtime_s = 0;
    int64_t qubits_core = 0;
    int64_t qubits_msf_distill = 0;
    int64_t qubits_msf_storage = 0;
    double accumulated_error = 0;
    double core_error = 0;
    double msf_error = 0;

    int64_t total_qubits() const { return qubits_core + qubits_msf_distill + qubits_msf_storage; }
    double gamma_in_cycles() const { return reaction.gamma_mem / tau_logical_core; }
};

struct ErrorBreakdown {
    double core = 0;
    double msf = 0;
    double total() const { return core + msf; }
};

/// Additive error of the whole circuit on this architecture, recomputed from
/// its distances and the given reaction times.
ErrorBreakdown accumulate_error(const Microarchitecture &arch, const CircuitSpec &spec,
                                const ErrorFitParams &fit, const HardwareParams &hw,
                                const ReactionTimes &rt, const AssemblerOptions &opts = {});

struct QubitCounts {
    int64_t core = 0;
    int64_t msf_distill = 0;
    int64_t msf_storage = 0;
};

QubitCounts qubit_accounting(const Microarchitecture &arch, const CircuitSpec &spec,
                             const AssemblerOptions &opts = {});

/// ceil(gamma_mem / tau_logical), plus one when the magic state shares the pool.
int storage_patches_for(Micros gamma_mem, Micros tau_logical, bool co_store);

/// Reaction times as a function of the candidate core distance.
using ReactionSource = std::function<ReactionTimes(int d_core)>;

Microarchitecture assemble(const CircuitSpec &spec, const HardwareParams &hw,
                           const ErrorFitParams &fit, const ReactionSource &reaction,
                           const AssemblerOptions &opts = {});

/// Reaction times derived from a decoder model at each candidate distance.
Microarchitecture assemble(const CircuitSpec &spec, const HardwareParams &hw,
                           const ErrorFitParams &fit, const DecoderModel &model,
                           const CommLatencies &c, const AssemblerOptions &opts = {});

/// Fixed reaction times.
Microarchitecture assemble(const CircuitSpec &spec, const HardwareParams &hw,
                           const ErrorFitParams &fit, const ReactionTimes &rt,
                           const AssemblerOptions &opts = {});

enum class GammaUnit { core_cycles, micros };

struct SweepRow {
    double gamma_input = 0;
    std::optional<Microarchitecture> arch;
    std::string error;
    std::optional<ErrorKind> error_kind;
};

/// One architecture per reaction time, gamma_ls = gamma_mem. In core_cycles
/// mode gamma_mem is the value times the core logical cycle of each candidate
/// distance. Failed points are recorded and the sweep continues. Points are
/// evaluated on up to `jobs` threads; output order follows the input.
std::vector<SweepRow> sweep_reaction_time(const CircuitSpec &spec, const HardwareParams &hw,
                                          const ErrorFitParams &fit,
                                          const std::vector<double> &gammas, GammaUnit unit,
                                          const AssemblerOptions &opts = {}, int jobs = 1);

std::vector<double> log_space(double lo, double hi, int points);

}  // namespace qlat

#endif
