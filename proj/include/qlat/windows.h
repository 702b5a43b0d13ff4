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

#ifndef QLAT_WINDOWS_H
#define QLAT_WINDOWS_H

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlat/common.h"
#include "qlat/latency.h"

namespace qlat {

/// Axis-aligned space-time box in units of d/2. Half-open on every axis.
/// Half units keep 1.5d buffers exact.
struct Box {
    int x0 = 0, x1 = 0;
    int z0 = 0, z1 = 0;
    int t0 = 0, t1 = 0;

    int width_x() const { return x1 - x0; }
    int width_z() const { return z1 - z0; }
    int width_t() const { return t1 - t0; }
    bool contains(const Box &other) const;
    /// Positive-volume overlap.
    bool overlaps(const Box &other) const;
    /// Any closed contact in space while the time spans overlap.
    bool touches_in_space(const Box &other) const;

    bool operator==(const Box &) const = default;
};

enum class WindowKind { temporal, spatial };

struct DecodingWindow {
    int id = 0;
    WindowKind kind = WindowKind::temporal;
    // Temporal windows: 1 = layer A, 2 = layer B. Spatial windows: 1..3.
    int layer = 1;
    Box extent;
    Box commit;
    std::vector<int> depends_on;

    double extent_x_d() const { return extent.width_x() / 2.0; }
    double extent_z_d() const { return extent.width_z() / 2.0; }
    double extent_t_d() const { return extent.width_t() / 2.0; }
    /// Spatial decoding-graph nodes per round for code distance d.
    double nodes_per_round(int d) const;
    /// Stabilization rounds spanned for code distance d.
    double rounds(int d) const;
    std::string layer_name() const;
};

struct WindowSet {
    WindowKind kind = WindowKind::temporal;
    int layer_count = 1;
    // The space-time region whose cells must each be committed exactly once.
    Box region;
    std::vector<DecodingWindow> windows;

    /// Window ids in dependency order; nullopt when the DAG has a cycle or
    /// a dangling reference.
    std::optional<std::vector<int>> topological_order() const;
    bool is_acyclic() const { return topological_order().has_value(); }
    /// Every cell of `region` lies in exactly one commit region, and no commit
    /// leaks outside `region`.
    bool commits_tile_region() const;
    /// No two windows of the same layer overlap their commit regions.
    bool layer_commits_disjoint() const;
    /// Windows per layer, index 0 = layer 1.
    std::vector<int> layer_sizes() const;
};

/// Temporal windows for a d x d patch held for n_cycles logical cycles.
/// Layer A windows (buffer, commit, buffer) repeat every 4 cycles, anchored so
/// the stream ends with an A window; layer B windows commit the 3-cycle gaps
/// and depend on both neighbouring A windows. A leading remainder shorter than
/// one period is committed by the first A window.
WindowSet memory_windows(int n_cycles, int d);

/// Spatial windows for a lattice surgery over an nx x nz patch grid. Y-type
/// surgeries use three layers (2d x 2d, 2d x 1.5d, d x d), X/Z surgeries two
/// (2d x 2d, d x d). All windows carry a d-round front temporal buffer.
WindowSet surgery_windows(int n_patches_x, int n_patches_z, int d, bool has_y);

/// One JSON object per line.
void write_windows_jsonl(const WindowSet &set, std::ostream &out);
/// Inverse of write_windows_jsonl. The region is recomputed as the commit hull.
WindowSet read_windows_jsonl(std::istream &in);

/// Memory decoders for q logical qubits stored in pairs, floored at 1.
int k_mem(int q_logical, int d, const DecoderModel &model, Micros t_dd, Micros tau_logical);

/// Surgery decoders: ceil(multiplicity * 2Q / 3).
int k_ls(int q_logical, int multiplicity = 4);

struct ProblemSize {
    double x_d = 0, z_d = 0, t_d = 0;
};

struct DecoderFleet {
    int q_logical = 0;
    int multiplicity = 0;
    int k_mem = 0;
    int k_ls = 0;
    int k_total = 0;
    std::vector<ProblemSize> window_problem_sizes;
    Micros syndrome_storage_time{0};
    int64_t rounds_retained = 0;
    double syndrome_ram_bytes = 0;
};

struct FleetOptions {
    double msf_uplift = 0.10;
    double n_syndrome_qubits = 5e6;
    Micros stab_round{1.0};
    // 1 byte per syndrome bit; 0.125 for packed bits.
    double bytes_per_syndrome = 1.0;
    // ceil(gamma_ls / gamma_mem) of the decoder when unset.
    std::optional<int> multiplicity;
};

DecoderFleet fleet_estimate(int q_logical, int d, const DecoderModel &model, const CommLatencies &c,
                            const FleetOptions &opts = {});

/// Logical qubits that fit a core share of the QPU when every logical qubit
/// costs `tiles_per_qubit` d x d tiles of 2d^2 - 1 physical qubits.
int core_logical_qubits(double qpu_qubits, double core_fraction, int d,
                        double tiles_per_qubit = 2.0);

/// d^2 data plus d^2 - 1 measurement qubits.
inline int64_t tile_qubits(int d) { return 2LL * d * d - 1; }

}  // namespace qlat

#endif
