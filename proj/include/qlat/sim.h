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

#ifndef QLAT_SIM_H
#define QLAT_SIM_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlat/latency.h"
#include "qlat/windows.h"

namespace qlat {

struct SimConfig {
    int d = 31;
    DecoderModel decoder = *find_decoder_preset("cc_asic");
    CommLatencies comms;
    int n_decoders = 1;
    int n_injections = 100;
    Micros stab_round{1.0};
    uint64_t seed = 0;
    // Relative half-width of uniform decode-time jitter; 0 disables it.
    double jitter = 0.0;
    // Idle data patches decoded alongside the rotation chain.
    int memory_streams = 1;
    // Rotation gadgets issued ahead of the correction chain; 0 derives it
    // from the analytic latencies.
    int lookahead = 0;
    // Correction storage size in the distillation unit; unset means the
    // analytic ceil(gamma_mem / tau_logical), plus one with co-storage.
    std::optional<int> storage_capacity;
    bool co_store_magic_state = false;
    double warmup_fraction = 0.1;
    bool record_trace = false;
    // Guards against runaway queues when the pool is far too small.
    int64_t max_jobs = 4'000'000;

    void validate() const;
    Micros tau_logical() const { return stab_round * d; }
};

struct TraceEvent {
    int64_t time_ns = 0;
    std::string type;
    int64_t id = 0;
    int64_t aux = 0;
};

struct SimReport {
    Micros mean_injection_period{0};
    Micros measured_gamma_mem{0};
    int peak_correction_storage = 0;
    Micros total_runtime{0};
    double decoder_utilization = 0;
    int max_queue_depth = 0;
    // Least-squares slope of the ready-queue depth over simulated time.
    double queue_growth_per_ms = 0;
    // Distillation runs only: mean time between produced magic states.
    Micros output_period{0};
    int64_t windows_generated = 0;
    int64_t windows_decoded = 0;
    int64_t corrections_measured = 0;
    std::vector<TraceEvent> trace;
};

/// The per-gadget surgery used when no window stream is given: five patches
/// in a row with a Y component.
WindowSet default_surgery_windows(int d);

/// Rotation-gadget chain. Each gadget decodes one copy of `surgery`; its
/// correction is measured once the previous gadget's outcome is back and its
/// own surgery outcome is known.
SimReport run(const SimConfig &config, const WindowSet &surgery);
SimReport run(const SimConfig &config);

/// One 15-to-1 unit: eleven commuting rotations per state, one per logical
/// cycle, with corrections held in a finite pool until decoded.
SimReport run_msf_unit(const SimConfig &config);

/// Decoders that keep every job of `run` from queueing.
int analytic_decoder_count(const SimConfig &config, const WindowSet &surgery);
/// ceil(gamma_mem / tau_logical) from the analytic latency model, plus one
/// with co-storage. The default pool size of `run_msf_unit`.
int storage_patches(const SimConfig &config);

/// Decoders that keep every job of `run_msf_unit` from queueing.
int msf_decoder_count(const SimConfig &config);

void write_trace_jsonl(const std::vector<TraceEvent> &trace, std::ostream &out);
void write_report_json(const SimReport &report, std::ostream &out);

}  // namespace qlat

#endif
