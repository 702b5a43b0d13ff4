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

#ifndef QLAT_MODELS_H
#define QLAT_MODELS_H

#include "qlat/common.h"

namespace qlat {

/// Physical noise model inputs (target superconducting hardware by default).
struct HardwareParams {
    double t1_us = 200.0;
    double t2_us = 200.0;
    double err_1q = 0.0002;
    double err_2q = 0.0005;
    double err_prep = 0.01;
    double err_meas = 0.005;
    double err_reset = 0.005;
    double time_1q_ns = 25.0;
    double time_2q_ns = 25.0;
    double time_prep_ns = 1000.0;
    double time_meas_ns = 100.0;
    double time_reset_ns = 100.0;
    // Includes dynamical decoupling and leakage removal, hence longer than the
    // bare gate schedule.
    double stab_round_us = 1.0;

    void validate() const;

    Micros stab_round() const { return Micros(stab_round_us); }
    /// d stabilization rounds.
    Micros tau_logical(int d) const;
};

/// Fitted constants of the logical-error models.
struct ErrorFitParams {
    double mu = 0.019;
    double lambda = 9.3;
    double mu_s = 0.019;
    double lambda_s = 9.3;
    // Time-like surgery fit. Defaults to the space-like values.
    double mu_t = 0.019;
    double lambda_t = 9.3;
    double p_magic = 4.73e-5;
    double discard_magic = 0.41;

    void validate() const;
};

/// Cultivation error rates are calibrated for distances up to this value.
constexpr int kMagicCultivationMaxDistance = 25;

struct SurgeryShape {
    int k_patches = 1;
    int b_patches = 0;
    int rounds = 3;
    int distance = 3;

    void validate() const;
};

/// A probability clamped to [0, 1]; `saturated` records that the raw model
/// value exceeded 1.
struct Probability {
    double value = 0.0;
    bool saturated = false;

    static Probability clamp(double raw);
};

Probability p_mem(int d, int r, const ErrorFitParams &fit);

Probability p_lattice_surgery(const SurgeryShape &shape, const ErrorFitParams &fit);

/// Error of one post-corrected pi/8 rotation. `k_avg` and `b_avg` may be
/// fractional circuit averages. The memory term charges k_avg idle
/// computational qubits for gamma_mem plus the correction qubit for
/// gamma_ls + tau_logical.
Probability p_pi8_gadget(int d, double k_avg, double b_avg, Micros gamma_mem, Micros gamma_ls,
                         Micros tau_logical, const ErrorFitParams &fit);

namespace detail {

// Unclamped forms, shared with the assembler.
double p_mem_raw(int d, double r, const ErrorFitParams &fit);
double p_ls_raw(int d, double r, double k, double b, const ErrorFitParams &fit);
double p_pi8_raw(int d, double k_avg, double b_avg, Micros gamma_mem, Micros gamma_ls,
                 Micros tau_logical, const ErrorFitParams &fit);

}  // namespace detail

}  // namespace qlat

#endif
