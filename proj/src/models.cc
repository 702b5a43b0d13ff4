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

#include "qlat/models.h"

#include <cmath>
#include <string>

namespace qlat {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_distance:
            return "invalid-distance";
        case ErrorKind::invalid_rounds:
            return "invalid-rounds";
        case ErrorKind::invalid_argument:
            return "invalid-argument";
        case ErrorKind::infeasible_communication_bound:
            return "infeasible-communication-bound";
        case ErrorKind::infeasible_budget:
            return "infeasible-budget";
        case ErrorKind::infeasible_distance_cap:
            return "infeasible-distance-cap";
        case ErrorKind::deadlock:
            return "deadlock-detected";
        case ErrorKind::config:
            return "config-error";
    }
    return "unknown";
}

void require_distance(int d) {
    if (d < 3 || d % 2 == 0) {
        throw Error(ErrorKind::invalid_distance,
                    "code distance must be odd and >= 3, got " + std::to_string(d));
    }
}

TickNs to_ticks(Nanos t) {
    return TickNs(static_cast<int64_t>(std::ceil(t.count() - 1e-6)));
}

namespace {

void require_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::invalid_argument, std::string(name) + " must lie in [0, 1]");
    }
}

void require_positive(double v, const char *name) {
    if (!(v > 0.0)) {
        throw Error(ErrorKind::invalid_argument, std::string(name) + " must be > 0");
    }
}

}  // namespace

void HardwareParams::validate() const {
    require_positive(t1_us, "t1_us");
    require_positive(t2_us, "t2_us");
    require_probability(err_1q, "err_1q");
    require_probability(err_2q, "err_2q");
    require_probability(err_prep, "err_prep");
    require_probability(err_meas, "err_meas");
    require_probability(err_reset, "err_reset");
    require_positive(time_1q_ns, "time_1q_ns");
    require_positive(time_2q_ns, "time_2q_ns");
    require_positive(time_prep_ns, "time_prep_ns");
    require_positive(time_meas_ns, "time_meas_ns");
    require_positive(time_reset_ns, "time_reset_ns");
    require_positive(stab_round_us, "stab_round_us");
}

Micros HardwareParams::tau_logical(int d) const {
    require_distance(d);
    return Micros(stab_round_us * d);
}

void ErrorFitParams::validate() const {
    require_positive(mu, "mu");
    require_positive(mu_s, "mu_s");
    require_positive(mu_t, "mu_t");
    if (!(lambda > 1.0 && lambda_s > 1.0 && lambda_t > 1.0)) {
        throw Error(ErrorKind::invalid_argument, "suppression factors must be > 1");
    }
    require_probability(p_magic, "p_magic");
    require_probability(discard_magic, "discard_magic");
    if (discard_magic >= 1.0) {
        throw Error(ErrorKind::invalid_argument, "discard_magic must be < 1");
    }
}

void SurgeryShape::validate() const {
    require_distance(distance);
    if (rounds < 1) {
        throw Error(ErrorKind::invalid_rounds, "rounds must be >= 1");
    }
    if (k_patches < 1 || b_patches < 0) {
        throw Error(ErrorKind::invalid_argument, "surgery needs k >= 1 and b >= 0 patches");
    }
}

Probability Probability::clamp(double raw) {
    if (raw > 1.0) {
        return {1.0, true};
    }
    return {raw < 0.0 ? 0.0 : raw, false};
}

namespace detail {

double p_mem_raw(int d, double r, const ErrorFitParams &fit) {
    return fit.mu_s * d * r * std::pow(fit.lambda_s, -(d + 1) / 2.0);
}

double p_ls_raw(int d, double r, double k, double b, const ErrorFitParams &fit) {
    double space = fit.mu_s * ((k + b) * d * r + k * d) * std::pow(fit.lambda_s, -(d + 1) / 2.0);
    double time = fit.mu_t * b * d * d * std::pow(fit.lambda_t, -(r + 1) / 2.0);
    return space + time;
}

double p_pi8_raw(int d, double k_avg, double b_avg, Micros gamma_mem, Micros gamma_ls,
                 Micros tau_logical, const ErrorFitParams &fit) {
    double cycles = (k_avg * gamma_mem.count() + gamma_ls.count() + tau_logical.count()) /
                    tau_logical.count();
    return p_ls_raw(d, d, 3, 2, fit) + p_ls_raw(d, d, k_avg + 1, b_avg, fit) +
           cycles * p_mem_raw(d, d, fit);
}

}  // namespace detail

Probability p_mem(int d, int r, const ErrorFitParams &fit) {
    require_distance(d);
    if (r < 1) {
        throw Error(ErrorKind::invalid_rounds, "rounds must be >= 1");
    }
    return Probability::clamp(detail::p_mem_raw(d, r, fit));
}

Probability p_lattice_surgery(const SurgeryShape &shape, const ErrorFitParams &fit) {
    shape.validate();
    return Probability::clamp(detail::p_ls_raw(shape.distance, shape.rounds, shape.k_patches,
                                               shape.b_patches, fit));
}

Probability p_pi8_gadget(int d, double k_avg, double b_avg, Micros gamma_mem, Micros gamma_ls,
                         Micros tau_logical, const ErrorFitParams &fit) {
    require_distance(d);
    if (gamma_mem.count() < 0 || gamma_ls.count() < 0) {
        throw Error(ErrorKind::invalid_argument, "reaction times must be >= 0");
    }
    if (!(tau_logical.count() > 0)) {
        throw Error(ErrorKind::invalid_argument, "tau_logical must be > 0");
    }
    if (k_avg < 0 || b_avg < 0) {
        throw Error(ErrorKind::invalid_argument, "k_avg and b_avg must be >= 0");
    }
    return Probability::clamp(
        detail::p_pi8_raw(d, k_avg, b_avg, gamma_mem, gamma_ls, tau_logical, fit));
}

}  // namespace qlat
