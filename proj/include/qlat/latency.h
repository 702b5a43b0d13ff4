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

#ifndef QLAT_LATENCY_H
#define QLAT_LATENCY_H

#include <optional>
#include <string>
#include <vector>

#include "qlat/common.h"

namespace qlat {

/// Monomial decoder-latency model tau_d(N) = alpha * N^beta, where N is the
/// number of decoding-graph nodes per stabilization round. The ideal model
/// decodes in zero time and is the only one allowed to bypass alpha > 0.
class DecoderModel {
   public:
    DecoderModel(std::string name, double alpha_s, double beta);

    static DecoderModel ideal();

    const std::string &name() const { return name_; }
    double alpha_s() const { return alpha_s_; }
    double beta() const { return beta_; }
    bool is_ideal() const { return ideal_; }

   private:
    DecoderModel() = default;

    std::string name_;
    double alpha_s_ = 0.0;
    double beta_ = 1.0;
    bool ideal_ = false;
};

/// Built-in fits: cc_fpga, cc_asic, alphaqubit, pymatching.
const std::vector<DecoderModel> &decoder_presets();
/// Looks up a preset (or "ideal"); nullopt when the name is unknown.
std::optional<DecoderModel> find_decoder_preset(const std::string &name);

struct CommLatencies {
    Micros t_qc{0.15};
    Micros t_cd{2.0};
    Micros t_dd{0.5};
    Micros t_do{1.0};
    Micros t_oc{4.0};
    Micros t_cq{0.15};

    void validate() const;

    /// Measured execution-environment figures (sum 7.8 us).
    static CommLatencies measured() { return {}; }
    /// The same channels scaled uniformly to a 10 us total.
    static CommLatencies literature_10us();
    static CommLatencies zero();
    /// Every channel zero except t_dd, which carries the whole budget.
    static CommLatencies with_total(Micros t_com);
};

struct ReactionTimes {
    Micros gamma_mem{0.0};
    Micros gamma_ls{0.0};
};

/// Decoding time of one stabilization round over n_nodes spatial nodes.
Seconds tau_d(const DecoderModel &model, double n_nodes);

Micros t_com(const CommLatencies &c);

/// Two sequential 3d-round temporal windows plus every communication hop.
Micros gamma_mem(const DecoderModel &model, int d, const CommLatencies &c);

/// Three spatial layers of 2d-round windows over 4d^2, 3d^2 and d^2 nodes,
/// with one extra decoder-to-decoder exchange.
Micros gamma_ls(const DecoderModel &model, int d, const CommLatencies &c);

ReactionTimes reaction_times(const DecoderModel &model, int d, const CommLatencies &c);

/// Per-round decoding speed of a d x d memory patch that finishes t_count
/// injections within t_circuit. Throws infeasible_communication_bound when
/// t_circuit / t_count leaves no time after communication.
Seconds required_decoder_speed(Seconds t_circuit, double t_count, int d, const CommLatencies &c);

Seconds circuit_runtime(Micros gamma_mem, double t_count);

/// Largest T count finishing within t_circuit for this decoder at distance d.
double max_t_count(Seconds t_circuit, const DecoderModel &model, int d, const CommLatencies &c);

/// Number of surgery decodes in flight while one memory decode completes:
/// ceil(gamma_ls / gamma_mem).
int surgery_multiplicity(const DecoderModel &model, int d, const CommLatencies &c);

}  // namespace qlat

#endif
