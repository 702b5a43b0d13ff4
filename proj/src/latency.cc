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

#include "qlat/latency.h"

#include <cmath>

namespace qlat {

DecoderModel::DecoderModel(std::string name, double alpha_s, double beta)
    : name_(std::move(name)), alpha_s_(alpha_s), beta_(beta) {
    if (!(alpha_s > 0.0) || !(beta > 0.0)) {
        throw Error(ErrorKind::invalid_argument,
                    "decoder model '" + name_ + "' needs alpha > 0 and beta > 0");
    }
}

DecoderModel DecoderModel::ideal() {
    DecoderModel m;
    m.name_ = "ideal";
    m.ideal_ = true;
    return m;
}

const std::vector<DecoderModel> &decoder_presets() {
    static const std::vector<DecoderModel> presets = {
        DecoderModel("cc_fpga", 2.85e-10, 1.2),
        DecoderModel("cc_asic", 5.53e-11, 1.34),
        DecoderModel("alphaqubit", 4.8e-6, 0.503),
        DecoderModel("pymatching", 5.91e-9, 1.17),
    };
    return presets;
}

std::optional<DecoderModel> find_decoder_preset(const std::string &name) {
    if (name == "ideal") {
        return DecoderModel::ideal();
    }
    for (const auto &m : decoder_presets()) {
        if (m.name() == name) {
            return m;
        }
    }
    return std::nullopt;
}

void CommLatencies::validate() const {
    for (Micros t : {t_qc, t_cd, t_dd, t_do, t_oc, t_cq}) {
        if (!(t.count() >= 0.0)) {
            throw Error(ErrorKind::invalid_argument, "communication latencies must be >= 0");
        }
    }
}

CommLatencies CommLatencies::literature_10us() {
    CommLatencies c = measured();
    double scale = 10.0 / t_com(c).count();
    for (Micros *t : {&c.t_qc, &c.t_cd, &c.t_dd, &c.t_do, &c.t_oc, &c.t_cq}) {
        *t *= scale;
    }
    return c;
}

CommLatencies CommLatencies::zero() {
    return {Micros(0), Micros(0), Micros(0), Micros(0), Micros(0), Micros(0)};
}

CommLatencies CommLatencies::with_total(Micros total) {
    CommLatencies c = zero();
    c.t_dd = total;
    return c;
}

Seconds tau_d(const DecoderModel &model, double n_nodes) {
    if (!(n_nodes >= 1.0)) {
        throw Error(ErrorKind::invalid_argument, "decoding graph needs at least one node");
    }
    if (model.is_ideal()) {
        return Seconds(0.0);
    }
    return Seconds(model.alpha_s() * std::pow(n_nodes, model.beta()));
}

Micros t_com(const CommLatencies &c) {
    return c.t_qc + c.t_cd + c.t_dd + c.t_do + c.t_oc + c.t_cq;
}

Micros gamma_mem(const DecoderModel &model, int d, const CommLatencies &c) {
    require_distance(d);
    Micros per_round = tau_d(model, double(d) * d);
    return 6.0 * d * per_round + t_com(c);
}

Micros gamma_ls(const DecoderModel &model, int d, const CommLatencies &c) {
    require_distance(d);
    Micros per_round = tau_d(model, double(d) * d);
    double spatial = model.is_ideal()
                         ? 0.0
                         : std::pow(4.0, model.beta()) + std::pow(3.0, model.beta()) + 1.0;
    return 2.0 * d * spatial * per_round + t_com(c) + c.t_dd;
}

ReactionTimes reaction_times(const DecoderModel &model, int d, const CommLatencies &c) {
    return {gamma_mem(model, d, c), gamma_ls(model, d, c)};
}

Seconds required_decoder_speed(Seconds t_circuit, double t_count, int d, const CommLatencies &c) {
    require_distance(d);
    if (!(t_count > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "t_count must be > 0");
    }
    Seconds per_injection = t_circuit / t_count;
    Seconds slack = per_injection - t_com(c);
    if (!(slack.count() > 0.0)) {
        throw Error(ErrorKind::infeasible_communication_bound,
                    "time per injection does not exceed the communication latency");
    }
    return slack / (6.0 * d);
}

Seconds circuit_runtime(Micros gamma, double t_count) {
    if (t_count < 0) {
        throw Error(ErrorKind::invalid_argument, "t_count must be >= 0");
    }
    return gamma * t_count;
}

double max_t_count(Seconds t_circuit, const DecoderModel &model, int d, const CommLatencies &c) {
    return t_circuit / Seconds(gamma_mem(model, d, c));
}

int surgery_multiplicity(const DecoderModel &model, int d, const CommLatencies &c) {
    auto rt = reaction_times(model, d, c);
    if (rt.gamma_mem.count() <= 0.0) {
        return 1;
    }
    return static_cast<int>(std::ceil(rt.gamma_ls / rt.gamma_mem));
}

}  // namespace qlat
