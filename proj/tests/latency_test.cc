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
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"

namespace qlat {
namespace {

const DecoderModel &preset(const char *name) {
    static std::vector<DecoderModel> all = decoder_presets();
    for (const auto &m : all) {
        if (m.name() == name) {
            return m;
        }
    }
    throw std::runtime_error(name);
}

void expect_rel(double got, double want, double rel = 1e-12) {
    EXPECT_NEAR(got, want, std::abs(want) * rel) << "want " << want;
}

TEST(Latency, TauAtOneNodeIsAlpha) {
    for (const auto &m : decoder_presets()) {
        EXPECT_DOUBLE_EQ(tau_d(m, 1).count(), m.alpha_s());
    }
}

TEST(Latency, TauMatchesHighPrecisionValues) {
    expect_rel(tau_d(preset("cc_asic"), 961).count(), 5.490026879417706930e-7);
    expect_rel(tau_d(preset("alphaqubit"), 961).count(), 1.518976662300002512e-4);
}

TEST(Latency, TauRejectsEmptyGraph) { EXPECT_THROW(tau_d(preset("cc_asic"), 0.5), Error); }

TEST(Latency, PresetsCarryTableConstants) {
    EXPECT_DOUBLE_EQ(preset("cc_fpga").alpha_s(), 2.85e-10);
    EXPECT_DOUBLE_EQ(preset("cc_fpga").beta(), 1.2);
    EXPECT_DOUBLE_EQ(preset("cc_asic").alpha_s(), 5.53e-11);
    EXPECT_DOUBLE_EQ(preset("cc_asic").beta(), 1.34);
    EXPECT_DOUBLE_EQ(preset("alphaqubit").alpha_s(), 4.8e-6);
    EXPECT_DOUBLE_EQ(preset("alphaqubit").beta(), 0.503);
    EXPECT_DOUBLE_EQ(preset("pymatching").alpha_s(), 5.91e-9);
    EXPECT_DOUBLE_EQ(preset("pymatching").beta(), 1.17);
    EXPECT_TRUE(find_decoder_preset("ideal")->is_ideal());
    EXPECT_FALSE(find_decoder_preset("nope").has_value());
}

TEST(Latency, RealModelsNeedPositiveConstants) {
    EXPECT_THROW(DecoderModel("x", 0.0, 1.0), Error);
    EXPECT_THROW(DecoderModel("x", 1e-9, 0.0), Error);
}

TEST(Latency, CommunicationSum) {
    EXPECT_NEAR(t_com(CommLatencies::measured()).count(), 7.8, 1e-12);
    EXPECT_EQ(t_com(CommLatencies::zero()).count(), 0.0);
    CommLatencies c = CommLatencies::zero();
    c.t_oc = Micros(4.0);
    EXPECT_EQ(t_com(c).count(), 4.0);
    EXPECT_NEAR(t_com(CommLatencies::literature_10us()).count(), 10.0, 1e-12);
    EXPECT_NEAR(t_com(CommLatencies::with_total(Micros(10))).count(), 10.0, 1e-12);
}

TEST(Latency, MemoryReactionTime) {
    CommLatencies c;
    expect_rel(gamma_mem(preset("cc_asic"), 31, c).count(), 109.91449995716934890);
    expect_rel(gamma_mem(preset("cc_fpga"), 31, c).count(), 208.99902389190428558);
    EXPECT_NEAR(gamma_mem(DecoderModel::ideal(), 31, c).count(), 7.8, 1e-12);
    // With no decoding time, a 10 us reaction is all communication.
    EXPECT_NEAR(gamma_mem(DecoderModel::ideal(), 31, CommLatencies::literature_10us()).count(),
                10.0, 1e-12);
    EXPECT_THROW(gamma_mem(preset("cc_asic"), 30, c), Error);
}

TEST(Latency, SurgeryReactionTime) {
    CommLatencies c;
    expect_rel(gamma_ls(preset("cc_asic"), 31, c).count(), 408.83097120221219274);
    expect_rel(gamma_ls(preset("cc_fpga"), 31, c).count(), 679.98446193342462099);
    EXPECT_NEAR(gamma_ls(DecoderModel::ideal(), 31, c).count(), 7.8 + 0.5, 1e-12);

    DecoderModel linear("linear", 1e-9, 1.0);
    CommLatencies zero = CommLatencies::zero();
    expect_rel(gamma_ls(linear, 11, zero).count(), 2 * 11 * 8 * tau_d(linear, 121).count() * 1e6);
}

TEST(Latency, SurgeryMultiplicityIsFourForCustomChips) {
    EXPECT_EQ(surgery_multiplicity(preset("cc_asic"), 31, {}), 4);
    EXPECT_EQ(surgery_multiplicity(preset("cc_fpga"), 31, {}), 4);
}

TEST(Latency, SurgeryAlwaysSlowerThanMemory) {
    for (const auto &m : decoder_presets()) {
        for (int d = 13; d <= 41; d += 2) {
            EXPECT_GT(gamma_ls(m, d, {}), gamma_mem(m, d, {})) << m.name() << " d=" << d;
        }
    }
}

TEST(Latency, ReactionTimesIncreaseWithDistance) {
    for (const auto &m : decoder_presets()) {
        for (int d = 5; d <= 61; d += 2) {
            EXPECT_GT(gamma_mem(m, d, {}), gamma_mem(m, d - 2, {}));
            EXPECT_GT(gamma_ls(m, d, {}), gamma_ls(m, d - 2, {}));
        }
    }
}

TEST(Latency, RequiredSpeed) {
    CommLatencies c = CommLatencies::with_total(Micros(10));
    expect_rel(required_decoder_speed(Seconds(3600), 3e7, 31, c).count(),
               5.913978494623655914e-7, 1e-12);
    EXPECT_LT(tau_d(preset("cc_asic"), 961).count(),
              required_decoder_speed(Seconds(3600), 3e7, 31, c).count());
    try {
        required_decoder_speed(Seconds(3600), 1e20, 31, c);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::infeasible_communication_bound);
    }
    double x = 3.5e-7;
    expect_rel(required_decoder_speed(Seconds(6 * 31 * x * 1000), 1000, 31,
                                      CommLatencies::zero())
                   .count(),
               x, 1e-12);
}

TEST(Latency, CircuitRuntime) {
    EXPECT_EQ(circuit_runtime(Micros(112), 0).count(), 0.0);
    EXPECT_NEAR(circuit_runtime(Micros(112), 3e7).count(), 3360, 1e-6);
    EXPECT_NEAR(circuit_runtime(Micros(130), 2e10).count(), 2.6e6, 1e-3);
    EXPECT_THROW(circuit_runtime(Micros(1), -1), Error);
}

TEST(Latency, RuntimeAndRequiredSpeedRoundTrip) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 200; ++i) {
        DecoderModel m("r", 1e-11 * std::pow(1e5, u(rng)), 0.3 + 1.2 * u(rng));
        int d = 3 + 2 * static_cast<int>(25 * u(rng));
        double t = std::pow(10.0, 3 + 8 * u(rng));
        CommLatencies c;
        Seconds runtime = circuit_runtime(gamma_mem(m, d, c), t);
        expect_rel(required_decoder_speed(runtime, t, d, c).count(),
                   tau_d(m, double(d) * d).count(), 1e-9);
    }
}

TEST(Latency, RandomInputsAgreeWithReferenceFormulas) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 300; ++i) {
        double alpha = 1e-11 * std::pow(1e6, u(rng)), beta = 0.2 + 1.5 * u(rng);
        DecoderModel m("r", alpha, beta);
        int d = 3 + 2 * static_cast<int>(30 * u(rng));
        CommLatencies c;
        c.t_dd = Micros(2 * u(rng));
        c.t_oc = Micros(8 * u(rng));
        double tc = t_com(c).count() * 1e-6;
        expect_rel(gamma_mem(m, d, c).count() * 1e-6,
                   oracle::gamma_mem(alpha, beta, d, tc), 1e-10);
        expect_rel(gamma_ls(m, d, c).count() * 1e-6,
                   oracle::gamma_ls(alpha, beta, d, tc, c.t_dd.count() * 1e-6), 1e-10);
    }
}

}  // namespace
}  // namespace qlat
