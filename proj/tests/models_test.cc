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
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"

namespace qlat {
namespace {

constexpr double kRel = 1e-12;

void expect_rel(double got, double want, double rel = kRel) {
    EXPECT_NEAR(got, want, std::abs(want) * rel) << "want " << want;
}

TEST(Models, MemoryErrorMatchesHighPrecisionValue) {
    // 0.019 * 9 * 9.3^-2 evaluated in 30-digit arithmetic.
    expect_rel(p_mem(3, 3, ErrorFitParams{}).value, 0.00197710718002081165);
}

TEST(Models, SurgeryErrorMatchesHighPrecisionValues) {
    ErrorFitParams fit;
    expect_rel(p_lattice_surgery({3, 2, 13, 13}, fit).value, 3.858728004923031982e-6);
    fit.mu_t = 0.03;
    fit.lambda_t = 7.1;
    expect_rel(p_lattice_surgery({3, 2, 13, 13}, fit).value, 1.394025592395415382e-5);
}

TEST(Models, GadgetErrorMatchesHighPrecisionValue) {
    auto p = p_pi8_gadget(27, 12.5, 10, Micros(1000), Micros(1500), Micros(27), {});
    expect_rel(p.value, 2.144844918422857016e-10);
    EXPECT_FALSE(p.saturated);
}

TEST(Models, RejectsEvenOrSmallDistances) {
    ErrorFitParams fit;
    for (int d : {-1, 0, 1, 2, 4, 30}) {
        try {
            p_mem(d, 1, fit);
            FAIL() << d;
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::invalid_distance);
        }
    }
}

TEST(Models, RejectsNonPositiveRounds) {
    try {
        p_mem(5, 0, ErrorFitParams{});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_rounds);
    }
    try {
        p_lattice_surgery({1, 0, 0, 5}, ErrorFitParams{});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_rounds);
    }
}

TEST(Models, LargeInputsSaturateAtOne) {
    ErrorFitParams fit;
    fit.mu_s = 50;
    auto p = p_mem(3, 1000, fit);
    EXPECT_DOUBLE_EQ(p.value, 1.0);
    EXPECT_TRUE(p.saturated);
}

TEST(Models, SurgeryWithoutBusReducesToSpaceTerm) {
    ErrorFitParams fit;
    fit.mu_t = 100;  // would dominate if the time-like term leaked in
    for (int d = 3; d <= 31; d += 2) {
        double want = p_mem(d, d, fit).value * (1.0 + 1.0 / d);
        expect_rel(p_lattice_surgery({1, 0, d, d}, fit).value, want, 1e-12);
    }
}

TEST(Models, ErrorsFallWithDistanceAndGrowWithRounds) {
    ErrorFitParams fit;
    for (int d = 5; d <= 41; d += 2) {
        EXPECT_LT(p_mem(d, d, fit).value, p_mem(d - 2, d - 2, fit).value);
        EXPECT_LT(p_mem(d, 10, fit).value, p_mem(d, 11, fit).value);
    }
}

TEST(Models, GadgetGrowsWithReactionTimes) {
    ErrorFitParams fit;
    double base = p_pi8_gadget(21, 4, 3, Micros(50), Micros(80), Micros(21), fit).value;
    EXPECT_LT(base, p_pi8_gadget(21, 4, 3, Micros(100), Micros(80), Micros(21), fit).value);
    EXPECT_LT(base, p_pi8_gadget(21, 4, 3, Micros(50), Micros(160), Micros(21), fit).value);
}

TEST(Models, RandomInputsAgreeWithReferenceFormulas) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> half(1, 30);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 500; ++i) {
        ErrorFitParams fit;
        fit.mu_s = 0.005 + 0.05 * u(rng);
        fit.lambda_s = 2 + 15 * u(rng);
        fit.mu_t = 0.005 + 0.05 * u(rng);
        fit.lambda_t = 2 + 15 * u(rng);
        oracle::Fit of{fit.mu_s, fit.lambda_s, fit.mu_t, fit.lambda_t};
        int d = 2 * half(rng) + 1;
        int r = 1 + static_cast<int>(60 * u(rng));
        int k = 1 + static_cast<int>(40 * u(rng));
        int b = static_cast<int>(40 * u(rng));
        expect_rel(detail::p_mem_raw(d, r, fit), oracle::p_mem(d, r, of), 1e-10);
        expect_rel(detail::p_ls_raw(d, r, k, b, fit), oracle::p_ls(d, r, k, b, of), 1e-10);
        double gm = 1000 * u(rng), gl = 1000 * u(rng), tau = d * (0.5 + u(rng));
        expect_rel(detail::p_pi8_raw(d, k, b, Micros(gm), Micros(gl), Micros(tau), fit),
                   oracle::p_pi8(d, k, b, gm, gl, tau, of), 1e-10);
    }
}

TEST(Models, HardwareDefaults) {
    HardwareParams hw;
    EXPECT_NO_THROW(hw.validate());
    EXPECT_DOUBLE_EQ(hw.tau_logical(31).count(), 31.0);
    hw.stab_round_us = 0;
    EXPECT_THROW(hw.validate(), Error);
}

TEST(Models, FitValidation) {
    ErrorFitParams fit;
    EXPECT_NO_THROW(fit.validate());
    fit.lambda_t = 1.0;
    EXPECT_THROW(fit.validate(), Error);
    fit = {};
    fit.discard_magic = 1.0;
    EXPECT_THROW(fit.validate(), Error);
}

}  // namespace
}  // namespace qlat
