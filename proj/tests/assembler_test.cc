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

#include "qlat/assembler.h"

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.h"
#include "qlat/windows.h"

namespace qlat {
namespace {

const oracle::Fit kFit{0.019, 9.3, 0.019, 9.3};

CircuitSpec preset(const char *name) { return *find_circuit_preset(name); }

ReactionTimes fixed(double us) { return {Micros(us), Micros(us)}; }

// Independent error tally: the core stream plus each delivered magic state.
double reference_error(const Microarchitecture &a, const CircuitSpec &spec, double gamma_us,
                       const AssemblerOptions &o = {}) {
    double tau = a.d_core;
    double core = spec.t_count * oracle::p_pi8(a.d_core, spec.k_avg, spec.b_avg, gamma_us,
                                               gamma_us, tau, kFit);
    double e = ErrorFitParams{}.p_magic;
    for (const auto &l : a.msf_levels) {
        double cycle = oracle::p_mem(l.d_level, l.d_level, kFit);
        double in = e + o.transport_cycles * cycle;
        double slots = std::ceil(gamma_us / l.d_level - 1e-9);
        double unit = 11 * (oracle::p_pi8(l.d_level, o.unit_k_avg, o.unit_b_avg, 0, 0,
                                          l.d_level, kFit) +
                            slots * cycle);
        e = 35 * in * in * in + unit;
    }
    double delivered = e + o.transport_cycles * oracle::p_mem(a.d_core, a.d_core, kFit);
    return core + spec.t_count * delivered;
}

TEST(Assembler, StoragePatchesFollowCeiling) {
    EXPECT_EQ(storage_patches_for(Micros(112), Micros(31), false), 4);
    EXPECT_EQ(storage_patches_for(Micros(112), Micros(31), true), 5);
    EXPECT_EQ(storage_patches_for(Micros(62), Micros(31), false), 2);
    EXPECT_EQ(storage_patches_for(Micros(0), Micros(31), false), 0);
}

TEST(Assembler, PresetsMatchPublishedWorkloads) {
    CircuitSpec fh = preset("fermi_hubbard");
    EXPECT_EQ(fh.q_logical, 2562);
    EXPECT_DOUBLE_EQ(fh.t_count, 4e6);
    CircuitSpec ct = preset("conotoxin");
    EXPECT_EQ(ct.q_logical, 241);
    EXPECT_DOUBLE_EQ(ct.t_count, 5.11e11);
    EXPECT_FALSE(find_circuit_preset("shor").has_value());
}

TEST(Assembler, FermiHubbardWithCustomChip) {
    CircuitSpec spec = preset("fermi_hubbard");
    Microarchitecture a =
        assemble(spec, {}, {}, *find_decoder_preset("cc_asic"), CommLatencies{});
    EXPECT_GE(a.d_core, 27);
    EXPECT_LE(a.d_core, 31);
    EXPECT_EQ(a.msf_levels.size(), 1u);
    EXPECT_LE(a.accumulated_error, spec.error_budget);
    EXPECT_NEAR(a.runtime_s, a.reaction.gamma_mem.count() * 1e-6 * spec.t_count, 1e-9);
}

TEST(Assembler, ConotoxinNeedsTwoLevels) {
    Microarchitecture a = assemble(preset("conotoxin"), {}, {},
                                   *find_decoder_preset("cc_asic"), CommLatencies{});
    EXPECT_EQ(a.msf_levels.size(), 2u);
}

TEST(Assembler, ReturnedArchitecturesRespectInvariants) {
    for (const char *name : {"fermi_hubbard", "conotoxin"}) {
        CircuitSpec spec = preset(name);
        for (double g : {20.0, 75.0, 300.0, 2000.0}) {
            Microarchitecture a = assemble(spec, {}, {}, fixed(g));
            EXPECT_EQ(a.d_core % 2, 1);
            EXPECT_LE(a.accumulated_error, spec.error_budget);
            EXPECT_LE(reference_error(a, spec, g), spec.error_budget * (1 + 1e-9));
            EXPECT_NEAR(reference_error(a, spec, g), a.accumulated_error,
                        a.accumulated_error * 1e-9);
            for (const auto &l : a.msf_levels) {
                EXPECT_EQ(l.d_level % 2, 1);
                EXPECT_EQ(l.storage_patches, static_cast<int>(std::ceil(g / l.d_level - 1e-12)));
            }
        }
    }
}

TEST(Assembler, ArchitectureIsMinimal) {
    CircuitSpec spec = preset("fermi_hubbard");
    spec.t_count = 1e5;
    AssemblerOptions o;
    for (double g : {15.0, 40.0, 120.0}) {
        Microarchitecture a = assemble(spec, {}, {}, fixed(g), o);
        // One step down in core distance breaks the core share of the budget.
        if (a.d_core > 3) {
            double smaller = spec.t_count * oracle::p_pi8(a.d_core - 2, spec.k_avg, spec.b_avg,
                                                          g, g, a.d_core - 2, kFit);
            EXPECT_GT(smaller, spec.error_budget * o.core_budget_fraction);
        }
        // One unit fewer at any level falls behind demand.
        double demand = 1.0 / g;
        for (int l = static_cast<int>(a.msf_levels.size()) - 1; l >= 0; --l) {
            const MsfLevel &lv = a.msf_levels[l];
            double rate_per_unit = lv.success_probability / (11.0 * lv.d_level);
            if (lv.n_units > 1) {
                EXPECT_LT((lv.n_units - 1) * rate_per_unit, demand);
            }
            EXPECT_GE(lv.n_units * rate_per_unit, demand * (1 - 1e-12));
            EXPECT_LT((lv.storage_patches - 1) * double(lv.d_level), g);
            demand = 15.0 * demand / lv.success_probability;
        }
    }
}

TEST(Assembler, HalvingReactionDoublesTopUnits) {
    CircuitSpec spec = preset("fermi_hubbard");
    int checked = 0;
    for (double g : {4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0}) {
        Microarchitecture slow = assemble(spec, {}, {}, fixed(2 * g));
        Microarchitecture fast = assemble(spec, {}, {}, fixed(g));
        if (slow.msf_levels.back().d_level != fast.msf_levels.back().d_level) {
            continue;
        }
        ++checked;
        EXPECT_NEAR(fast.msf_levels.back().n_units, 2 * slow.msf_levels.back().n_units, 1) << g;
    }
    EXPECT_GE(checked, 3);
}

TEST(Assembler, CoreDistanceNeverShrinksWithReactionTime) {
    CircuitSpec spec = preset("conotoxin");
    int prev = 0;
    for (double g : log_space(10, 1e5, 40)) {
        int d = assemble(spec, {}, {}, fixed(g)).d_core;
        EXPECT_GE(d, prev);
        EXPECT_LE(d - prev, prev == 0 ? 99 : 2);
        prev = d;
    }
}

TEST(Assembler, ErrorGrowsWithReactionAtFixedDistances) {
    CircuitSpec spec = preset("fermi_hubbard");
    Microarchitecture a = assemble(spec, {}, {}, fixed(100));
    double base = accumulate_error(a, spec, {}, {}, fixed(100)).total();
    EXPECT_NEAR(base, a.accumulated_error, base * 1e-12);
    EXPECT_GT(accumulate_error(a, spec, {}, {}, fixed(200)).total(), base);
}

TEST(Assembler, ErrorWithoutFactoryIsCoreOnly) {
    CircuitSpec spec = preset("fermi_hubbard");
    spec.t_count = 1;
    Microarchitecture a;
    a.d_core = 21;
    ErrorBreakdown e = accumulate_error(a, spec, {}, {}, fixed(0));
    EXPECT_EQ(e.msf, 0.0);
    EXPECT_NEAR(e.core,
                oracle::p_pi8(21, spec.k_avg, spec.b_avg, 0, 0, 21, kFit),
                e.core * 1e-12);
}

TEST(Assembler, InfeasibleRequestsAreReported) {
    CircuitSpec spec = preset("fermi_hubbard");
    spec.error_budget = 0;
    try {
        assemble(spec, {}, {}, fixed(50));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::infeasible_budget);
    }
    spec = preset("fermi_hubbard");
    AssemblerOptions o;
    o.distance_cap = 15;
    try {
        assemble(spec, {}, {}, fixed(50), o);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::infeasible_distance_cap);
    }
    spec.error_budget = 1e-300;
    EXPECT_THROW(assemble(spec, {}, {}, fixed(50)), Error);
}

TEST(Assembler, QubitAccounting) {
    CircuitSpec spec = preset("fermi_hubbard");
    Microarchitecture a = assemble(spec, {}, {}, fixed(100));
    QubitCounts q = qubit_accounting(a, spec);
    EXPECT_EQ(q.core, a.qubits_core);
    EXPECT_EQ(q.core, (2 * 2562 + 4) * tile_qubits(a.d_core));
    int64_t storage = 0;
    for (const auto &l : a.msf_levels) {
        storage += int64_t(l.n_units) * l.storage_patches * tile_qubits(l.d_level);
    }
    EXPECT_EQ(q.msf_storage, storage);

    Microarchitecture none = a;
    for (auto &l : none.msf_levels) {
        l.storage_patches = 0;
    }
    EXPECT_EQ(qubit_accounting(none, spec).msf_storage, 0);

    Microarchitecture d27 = a, d31 = a;
    d27.d_core = 27;
    d31.d_core = 31;
    double growth = double(qubit_accounting(d31, spec).core) / qubit_accounting(d27, spec).core;
    EXPECT_NEAR(growth - 1, 0.32, 0.02);
}

TEST(Assembler, SpaceOptimalUsesOneTopUnit) {
    CircuitSpec spec = preset("fermi_hubbard");
    AssemblerOptions o;
    o.objective = Objective::space_optimal;
    Microarchitecture space = assemble(spec, {}, {}, fixed(30), o);
    Microarchitecture time = assemble(spec, {}, {}, fixed(30));
    EXPECT_EQ(space.msf_levels.back().n_units, 1);
    EXPECT_GE(space.injection_period.count(), 30.0);
    EXPECT_GE(space.runtime_s, time.runtime_s);
    EXPECT_LE(space.qubits_msf_distill, time.qubits_msf_distill);
    EXPECT_LE(space.accumulated_error, spec.error_budget);
}

TEST(Assembler, AssemblyIsDeterministic) {
    CircuitSpec spec = preset("conotoxin");
    Microarchitecture a = assemble(spec, {}, {}, fixed(333));
    Microarchitecture b = assemble(spec, {}, {}, fixed(333));
    EXPECT_EQ(a.d_core, b.d_core);
    EXPECT_EQ(a.total_qubits(), b.total_qubits());
    EXPECT_EQ(a.accumulated_error, b.accumulated_error);
}

TEST(Sweep, SinglePointMatchesAssemble) {
    CircuitSpec spec = preset("fermi_hubbard");
    auto rows = sweep_reaction_time(spec, {}, {}, {250}, GammaUnit::micros);
    ASSERT_TRUE(rows[0].arch);
    Microarchitecture a = assemble(spec, {}, {}, fixed(250));
    EXPECT_EQ(rows[0].arch->d_core, a.d_core);
    EXPECT_EQ(rows[0].arch->total_qubits(), a.total_qubits());
}

TEST(Sweep, CyclesScaleWithCoreDistance) {
    CircuitSpec spec = preset("fermi_hubbard");
    auto rows = sweep_reaction_time(spec, {}, {}, {10}, GammaUnit::core_cycles);
    ASSERT_TRUE(rows[0].arch);
    EXPECT_NEAR(rows[0].arch->gamma_in_cycles(), 10, 1e-12);
    EXPECT_NEAR(rows[0].arch->reaction.gamma_mem.count(), 10.0 * rows[0].arch->d_core, 1e-9);
}

TEST(Sweep, FailedPointsDoNotStopTheSweep) {
    CircuitSpec spec = preset("fermi_hubbard");
    AssemblerOptions o;
    o.distance_cap = 29;
    auto rows = sweep_reaction_time(spec, {}, {}, {1, 1e4}, GammaUnit::core_cycles, o);
    EXPECT_TRUE(rows[0].arch.has_value());
    EXPECT_FALSE(rows[1].arch.has_value());
    EXPECT_EQ(rows[1].error_kind, ErrorKind::infeasible_distance_cap);
}

TEST(Sweep, ParallelMatchesSerial) {
    CircuitSpec spec = preset("conotoxin");
    auto g = log_space(1, 1000, 24);
    auto serial = sweep_reaction_time(spec, {}, {}, g, GammaUnit::core_cycles, {}, 1);
    auto parallel = sweep_reaction_time(spec, {}, {}, g, GammaUnit::core_cycles, {}, 6);
    ASSERT_EQ(serial.size(), parallel.size());
    for (size_t i = 0; i < g.size(); ++i) {
        EXPECT_EQ(serial[i].gamma_input, parallel[i].gamma_input);
        EXPECT_EQ(serial[i].arch->total_qubits(), parallel[i].arch->total_qubits());
    }
}

TEST(Sweep, FootprintTradeOffAcrossDecades) {
    for (const char *name : {"fermi_hubbard", "conotoxin"}) {
        auto rows =
            sweep_reaction_time(preset(name), {}, {}, {1, 1000}, GammaUnit::core_cycles);
        EXPECT_GT(rows[1].arch->qubits_msf_storage, rows[0].arch->qubits_msf_storage);
        EXPECT_LT(rows[1].arch->qubits_msf_distill, rows[0].arch->qubits_msf_distill);
    }
}

TEST(Sweep, StorageGrowsOnceTopLevelIsSingleUnit) {
    auto rows = sweep_reaction_time(preset("fermi_hubbard"), {}, {}, log_space(20, 1000, 50),
                                    GammaUnit::core_cycles);
    for (size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].arch->msf_levels.back().n_units, 1);
        EXPECT_GE(rows[i].arch->qubits_msf_storage, rows[i - 1].arch->qubits_msf_storage);
    }
}

TEST(Sweep, ConotoxinStorageNearOneMillisecond) {
    auto rows = sweep_reaction_time(preset("conotoxin"), {}, {}, {1000}, GammaUnit::micros);
    ASSERT_TRUE(rows[0].arch);
    EXPECT_GE(rows[0].arch->qubits_msf_storage, 100000);
    EXPECT_LE(rows[0].arch->qubits_msf_storage, 250000);
}

TEST(Sweep, LogSpace) {
    auto v = log_space(1, 1000, 4);
    ASSERT_EQ(v.size(), 4u);
    EXPECT_DOUBLE_EQ(v[0], 1);
    EXPECT_NEAR(v[1], 10, 1e-12);
    EXPECT_DOUBLE_EQ(v[3], 1000);
    EXPECT_EQ(log_space(5, 9, 1), std::vector<double>{5});
    EXPECT_THROW(log_space(0, 1, 3), Error);
}

}  // namespace
}  // namespace qlat
