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

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result qlat(const std::string &args) {
    std::string cmd = std::string(QLAT_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return r;
    }
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, n);
    }
    int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

TEST(Cli, HelpSucceeds) {
    Result r = qlat("--help");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("sweep-reaction"), std::string::npos);
}

TEST(Cli, SweepCsvIsRectangular) {
    Result r = qlat("sweep-reaction --gamma-min 1 --gamma-max 1000 --points 7 -f csv");
    ASSERT_EQ(r.status, 0);
    auto rows = parse_csv(r.out);
    ASSERT_GE(rows.size(), 8u);
    EXPECT_EQ(rows[0][0], "gamma_mem_us");
    for (const auto &row : rows) {
        EXPECT_EQ(row.size(), rows[0].size());
    }
}

TEST(Cli, EstimateMatchesOnePointSweep) {
    Result a = qlat("estimate --gamma-cycles 10 -f csv");
    Result b = qlat("sweep-reaction --gamma-min 10 --gamma-max 10 --points 1 -f csv");
    ASSERT_EQ(a.status, 0);
    ASSERT_EQ(b.status, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GlobalOptionsAfterSubcommand) {
    Result r = qlat("estimate --circuit conotoxin -f json");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.is_object());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(qlat("estimate --budget 0").status, 3);
    EXPECT_EQ(qlat("estimate --circuit nosuch").status, 2);
    EXPECT_EQ(qlat("-c /nonexistent.json estimate").status, 2);
    EXPECT_EQ(qlat("frobnicate").status, 2);
}

TEST(Cli, ConfigFileIsApplied) {
    std::string path = std::string(QLAT_TEST_TMP) + "/cli_config.json";
    {
        std::ofstream f(path);
        f << R"({"circuit": "conotoxin", "decoder": "cc_fpga"})";
    }
    Result r = qlat("-c " + path + " config");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["circuit"]["q_logical"], 241);
    EXPECT_EQ(qlat("-c " + path + " config --schema").status, 0);
}

TEST(Cli, DecoderSpeedTable) {
    Result r = qlat("decoder-speed --points 5 -f csv");
    ASSERT_EQ(r.status, 0);
    auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0][4], "required_tau_d_s");
}

TEST(Cli, FleetReport) {
    Result r = qlat("decoders -f json");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["k_total"], 9562);
}

TEST(Cli, SimulateAndWindows) {
    Result s = qlat("simulate --d 9 --n-injections 10 --n-decoders 0 -f json");
    ASSERT_EQ(s.status, 0);
    EXPECT_TRUE(nlohmann::json::parse(s.out).contains("measured_gamma_mem_us"));
    Result m = qlat("simulate --mode msf --d 9 --n-injections 4 -f json");
    EXPECT_EQ(m.status, 0);
    Result w = qlat("windows --kind surgery --d 5 --nx 2 --nz 1 --y");
    ASSERT_EQ(w.status, 0);
    EXPECT_NE(w.out.find("\"layer\""), std::string::npos);
}

}  // namespace
