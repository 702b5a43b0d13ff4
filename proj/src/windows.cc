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

#include "qlat/windows.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>

#include "json.hpp"

namespace qlat {

bool Box::contains(const Box &o) const {
    return x0 <= o.x0 && o.x1 <= x1 && z0 <= o.z0 && o.z1 <= z1 && t0 <= o.t0 && o.t1 <= t1;
}

bool Box::overlaps(const Box &o) const {
    return x0 < o.x1 && o.x0 < x1 && z0 < o.z1 && o.z0 < z1 && t0 < o.t1 && o.t0 < t1;
}

bool Box::touches_in_space(const Box &o) const {
    return x0 <= o.x1 && o.x0 <= x1 && z0 <= o.z1 && o.z0 <= z1 && t0 < o.t1 && o.t0 < t1;
}

double DecodingWindow::nodes_per_round(int d) const {
    return extent_x_d() * extent_z_d() * double(d) * d;
}

double DecodingWindow::rounds(int d) const { return extent_t_d() * d; }

std::string DecodingWindow::layer_name() const {
    if (kind == WindowKind::temporal) {
        return layer == 1 ? "A" : "B";
    }
    return std::to_string(layer);
}

std::optional<std::vector<int>> WindowSet::topological_order() const {
    std::map<int, size_t> index;
    for (size_t i = 0; i < windows.size(); ++i) {
        if (!index.emplace(windows[i].id, i).second) {
            return std::nullopt;
        }
    }
    std::vector<int> indegree(windows.size(), 0);
    std::vector<std::vector<size_t>> children(windows.size());
    for (size_t i = 0; i < windows.size(); ++i) {
        for (int dep : windows[i].depends_on) {
            auto it = index.find(dep);
            if (it == index.end()) {
                return std::nullopt;
            }
            children[it->second].push_back(i);
            ++indegree[i];
        }
    }
    std::queue<size_t> ready;
    for (size_t i = 0; i < windows.size(); ++i) {
        if (indegree[i] == 0) {
            ready.push(i);
        }
    }
    std::vector<int> order;
    while (!ready.empty()) {
        size_t i = ready.front();
        ready.pop();
        order.push_back(windows[i].id);
        for (size_t c : children[i]) {
            if (--indegree[c] == 0) {
                ready.push(c);
            }
        }
    }
    if (order.size() != windows.size()) {
        return std::nullopt;
    }
    return order;
}

bool WindowSet::commits_tile_region() const {
    const int nx = region.width_x(), nz = region.width_z(), nt = region.width_t();
    if (nx <= 0 || nz <= 0 || nt <= 0) {
        return windows.empty();
    }
    std::vector<int> hits(size_t(nx) * nz * nt, 0);
    for (const auto &w : windows) {
        if (!region.contains(w.commit) || !w.extent.contains(w.commit)) {
            return false;
        }
        for (int x = w.commit.x0; x < w.commit.x1; ++x) {
            for (int z = w.commit.z0; z < w.commit.z1; ++z) {
                for (int t = w.commit.t0; t < w.commit.t1; ++t) {
                    size_t cell = (size_t(x - region.x0) * nz + (z - region.z0)) * nt +
                                  (t - region.t0);
                    ++hits[cell];
                }
            }
        }
    }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

bool WindowSet::layer_commits_disjoint() const {
    std::map<int, std::vector<const DecodingWindow *>> by_layer;
    for (const auto &w : windows) {
        by_layer[w.layer].push_back(&w);
    }
    for (const auto &[layer, ws] : by_layer) {
        for (size_t i = 0; i < ws.size(); ++i) {
            for (size_t j = i + 1; j < ws.size(); ++j) {
                if (ws[i]->commit.overlaps(ws[j]->commit)) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<int> WindowSet::layer_sizes() const {
    std::vector<int> sizes(std::max(layer_count, 1), 0);
    for (const auto &w : windows) {
        if (w.layer > int(sizes.size())) {
            sizes.resize(w.layer, 0);
        }
        ++sizes[w.layer - 1];
    }
    return sizes;
}

WindowSet memory_windows(int n_cycles, int d) {
    require_distance(d);
    if (n_cycles < 1) {
        throw Error(ErrorKind::invalid_argument, "memory_windows needs n_cycles >= 1");
    }
    WindowSet set;
    set.kind = WindowKind::temporal;
    set.layer_count = 2;
    set.region = Box{0, 2, 0, 2, 0, 2 * n_cycles};

    // Cycle intervals, converted to half-d units on emission.
    struct Span {
        int commit0, commit1, extent0, extent1;
    };
    auto emit = [&](int layer, Span s, std::vector<int> deps) {
        DecodingWindow w;
        w.id = static_cast<int>(set.windows.size());
        w.kind = WindowKind::temporal;
        w.layer = layer;
        w.extent = Box{0, 2, 0, 2, 2 * s.extent0, 2 * s.extent1};
        w.commit = Box{0, 2, 0, 2, 2 * s.commit0, 2 * s.commit1};
        w.depends_on = std::move(deps);
        set.windows.push_back(std::move(w));
        return set.windows.back().id;
    };

    if (n_cycles <= 3) {
        emit(1, {0, n_cycles, 0, n_cycles}, {});
        return set;
    }

    std::vector<Span> a_spans;
    for (int s = n_cycles - 2; s >= 0; s -= 4) {
        if (s == n_cycles - 2) {
            a_spans.push_back({s, n_cycles, s - 1, n_cycles});
        } else {
            a_spans.push_back({s, s + 1, std::max(s - 1, 0), s + 2});
        }
    }
    std::reverse(a_spans.begin(), a_spans.end());
    // A leading remainder shorter than one period joins the first A window so
    // that the layers keep alternating.
    Span &first = a_spans.front();
    if (first.commit0 > 0) {
        first.commit0 = 0;
        first.extent0 = 0;
    }

    int prev_a = -1;
    for (size_t i = 0; i < a_spans.size(); ++i) {
        int a = emit(1, a_spans[i], {});
        if (prev_a >= 0) {
            int gap0 = a_spans[i - 1].commit1, gap1 = a_spans[i].commit0;
            if (gap1 > gap0) {
                emit(2, {gap0, gap1, gap0, gap1}, {prev_a, a});
            }
        }
        prev_a = a;
    }
    return set;
}

WindowSet surgery_windows(int nx, int nz, int d, bool has_y) {
    require_distance(d);
    if (nx < 1 || nz < 1) {
        throw Error(ErrorKind::invalid_argument, "surgery region needs at least one patch");
    }
    WindowSet set;
    set.kind = WindowKind::spatial;
    set.layer_count = has_y ? 3 : 2;
    set.region = Box{0, 2 * nx, 0, 2 * nz, 0, 2};

    const bool single = nx == 1 && nz == 1;
    for (int layer = 1; layer <= set.layer_count; ++layer) {
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < nz; ++j) {
                int assigned = single ? set.layer_count : 1 + (i + j) % set.layer_count;
                if (assigned != layer) {
                    continue;
                }
                DecodingWindow w;
                w.id = static_cast<int>(set.windows.size());
                w.kind = WindowKind::spatial;
                w.layer = layer;
                w.commit = Box{2 * i, 2 * i + 2, 2 * j, 2 * j + 2, 0, 2};
                w.extent = w.commit;
                w.extent.t0 = -2;
                if (layer < set.layer_count && !single) {
                    // d/2 buffers on every side in the first layer; the Y
                    // middle layer drops the -z buffer into committed ground.
                    w.extent.x0 -= 1;
                    w.extent.x1 += 1;
                    w.extent.z1 += 1;
                    if (layer == 1) {
                        w.extent.z0 -= 1;
                    }
                }
                for (const auto &prior : set.windows) {
                    if (prior.layer < layer && prior.commit.touches_in_space(w.extent)) {
                        w.depends_on.push_back(prior.id);
                    }
                }
                set.windows.push_back(std::move(w));
            }
        }
    }
    return set;
}

namespace {

nlohmann::json box_origin(const Box &b) { return {b.x0, b.z0, b.t0}; }
nlohmann::json box_size(const Box &b) { return {b.width_x(), b.width_z(), b.width_t()}; }

Box box_from(const nlohmann::json &origin, const nlohmann::json &size) {
    Box b;
    b.x0 = origin.at(0).get<int>();
    b.z0 = origin.at(1).get<int>();
    b.t0 = origin.at(2).get<int>();
    b.x1 = b.x0 + size.at(0).get<int>();
    b.z1 = b.z0 + size.at(1).get<int>();
    b.t1 = b.t0 + size.at(2).get<int>();
    return b;
}

}  // namespace

void write_windows_jsonl(const WindowSet &set, std::ostream &out) {
    for (const auto &w : set.windows) {
        nlohmann::json j;
        j["id"] = w.id;
        j["kind"] = w.kind == WindowKind::temporal ? "temporal" : "spatial";
        j["layer"] = w.layer_name();
        j["extent_half_d"] = box_size(w.extent);
        j["origin_half_d"] = box_origin(w.extent);
        j["commit_half_d"] = {{"origin", box_origin(w.commit)}, {"size", box_size(w.commit)}};
        j["depends_on"] = w.depends_on;
        out << j.dump() << '\n';
    }
}

WindowSet read_windows_jsonl(std::istream &in) {
    WindowSet set;
    std::string line;
    bool first = true;
    int max_layer = 1;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception &e) {
            throw Error(ErrorKind::config, std::string("bad window line: ") + e.what());
        }
        DecodingWindow w;
        try {
            w.id = j.at("id").get<int>();
            std::string kind = j.at("kind").get<std::string>();
            w.kind = kind == "temporal" ? WindowKind::temporal : WindowKind::spatial;
            std::string layer = j.at("layer").get<std::string>();
            if (w.kind == WindowKind::temporal) {
                w.layer = layer == "A" ? 1 : 2;
            } else {
                w.layer = std::stoi(layer);
            }
            w.extent = box_from(j.at("origin_half_d"), j.at("extent_half_d"));
            const auto &c = j.at("commit_half_d");
            w.commit = box_from(c.at("origin"), c.at("size"));
            w.depends_on = j.at("depends_on").get<std::vector<int>>();
        } catch (const nlohmann::json::exception &e) {
            throw Error(ErrorKind::config, std::string("bad window record: ") + e.what());
        }
        if (first) {
            set.kind = w.kind;
            set.region = w.commit;
            first = false;
        }
        Box &r = set.region;
        r.x0 = std::min(r.x0, w.commit.x0);
        r.z0 = std::min(r.z0, w.commit.z0);
        r.t0 = std::min(r.t0, w.commit.t0);
        r.x1 = std::max(r.x1, w.commit.x1);
        r.z1 = std::max(r.z1, w.commit.z1);
        r.t1 = std::max(r.t1, w.commit.t1);
        max_layer = std::max(max_layer, w.layer);
        set.windows.push_back(std::move(w));
    }
    set.layer_count = set.kind == WindowKind::temporal ? 2 : max_layer;
    return set;
}

int k_mem(int q_logical, int d, const DecoderModel &model, Micros t_dd, Micros tau_logical) {
    require_distance(d);
    if (q_logical < 1) {
        throw Error(ErrorKind::invalid_argument, "k_mem needs q_logical >= 1");
    }
    if (!(tau_logical.count() > 0)) {
        throw Error(ErrorKind::invalid_argument, "tau_logical must be > 0");
    }
    // Pairs of logical qubits share one 2d x d patch: 2d^2 nodes per round.
    Micros window = 6.0 * d * Micros(tau_d(model, 2.0 * d * d));
    double k = std::ceil(q_logical * (window + t_dd) / (8.0 * tau_logical));
    if (!(k <= std::numeric_limits<int>::max())) {
        throw Error(ErrorKind::invalid_argument, "memory decoder count overflows");
    }
    return std::max(1, static_cast<int>(k));
}

int k_ls(int q_logical, int multiplicity) {
    if (q_logical < 1 || multiplicity < 1) {
        throw Error(ErrorKind::invalid_argument, "k_ls needs q_logical >= 1, multiplicity >= 1");
    }
    // Exact integer ceiling of multiplicity * 2Q / 3.
    int64_t num = int64_t(multiplicity) * 2 * q_logical;
    return static_cast<int>((num + 2) / 3);
}

DecoderFleet fleet_estimate(int q_logical, int d, const DecoderModel &model, const CommLatencies &c,
                            const FleetOptions &opts) {
    require_distance(d);
    c.validate();
    if (!(opts.msf_uplift >= 0)) {
        throw Error(ErrorKind::invalid_argument, "msf_uplift must be >= 0");
    }
    if (!(opts.stab_round.count() > 0) || !(opts.bytes_per_syndrome > 0)) {
        throw Error(ErrorKind::invalid_argument, "stab_round and bytes_per_syndrome must be > 0");
    }
    DecoderFleet f;
    f.q_logical = q_logical;
    f.multiplicity = opts.multiplicity.value_or(surgery_multiplicity(model, d, c));
    Micros tau_logical = opts.stab_round * d;
    f.k_mem = k_mem(q_logical, d, model, c.t_dd, tau_logical);
    f.k_ls = k_ls(q_logical, f.multiplicity);
    f.k_total = static_cast<int>(std::ceil((f.k_mem + f.k_ls) * (1.0 + opts.msf_uplift) - 1e-9));
    f.window_problem_sizes = {{2, 1, 3}, {2, 2, 2}};

    // Surgery syndromes are held for the three-layer decode plus two exchanges.
    Micros comms_outside = c.t_qc + c.t_cd + c.t_do + c.t_oc + c.t_cq;
    f.syndrome_storage_time = gamma_ls(model, d, c) - comms_outside;
    f.rounds_retained = static_cast<int64_t>(std::ceil(f.syndrome_storage_time / opts.stab_round));
    f.syndrome_ram_bytes = opts.n_syndrome_qubits * double(f.rounds_retained) * opts.bytes_per_syndrome;
    return f;
}

int core_logical_qubits(double qpu_qubits, double core_fraction, int d, double tiles_per_qubit) {
    require_distance(d);
    if (!(qpu_qubits > 0) || !(core_fraction > 0 && core_fraction <= 1) || !(tiles_per_qubit > 0)) {
        throw Error(ErrorKind::invalid_argument, "invalid qubit budget for core sizing");
    }
    return static_cast<int>(std::floor(qpu_qubits * core_fraction /
                                       (double(tile_qubits(d)) * tiles_per_qubit)));
}

}  // namespace qlat
