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

#include "qlat/sim.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <ostream>
#include <queue>
#include <random>
#include <tuple>

#include "json.hpp"

namespace qlat {

namespace {

// Events at the same instant resolve in this order, so a decoder freed at t
// is visible to a job that becomes ready at t, and a departing correction
// frees its slot before a new one arrives.
enum Rank : int {
    kDecodeDone = 0,
    kLeave = 1,
    kReady = 2,
    kOutcome = 3,
    kMeasure = 4,
    kIssue = 5,
    kStream = 6,
    kRotation = 7,
};

int64_t ticks(Micros t) { return to_ticks(Nanos(t)).count(); }

struct Event {
    int64_t t;
    int rank;
    uint64_t seq;
    std::function<void()> fn;
};

struct Later {
    bool operator()(const Event &a, const Event &b) const {
        return std::tie(a.t, a.rank, a.seq) > std::tie(b.t, b.rank, b.seq);
    }
};

struct Job {
    int64_t duration = 0;
    int64_t ready_at = 0;
    int pending = 1;  // the syndrome arrival counts as one dependency
    bool done = false;
    int64_t done_at = 0;
    std::vector<int64_t> dependents;
    std::function<void()> on_done;
};

class Engine {
   public:
    explicit Engine(const SimConfig &c)
        : cfg_(c), rng_(c.seed), free_(c.n_decoders), t_dd_(ticks(c.comms.t_dd)) {}

    int64_t now() const { return now_; }

    void at(int64_t t, int rank, std::function<void()> fn) {
        events_.push({t, rank, seq_++, std::move(fn)});
    }

    int64_t new_job(Micros nominal, std::function<void()> on_done) {
        double scale = 1.0;
        if (cfg_.jitter > 0) {
            scale += cfg_.jitter * std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
        }
        if (static_cast<int64_t>(jobs_.size()) >= cfg_.max_jobs) {
            throw Error(ErrorKind::invalid_argument,
                        "simulation exceeded max_jobs; the decoder pool is likely starved");
        }
        Job j;
        j.duration = to_ticks(Nanos(nominal * scale)).count();
        j.on_done = std::move(on_done);
        jobs_.push_back(std::move(j));
        ++generated_;
        return static_cast<int64_t>(jobs_.size()) - 1;
    }

    void add_dependency(int64_t job, int64_t dep) {
        Job &d = jobs_[dep];
        if (d.done) {
            jobs_[job].ready_at = std::max(jobs_[job].ready_at, d.done_at + t_dd_);
            return;
        }
        ++jobs_[job].pending;
        d.dependents.push_back(job);
    }

    void arrive(int64_t job, int64_t t) { satisfy(job, t); }

    void record(const char *type, int64_t id, int64_t aux = 0) {
        if (cfg_.record_trace) {
            trace_.push_back({now_, type, id, aux});
        }
    }

    void loop() {
        while (!events_.empty()) {
            Event ev = events_.top();
            events_.pop();
            now_ = ev.t;
            ev.fn();
        }
    }

    int64_t generated() const { return generated_; }
    int64_t decoded() const { return decoded_; }
    int64_t busy_ns() const { return busy_; }
    int max_depth() const { return max_depth_; }
    std::vector<TraceEvent> take_trace() { return std::move(trace_); }

    double queue_slope_per_ms(int64_t from_ns) const {
        double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto &[t, depth] : depth_samples_) {
            if (t < from_ns) {
                continue;
            }
            double x = t * 1e-6;
            n += 1;
            sx += x;
            sy += depth;
            sxx += x * x;
            sxy += x * depth;
        }
        double den = n * sxx - sx * sx;
        return (n < 2 || den <= 0) ? 0.0 : (n * sxy - sx * sy) / den;
    }

   private:
    void satisfy(int64_t id, int64_t t) {
        Job &j = jobs_[id];
        j.ready_at = std::max(j.ready_at, t);
        if (--j.pending == 0) {
            at(j.ready_at, kReady, [this, id] { enqueue(id); });
        }
    }

    void enqueue(int64_t id) {
        record("job_ready", id);
        fifo_.push_back(id);
        dispatch();
    }

    void dispatch() {
        while (free_ > 0 && !fifo_.empty()) {
            int64_t id = fifo_.front();
            fifo_.pop_front();
            --free_;
            record("decode_start", id, jobs_[id].ready_at);
            busy_ += jobs_[id].duration;
            at(now_ + jobs_[id].duration, kDecodeDone, [this, id] { finish(id); });
        }
        max_depth_ = std::max(max_depth_, static_cast<int>(fifo_.size()));
        depth_samples_.emplace_back(now_, static_cast<int>(fifo_.size()));
    }

    void finish(int64_t id) {
        ++free_;
        ++decoded_;
        Job &j = jobs_[id];
        j.done = true;
        j.done_at = now_;
        record("decode_done", id);
        for (int64_t dep : j.dependents) {
            satisfy(dep, now_ + t_dd_);
        }
        // The callback may create jobs and reallocate the job table.
        std::function<void()> cb = std::move(j.on_done);
        if (cb) {
            cb();
        }
        dispatch();
    }

    const SimConfig &cfg_;
    std::mt19937_64 rng_;
    std::priority_queue<Event, std::vector<Event>, Later> events_;
    uint64_t seq_ = 0;
    int64_t now_ = 0;
    std::deque<int64_t> fifo_;
    int free_;
    int64_t t_dd_;
    std::vector<Job> jobs_;
    int64_t generated_ = 0;
    int64_t decoded_ = 0;
    int64_t busy_ = 0;
    int max_depth_ = 0;
    std::vector<std::pair<int64_t, int>> depth_samples_;
    std::vector<TraceEvent> trace_;
};

Micros window_decode_time(const DecodingWindow &w, const SimConfig &c) {
    return w.rounds(c.d) * Micros(tau_d(c.decoder, w.nodes_per_round(c.d)));
}

// One temporal window of 3d rounds on a d x d patch.
Micros memory_window_time(const SimConfig &c) {
    return 3.0 * c.d * Micros(tau_d(c.decoder, double(c.d) * c.d));
}

Micros surgery_latency(const SimConfig &c, const WindowSet &surgery) {
    std::map<int, Micros> slowest;
    for (const auto &w : surgery.windows) {
        slowest[w.layer] = std::max(slowest[w.layer], window_decode_time(w, c));
    }
    Micros span = t_com(c.comms) - c.comms.t_dd;
    for (const auto &[layer, t] : slowest) {
        span += t + c.comms.t_dd;
    }
    return span;
}

int derived_lookahead(const SimConfig &c, const WindowSet &surgery) {
    Micros gm = gamma_mem(c.decoder, c.d, c.comms);
    Micros need = c.tau_logical() + surgery_latency(c, surgery);
    if (gm.count() <= 0) {
        return 1;
    }
    return static_cast<int>(std::ceil(need / gm)) + 1;
}

size_t steady_start(int n, double warmup) {
    size_t w = static_cast<size_t>(std::floor(warmup * n));
    return std::min(w, static_cast<size_t>(n - 1));
}

}  // namespace

void SimConfig::validate() const {
    require_distance(d);
    comms.validate();
    if (n_decoders < 1 || n_injections < 1) {
        throw Error(ErrorKind::invalid_argument, "n_decoders and n_injections must be >= 1");
    }
    if (!(stab_round.count() > 0)) {
        throw Error(ErrorKind::invalid_argument, "stab_round must be positive");
    }
    if (!(jitter >= 0 && jitter < 1)) {
        throw Error(ErrorKind::invalid_argument, "jitter must lie in [0, 1)");
    }
    if (memory_streams < 0 || lookahead < 0) {
        throw Error(ErrorKind::invalid_argument, "memory_streams and lookahead must be >= 0");
    }
    if (storage_capacity && *storage_capacity < 1) {
        throw Error(ErrorKind::invalid_argument, "storage_capacity must be >= 1");
    }
    if (max_jobs < 1) {
        throw Error(ErrorKind::invalid_argument, "max_jobs must be >= 1");
    }
    if (!(warmup_fraction >= 0 && warmup_fraction < 1)) {
        throw Error(ErrorKind::invalid_argument, "warmup_fraction must lie in [0, 1)");
    }
}

WindowSet default_surgery_windows(int d) { return surgery_windows(5, 1, d, true); }

SimReport run(const SimConfig &config) { return run(config, default_surgery_windows(config.d)); }

SimReport run(const SimConfig &cfg, const WindowSet &surgery) {
    cfg.validate();
    auto order = surgery.topological_order();
    if (!order) {
        throw Error(ErrorKind::deadlock, "window dependencies form a cycle or dangle");
    }
    std::map<int, const DecodingWindow *> by_id;
    for (const auto &w : surgery.windows) {
        by_id[w.id] = &w;
    }

    Engine e(cfg);
    const int n = cfg.n_injections;
    const int64_t stab = ticks(cfg.stab_round);
    const int64_t tau = stab * cfg.d;
    const int64_t hop_in = ticks(cfg.comms.t_qc + cfg.comms.t_cd);
    const int64_t hop_out = ticks(cfg.comms.t_do + cfg.comms.t_oc + cfg.comms.t_cq);
    const Micros mem_time = memory_window_time(cfg);
    const int lookahead = cfg.lookahead > 0 ? cfg.lookahead : derived_lookahead(cfg, surgery);

    std::vector<int64_t> G(n, -1), L(n, -1), M(n, -1), F(n, -1);
    std::vector<int> ls_left(n, 0);
    bool chain_done = false;
    int64_t measured = 0;

    std::function<void(int)> issue, try_measure, measure, outcome;

    try_measure = [&](int i) {
        if (i >= n || M[i] >= 0 || L[i] < 0 || (i > 0 && F[i - 1] < 0)) {
            return;
        }
        int64_t t = std::max(L[i], i > 0 ? F[i - 1] : int64_t{0});
        M[i] = (t + stab - 1) / stab * stab;
        e.at(M[i], kMeasure, [&, i] { measure(i); });
    };

    issue = [&](int i) {
        e.record("gadget_issue", i);
        int64_t arrival = G[i] + tau + hop_in;
        if (surgery.windows.empty()) {
            L[i] = arrival + hop_out;
            try_measure(i);
            return;
        }
        ls_left[i] = static_cast<int>(surgery.windows.size());
        std::map<int, int64_t> job_of;
        for (int wid : *order) {
            const DecodingWindow &w = *by_id.at(wid);
            int64_t job = e.new_job(window_decode_time(w, cfg), [&, i] {
                if (--ls_left[i] == 0) {
                    L[i] = e.now() + hop_out;
                    try_measure(i);
                }
            });
            for (int dep : w.depends_on) {
                e.add_dependency(job, job_of.at(dep));
            }
            job_of[wid] = job;
            e.arrive(job, arrival);
        }
    };

    measure = [&](int i) {
        ++measured;
        e.record("correction_measure", i);
        int64_t a = e.new_job(mem_time, nullptr);
        int64_t b = e.new_job(mem_time, [&, i] {
            F[i] = e.now() + hop_out;
            e.at(F[i], kOutcome, [&, i] { outcome(i); });
        });
        e.add_dependency(b, a);
        e.arrive(a, M[i] + hop_in);
        e.arrive(b, M[i] + hop_in);
        int next = i + lookahead;
        if (next < n) {
            G[next] = M[i];
            e.at(G[next], kIssue, [&, next] { issue(next); });
        }
    };

    outcome = [&](int i) {
        e.record("outcome_arrive", i);
        if (i == n - 1) {
            chain_done = true;
        }
        try_measure(i + 1);
    };

    for (int j = 0; j < std::min(lookahead, n); ++j) {
        G[j] = 0;
        e.at(0, kIssue, [&, j] { issue(j); });
    }

    // Idle data patches: alternating A and B windows of 3d rounds each. A B
    // window is emitted once both of its A neighbours exist.
    const int64_t batch = 3 * tau;
    std::vector<std::vector<int64_t>> stream_a(cfg.memory_streams);
    std::function<void(int, int64_t)> stream_batch = [&](int s, int64_t k) {
        if (chain_done) {
            return;
        }
        if (k % 2 == 0) {
            int64_t a = e.new_job(mem_time, nullptr);
            e.arrive(a, e.now() + hop_in);
            stream_a[s].push_back(a);
            size_t na = stream_a[s].size();
            if (na >= 2) {
                int64_t b = e.new_job(mem_time, nullptr);
                e.add_dependency(b, stream_a[s][na - 2]);
                e.add_dependency(b, stream_a[s][na - 1]);
                e.arrive(b, e.now() - batch + hop_in);
            }
        }
        e.at(e.now() + batch, kStream, [&, s, k] { stream_batch(s, k + 1); });
    };
    for (int s = 0; s < cfg.memory_streams; ++s) {
        e.at(batch, kStream, [&, s] { stream_batch(s, 0); });
    }

    e.loop();
    if (!chain_done) {
        throw Error(ErrorKind::deadlock, "decode jobs wait on dependencies that never resolve");
    }

    SimReport r;
    size_t w0 = steady_start(n, cfg.warmup_fraction);
    double gamma_sum = 0;
    int peak = 1;
    for (size_t i = w0; i < size_t(n); ++i) {
        gamma_sum += F[i] - M[i];
        peak = std::max(peak, static_cast<int>((F[i] - M[i] + tau - 1) / tau));
    }
    double gamma_ns = gamma_sum / (n - w0);
    r.measured_gamma_mem = Nanos(gamma_ns);
    r.mean_injection_period =
        size_t(n - 1) > w0 ? Nanos(double(M[n - 1] - M[w0]) / (n - 1 - w0)) : Nanos(gamma_ns);
    r.peak_correction_storage = peak;
    r.total_runtime = Nanos(double(F[n - 1]));
    int64_t end = std::max<int64_t>(e.now(), 1);
    r.decoder_utilization = std::min(1.0, double(e.busy_ns()) / (double(end) * cfg.n_decoders));
    r.max_queue_depth = e.max_depth();
    r.queue_growth_per_ms = e.queue_slope_per_ms(M[w0]);
    r.windows_generated = e.generated();
    r.windows_decoded = e.decoded();
    r.corrections_measured = measured;
    r.trace = e.take_trace();
    return r;
}

SimReport run_msf_unit(const SimConfig &cfg) {
    cfg.validate();
    constexpr int kRotations = 11;
    Engine e(cfg);
    const int n_rot = kRotations * cfg.n_injections;
    const int64_t tau = ticks(cfg.stab_round) * cfg.d;
    const int64_t hop_in = ticks(cfg.comms.t_qc + cfg.comms.t_cd);
    const int64_t hop_out = ticks(cfg.comms.t_do + cfg.comms.t_oc + cfg.comms.t_cq);
    const Micros mem_time = memory_window_time(cfg);

    int capacity = cfg.storage_capacity.value_or(storage_patches(cfg));
    int magic_slots = cfg.co_store_magic_state ? 1 : 0;
    int correction_slots = capacity - magic_slots;
    if (correction_slots < 1) {
        throw Error(ErrorKind::invalid_argument, "storage pool has no room for corrections");
    }

    std::vector<int64_t> end_of(n_rot, -1), outcome_at(n_rot, -1);
    std::vector<char> stored(n_rot, 0), resolved(n_rot, 0);
    std::vector<int64_t> produced;
    int occupancy = 0, magic = 0, peak = 0;
    int waiting = -1;
    int64_t measured = 0;

    std::function<void(int)> start_rotation, end_rotation, enter;

    enter = [&](int j) {
        if (resolved[j]) {
            ++measured;
        } else {
            stored[j] = 1;
            ++occupancy;
            e.record("storage_enter", j, occupancy + magic);
            peak = std::max(peak, occupancy + magic);
        }
        if (j + 1 < n_rot) {
            start_rotation(j + 1);
        }
    };

    start_rotation = [&](int j) {
        e.at(e.now() + tau, kRotation, [&, j] { end_rotation(j); });
    };

    end_rotation = [&](int j) {
        end_of[j] = e.now();
        e.record("rotation_end", j);
        int64_t a = e.new_job(mem_time, nullptr);
        int64_t b = e.new_job(mem_time, [&, j] {
            outcome_at[j] = e.now() + hop_out;
            e.at(outcome_at[j], kLeave, [&, j] {
                if (stored[j]) {
                    stored[j] = 0;
                    --occupancy;
                    ++measured;
                    e.record("storage_leave", j, occupancy + magic);
                    if (waiting >= 0) {
                        int w = waiting;
                        waiting = -1;
                        enter(w);
                    }
                } else {
                    resolved[j] = 1;
                }
            });
        });
        e.add_dependency(b, a);
        e.arrive(a, e.now() + hop_in);
        e.arrive(b, e.now() + hop_in);
        if (j % kRotations == kRotations - 1) {
            // The previous state is handed to its consumer as this one lands.
            produced.push_back(e.now());
            magic = magic_slots;
            e.record("state_produced", j / kRotations);
            peak = std::max(peak, occupancy + magic);
        }
        if (occupancy < correction_slots) {
            enter(j);
        } else {
            waiting = j;
        }
    };

    e.at(0, kRotation, [&] { start_rotation(0); });
    e.loop();
    if (measured != n_rot) {
        throw Error(ErrorKind::deadlock, "corrections left unresolved");
    }

    SimReport r;
    size_t w0 = steady_start(n_rot, cfg.warmup_fraction);
    double gamma_sum = 0;
    int64_t last = 0;
    for (size_t j = w0; j < size_t(n_rot); ++j) {
        gamma_sum += outcome_at[j] - end_of[j];
    }
    for (int64_t t : outcome_at) {
        last = std::max(last, t);
    }
    r.measured_gamma_mem = Nanos(gamma_sum / (n_rot - w0));
    size_t p0 = steady_start(static_cast<int>(produced.size()), cfg.warmup_fraction);
    size_t np = produced.size();
    r.output_period = np - 1 > p0 ? Nanos(double(produced[np - 1] - produced[p0]) / (np - 1 - p0))
                                  : Nanos(double(produced[0]));
    r.mean_injection_period = r.output_period;
    r.peak_correction_storage = std::max(peak, 1);
    r.total_runtime = Nanos(double(last));
    int64_t end = std::max<int64_t>(e.now(), 1);
    r.decoder_utilization = std::min(1.0, double(e.busy_ns()) / (double(end) * cfg.n_decoders));
    r.max_queue_depth = e.max_depth();
    r.queue_growth_per_ms = e.queue_slope_per_ms(end_of[w0]);
    r.windows_generated = e.generated();
    r.windows_decoded = e.decoded();
    r.corrections_measured = measured;
    r.trace = e.take_trace();
    return r;
}

int storage_patches(const SimConfig &cfg) {
    Micros gm = gamma_mem(cfg.decoder, cfg.d, cfg.comms);
    int n = static_cast<int>(std::ceil(gm / cfg.tau_logical() - 1e-9));
    return std::max(n, 1) + (cfg.co_store_magic_state ? 1 : 0);
}

int analytic_decoder_count(const SimConfig &cfg, const WindowSet &surgery) {
    int lookahead = cfg.lookahead > 0 ? cfg.lookahead : derived_lookahead(cfg, surgery);
    Micros mem_time = memory_window_time(cfg);
    // A stream emits two windows every 6d rounds.
    double period_us = 6.0 * cfg.tau_logical().count();
    int per_stream = 2 * (static_cast<int>(std::ceil(mem_time.count() / period_us)) + 1);
    return 1 + lookahead * static_cast<int>(surgery.windows.size()) +
           cfg.memory_streams * per_stream;
}

int msf_decoder_count(const SimConfig &cfg) {
    Micros busy = 2.0 * memory_window_time(cfg) + cfg.comms.t_dd;
    return static_cast<int>(std::ceil(busy / cfg.tau_logical())) + 1;
}

void write_trace_jsonl(const std::vector<TraceEvent> &trace, std::ostream &out) {
    for (const auto &ev : trace) {
        nlohmann::json j = {
            {"time_ns", ev.time_ns}, {"event_type", ev.type}, {"id", ev.id}, {"aux", ev.aux}};
        out << j.dump() << '\n';
    }
}

void write_report_json(const SimReport &r, std::ostream &out) {
    nlohmann::json j = {
        {"mean_injection_period_us", r.mean_injection_period.count()},
        {"measured_gamma_mem_us", r.measured_gamma_mem.count()},
        {"peak_correction_storage", r.peak_correction_storage},
        {"total_runtime_us", r.total_runtime.count()},
        {"decoder_utilization", r.decoder_utilization},
        {"max_queue_depth", r.max_queue_depth},
        {"queue_growth_per_ms", r.queue_growth_per_ms},
        {"output_period_us", r.output_period.count()},
        {"windows_generated", r.windows_generated},
        {"windows_decoded", r.windows_decoded},
        {"corrections_measured", r.corrections_measured},
    };
    out << j.dump(2) << '\n';
}

}  // namespace qlat
