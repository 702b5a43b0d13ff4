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

// Straight-line reference formulas, written without the library, used to
// cross-check it on random inputs. Times are plain doubles in seconds.

#ifndef QLAT_TESTS_ORACLES_H
#define QLAT_TESTS_ORACLES_H

#include <cmath>

namespace oracle {

struct Fit {
    double mu_s, lambda_s, mu_t, lambda_t;
};

inline double p_mem(int d, double r, const Fit &f) {
    return f.mu_s * d * r * std::exp(-0.5 * (d + 1) * std::log(f.lambda_s));
}

inline double p_ls(int d, double r, double k, double b, const Fit &f) {
    double sup_s = std::exp(-0.5 * (d + 1) * std::log(f.lambda_s));
    double sup_t = std::exp(-0.5 * (r + 1) * std::log(f.lambda_t));
    return f.mu_s * (k * d * r + b * d * r + k * d) * sup_s + f.mu_t * b * d * d * sup_t;
}

inline double p_pi8(int d, double k, double b, double g_mem, double g_ls, double tau,
                    const Fit &f) {
    double injection = p_ls(d, d, 3, 2, f);
    double rotation = p_ls(d, d, k + 1, b, f);
    double idle = (k * g_mem / tau + g_ls / tau + 1.0) * p_mem(d, d, f);
    return injection + rotation + idle;
}

inline double tau_d(double alpha, double beta, double n) {
    return alpha * std::exp(beta * std::log(n));
}

inline double gamma_mem(double alpha, double beta, int d, double t_com) {
    return 6 * d * tau_d(alpha, beta, double(d) * d) + t_com;
}

inline double gamma_ls(double alpha, double beta, int d, double t_com, double t_dd) {
    double dd = double(d) * d;
    double layers = tau_d(alpha, beta, 4 * dd) + tau_d(alpha, beta, 3 * dd) +
                    tau_d(alpha, beta, dd);
    return 2 * d * layers + t_com + t_dd;
}

inline double required_speed(double t_circuit, double t_count, int d, double t_com) {
    return (t_circuit / t_count - t_com) / (6 * d);
}

inline long k_mem(long q, int d, double alpha, double beta, double t_dd, double tau) {
    double work = 6 * d * tau_d(alpha, beta, 2.0 * d * d) + t_dd;
    long k = static_cast<long>(std::ceil(q * work / (8 * tau)));
    return k < 1 ? 1 : k;
}

inline long k_ls(long q, int m) {
    long num = 2 * q * m;
    return num / 3 + (num % 3 != 0 ? 1 : 0);
}

}  // namespace oracle

#endif
