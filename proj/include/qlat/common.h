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

#ifndef QLAT_COMMON_H
#define QLAT_COMMON_H

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlat {

// Time quantities are std::chrono durations so that seconds and microseconds
// convert explicitly through the type system instead of by convention.
using Seconds = std::chrono::duration<double>;
using Micros = std::chrono::duration<double, std::micro>;
using Nanos = std::chrono::duration<double, std::nano>;
using TickNs = std::chrono::nanoseconds;

enum class ErrorKind {
    invalid_distance,
    invalid_rounds,
    invalid_argument,
    infeasible_communication_bound,
    infeasible_budget,
    infeasible_distance_cap,
    deadlock,
    config,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

/// Throws invalid_distance unless d is odd and at least 3.
void require_distance(int d);

/// Rounds a duration up to whole nanoseconds for the event simulator.
TickNs to_ticks(Nanos t);

}  // namespace qlat

#endif
