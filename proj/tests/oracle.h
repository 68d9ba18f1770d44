// Copyright 2026 The homsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMSIM_TESTS_ORACLE_H
#define HOMSIM_TESTS_ORACLE_H

#include <complex>
#include <cstdint>
#include <map>
#include <utility>

#include "homsim/biphoton_state.h"

namespace homsim::oracle {

// Independent two-photon beamsplitter by creation-operator expansion.
// Output modes are numbered port * mode_count + grid index. Probabilities are
// keyed by the unordered outcome (low mode, high mode) and mix the
// indistinguishable and distinguishable predictions with weight gamma.
using Outcome = std::pair<uint32_t, uint32_t>;

inline std::map<Outcome, double> beamsplitter_outcomes(
    const BiphotonState &state, double t, double r, double gamma) {
    using C = std::complex<double>;
    const uint32_t m = static_cast<uint32_t>(state.grid().mode_count());
    std::map<Outcome, C> c;  // ordered (signal-born, idler-born)
    for (const auto &e : state.entries()) {
        const std::pair<uint32_t, C> sig[2] = {{e.signal, std::sqrt(t)}, {m + e.signal, C(0, std::sqrt(r))}};
        const std::pair<uint32_t, C> idl[2] = {{e.idler, C(0, std::sqrt(r))}, {m + e.idler, std::sqrt(t)}};
        for (const auto &[x, u] : sig) {
            for (const auto &[y, v] : idl) {
                c[{x, y}] += e.amplitude * u * v;
            }
        }
    }
    auto coeff = [&](uint32_t x, uint32_t y) {
        auto it = c.find({x, y});
        return it == c.end() ? C(0) : it->second;
    };
    std::map<Outcome, double> p;
    for (const auto &[key, value] : c) {
        uint32_t x = std::min(key.first, key.second), y = std::max(key.first, key.second);
        if (p.count({x, y})) {
            continue;
        }
        double quantum, classical;
        if (x == y) {
            quantum = 2 * std::norm(coeff(x, x));
            classical = std::norm(coeff(x, x));
        } else {
            quantum = std::norm(coeff(x, y) + coeff(y, x));
            classical = std::norm(coeff(x, y)) + std::norm(coeff(y, x));
        }
        p[{x, y}] = gamma * quantum + (1 - gamma) * classical;
    }
    return p;
}

}  // namespace homsim::oracle

#endif
