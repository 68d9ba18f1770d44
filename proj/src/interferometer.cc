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

#include "homsim/interferometer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "homsim/errors.h"

namespace homsim {

namespace {

bool output_less(const OutputAmplitude &x, const OutputAmplitude &y) {
    return x.first != y.first ? x.first < y.first : x.second < y.second;
}

/// |B12|^2 + |B21|^2 + 2 gamma Re(B12* B21) for distinct modes,
/// |B|^2 (1 + gamma) when both photons share a mode.
double pair_probability(Complex b12, Complex b21, bool same_mode, double gamma) {
    if (same_mode) {
        return std::norm(b12) * (1 + gamma);
    }
    return std::norm(b12) + std::norm(b21) + 2 * gamma * (std::conj(b12) * b21).real();
}

struct Window {
    Port port;
    MomentumLabel center;
    double width;
    std::vector<std::pair<uint32_t, double>> weights;  // grid index, normalized weight
};

Window make_window(const MomentumGrid &grid, const CollectionMode &mode) {
    if (mode.center.is_origin()) {
        throw ValidationError("collection mode centered at k = 0 is self-paired");
    }
    if (!grid.contains(mode.center)) {
        throw ValidationError("collection center " + mode.center.str() + " lies outside the grid");
    }
    if (!(mode.width >= 0) || !std::isfinite(mode.width)) {
        throw ValidationError("collection width must be non-negative");
    }
    Window w{mode.port, mode.center, mode.width, {}};
    if (mode.width == 0) {
        w.weights.emplace_back(grid.index(mode.center), 1.0);
        return w;
    }
    const double radius = 3 * mode.width;
    const int reach = static_cast<int>(std::floor(radius));
    double total = 0;
    for (int dx = -reach; dx <= reach; dx++) {
        for (int dy = -reach; dy <= reach; dy++) {
            MomentumLabel k{mode.center.ix + dx, mode.center.iy + dy};
            double r2 = double(dx) * dx + double(dy) * dy;
            if (!grid.contains(k) || r2 > radius * radius) {
                continue;
            }
            double f = std::exp(-r2 / (2 * mode.width * mode.width));
            w.weights.emplace_back(grid.index(k), f);
            total += f * f;
        }
    }
    const double scale = 1 / std::sqrt(total);
    for (auto &p : w.weights) {
        p.second *= scale;
    }
    return w;
}

}  // namespace

const char *port_name(Port port) {
    return port == Port::a ? "a" : "b";
}

Beamsplitter Beamsplitter::from_transmittance(double t) {
    Beamsplitter bs{t, 1 - t};
    bs.validate();
    return bs;
}

void Beamsplitter::validate() const {
    if (!(transmittance > 0 && transmittance < 1) || !(reflectance > 0 && reflectance < 1)) {
        throw ValidationError("beamsplitter T and R must lie in (0, 1)");
    }
    if (std::abs(transmittance + reflectance - 1) > 1e-12) {
        throw ValidationError("beamsplitter T + R must equal 1");
    }
}

std::vector<CollectionMode> default_collection(MomentumLabel k0) {
    return {{Port::a, k0, 0}, {Port::b, -k0, 0}};
}

void Circuit::validate() const {
    beamsplitter.validate();
    if (!(mode_overlap >= 0 && mode_overlap <= 1)) {
        throw ValidationError("mode overlap must lie in [0, 1]");
    }
    if (collection.size() < 2) {
        throw ValidationError("circuit needs at least two collection modes");
    }
    for (Arm a : {Arm::signal, Arm::idler}) {
        for (const auto &e : arm(a)) {
            if (const auto *d = std::get_if<Delay>(&e); d != nullptr && !std::isfinite(d->length)) {
                throw ValidationError(std::string("non-finite delay on the ") + arm_name(a) + " arm");
            }
        }
    }
}

Circuit hom_circuit(const MomentumGrid &grid, MomentumLabel k0, double jump, uint32_t mirrors_per_arm) {
    Circuit c;
    for (uint32_t i = 0; i < mirrors_per_arm; i++) {
        c.signal_arm.emplace_back(Mirror{});
        c.idler_arm.emplace_back(Mirror{});
    }
    c.idler_arm.emplace_back(step_mask(jump, grid));
    c.collection = default_collection(k0);
    return c;
}

Circuit with_idler_delay(Circuit circuit, double delay) {
    circuit.idler_arm.emplace_back(Delay{delay});
    return circuit;
}

ParityReport reflection_parity(const Circuit &circuit) {
    auto count = [](const std::vector<Element> &arm) {
        return static_cast<uint32_t>(
            std::count_if(arm.begin(), arm.end(), [](const Element &e) { return std::holds_alternative<Mirror>(e); }));
    };
    uint32_t s = count(circuit.signal_arm) % 2;
    uint32_t i = count(circuit.idler_arm) % 2;
    return {s, i, s == i};
}

TwoPhotonOutput::TwoPhotonOutput(MomentumGrid grid, std::vector<OutputAmplitude> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
    std::sort(amplitudes_.begin(), amplitudes_.end(), output_less);
}

Complex TwoPhotonOutput::amplitude(OutputMode first, OutputMode second) const {
    OutputAmplitude key{first, second, 0};
    auto it = std::lower_bound(amplitudes_.begin(), amplitudes_.end(), key, output_less);
    if (it == amplitudes_.end() || it->first != first || it->second != second) {
        return 0;
    }
    return it->amplitude;
}

double TwoPhotonOutput::total_probability(double gamma) const {
    // Sum over ordered pairs of |B(u,v)|^2 plus gamma Re(B(u,v)* B(v,u)).
    double direct = 0;
    double cross = 0;
    for (const auto &e : amplitudes_) {
        direct += std::norm(e.amplitude);
        cross += (std::conj(e.amplitude) * amplitude(e.second, e.first)).real();
    }
    return direct + gamma * cross;
}

TwoPhotonOutput apply_beamsplitter(const BiphotonState &state, double transmittance, double reflectance) {
    Beamsplitter{transmittance, reflectance}.validate();
    const double t = std::sqrt(transmittance);
    const Complex r(0, std::sqrt(reflectance));
    const auto modes = static_cast<uint32_t>(state.grid().mode_count());
    std::vector<OutputAmplitude> out;
    out.reserve(state.entries().size() * 4);
    for (const auto &e : state.entries()) {
        const uint32_t sa = e.signal, sb = modes + e.signal;
        const uint32_t ia = e.idler, ib = modes + e.idler;
        out.push_back({sa, ia, t * r * e.amplitude});
        out.push_back({sa, ib, t * t * e.amplitude});
        out.push_back({sb, ia, r * r * e.amplitude});
        out.push_back({sb, ib, r * t * e.amplitude});
    }
    return TwoPhotonOutput(state.grid(), std::move(out));
}

DetectionDistribution port_statistics(const TwoPhotonOutput &output, double gamma) {
    DetectionDistribution d;
    d.gamma = gamma;
    for (const auto &e : output.amplitudes()) {
        // Each unordered outcome is visited once from its lower ordered key;
        // doubly occupied modes are visited once.
        Complex swapped = output.amplitude(e.second, e.first);
        bool same = e.first == e.second;
        if (!same && e.second < e.first && swapped != Complex(0)) {
            continue;
        }
        double p = pair_probability(e.amplitude, swapped, same, gamma);
        Port p1 = output.port_of(e.first), p2 = output.port_of(e.second);
        if (p1 != p2) {
            d.p_cc += p;
        } else if (p1 == Port::a) {
            d.p_aa += p;
        } else {
            d.p_bb += p;
        }
    }
    return d;
}

DetectionDistribution couple_collection(
    const TwoPhotonOutput &output, const std::vector<CollectionMode> &modes, double gamma) {
    const auto &grid = output.grid();
    if (!(gamma >= 0 && gamma <= 1)) {
        throw ValidationError("indistinguishability must lie in [0, 1]");
    }

    // Declared fibers plus their point-reflected twins, deduplicated.
    std::vector<CollectionMode> fibers;
    auto fiber_id = [&](const CollectionMode &m) {
        auto it = std::find(fibers.begin(), fibers.end(), m);
        if (it != fibers.end()) {
            return static_cast<size_t>(it - fibers.begin());
        }
        fibers.push_back(m);
        return fibers.size() - 1;
    };
    std::vector<std::pair<size_t, size_t>> declared;  // (fiber, twin)
    bool has_a = false, has_b = false;
    for (const auto &m : modes) {
        size_t id = fiber_id(m);
        size_t twin = fiber_id({m.port, -m.center, m.width});
        declared.emplace_back(id, twin);
        (m.port == Port::a ? has_a : has_b) = true;
    }
    if (!has_a || !has_b) {
        throw ValidationError("collection needs at least one fiber on each output port");
    }

    std::vector<Window> windows;
    for (const auto &f : fibers) {
        windows.push_back(make_window(grid, f));
    }

    // (output mode, window, weight), sorted by mode. Same-port windows must not
    // share pixels.
    struct Tap {
        OutputMode mode;
        size_t window;
        double weight;
    };
    std::vector<Tap> taps;
    for (size_t w = 0; w < windows.size(); w++) {
        for (auto [index, weight] : windows[w].weights) {
            taps.push_back({output.mode(windows[w].port, grid.label(index)), w, weight});
        }
    }
    std::sort(taps.begin(), taps.end(), [](const Tap &x, const Tap &y) { return x.mode < y.mode; });
    for (size_t t = 1; t < taps.size(); t++) {
        if (taps[t].mode == taps[t - 1].mode) {
            const auto &w1 = windows[taps[t - 1].window];
            const auto &w2 = windows[taps[t].window];
            throw ValidationError(
                std::string("collection windows on port ") + port_name(w1.port) + " around " + w1.center.str() +
                " and " + w2.center.str() + " overlap");
        }
    }
    auto tap_of = [&](OutputMode m) -> const Tap * {
        auto it = std::lower_bound(
            taps.begin(), taps.end(), m, [](const Tap &t, OutputMode mode) { return t.mode < mode; });
        return it != taps.end() && it->mode == m ? &*it : nullptr;
    };

    // Projected amplitudes, signal-born photon in the row fiber.
    const size_t nf = windows.size();
    std::vector<Complex> projected(nf * nf);
    for (const auto &e : output.amplitudes()) {
        const Tap *t1 = tap_of(e.first);
        if (t1 == nullptr) {
            continue;
        }
        const Tap *t2 = tap_of(e.second);
        if (t2 == nullptr) {
            continue;
        }
        projected[t1->window * nf + t2->window] += t1->weight * t2->weight * e.amplitude;
    }
    auto prob = [&](size_t i, size_t j) {
        return pair_probability(projected[i * nf + j], projected[j * nf + i], i == j, gamma);
    };

    DetectionDistribution d;
    d.gamma = gamma;

    std::vector<std::pair<size_t, size_t>> channels;
    auto add_channel = [&](size_t x, size_t y) {
        std::pair<size_t, size_t> key{std::min(x, y), std::max(x, y)};
        if (std::find(channels.begin(), channels.end(), key) == channels.end()) {
            channels.push_back(key);
        }
    };
    for (size_t i = 0; i < modes.size(); i++) {
        for (size_t j = 0; j < modes.size(); j++) {
            if (modes[i].port == Port::a && modes[j].port == Port::b) {
                add_channel(declared[i].first, declared[j].first);
                add_channel(declared[i].second, declared[j].second);
            }
        }
    }
    for (auto [x, y] : channels) {
        d.p_cc += prob(x, y);
    }
    for (size_t i = 0; i < nf; i++) {
        for (size_t j = i; j < nf; j++) {
            if (windows[i].port != windows[j].port) {
                continue;
            }
            (windows[i].port == Port::a ? d.p_aa : d.p_bb) += prob(i, j);
        }
    }

    d.residual = output.total_probability(gamma) - (d.p_cc + d.p_aa + d.p_bb);
    if (std::abs(d.residual) < 1e-15) {
        d.residual = std::max(d.residual, 0.0);
    }
    return d;
}

BiphotonState propagate_arms(const Circuit &circuit, const BiphotonState &state) {
    BiphotonState current = state;
    for (Arm arm : {Arm::signal, Arm::idler}) {
        for (const auto &element : circuit.arm(arm)) {
            if (std::holds_alternative<Mirror>(element)) {
                current = apply_mirror(current, arm);
            } else if (const auto *mask = std::get_if<PhaseMask>(&element)) {
                current = apply_mask(current, *mask, arm);
            } else {
                current = set_delay(current, arm, std::get<Delay>(element).length);
            }
        }
    }
    return current;
}

double indistinguishability(const Circuit &circuit, const BiphotonState &propagated) {
    double dl = propagated.arm(Arm::idler).delay - propagated.arm(Arm::signal).delay;
    return circuit.mode_overlap * gamma(circuit.coherence, dl);
}

DetectionDistribution run(const Circuit &circuit, const BiphotonState &source, MomentumLabel k0, Selection selection) {
    return run_with_collection(circuit, source, k0, circuit.collection, selection);
}

DetectionDistribution run_with_collection(
    const Circuit &circuit,
    const BiphotonState &source,
    MomentumLabel k0,
    const std::vector<CollectionMode> &collection,
    Selection selection) {
    circuit.beamsplitter.validate();
    if (!(circuit.mode_overlap >= 0 && circuit.mode_overlap <= 1)) {
        throw ValidationError("mode overlap must lie in [0, 1]");
    }
    if (collection.size() < 2) {
        throw ValidationError("circuit needs at least two collection modes");
    }
    BiphotonState input = selection == Selection::pair ? to_state(post_select(source, k0), source.grid()) : source;
    BiphotonState propagated = propagate_arms(circuit, input);
    double g = indistinguishability(circuit, propagated);
    auto output = apply_beamsplitter(propagated, circuit.beamsplitter.transmittance, circuit.beamsplitter.reflectance);
    auto d = couple_collection(output, collection, g);
    if (!(d.p_cc + d.p_aa + d.p_bb > 0)) {
        throw ValidationError("collection fibers capture zero probability");
    }
    return d;
}

}  // namespace homsim
