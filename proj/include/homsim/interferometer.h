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

#ifndef HOMSIM_INTERFEROMETER_H
#define HOMSIM_INTERFEROMETER_H

#include <cstdint>
#include <variant>
#include <vector>

#include "homsim/biphoton_state.h"
#include "homsim/elements.h"

namespace homsim {

enum class Port : uint8_t { a = 0, b = 1 };

const char *port_name(Port port);

struct Mirror {
    bool operator==(const Mirror &) const = default;
};
struct Delay {
    double length;  // meters
    bool operator==(const Delay &) const = default;
};
using Element = std::variant<Mirror, PhaseMask, Delay>;

/// Lossless beamsplitter [[sqrt(T), i sqrt(R)], [i sqrt(R), sqrt(T)]].
struct Beamsplitter {
    double transmittance;
    double reflectance;

    /// R = 1 - T. Throws ValidationError unless 0 < T < 1.
    static Beamsplitter from_transmittance(double t);
    /// Throws ValidationError unless T, R in (0, 1) and T + R = 1 within 1e-12.
    void validate() const;
};

/// A fiber collecting one output port around a momentum center.
///
/// width is a Gaussian apodization radius in grid units, truncated at three
/// radii; zero selects the single center pixel.
struct CollectionMode {
    Port port;
    MomentumLabel center;
    double width = 0;

    bool operator==(const CollectionMode &) const = default;
};

/// Opposite-side fibers: port a at +k0, port b at -k0.
std::vector<CollectionMode> default_collection(MomentumLabel k0);

struct Circuit {
    std::vector<Element> signal_arm;
    std::vector<Element> idler_arm;
    Beamsplitter beamsplitter{0.5, 0.5};
    std::vector<CollectionMode> collection;
    CoherenceModel coherence = default_coherence();
    /// Spatial mode overlap of the two beams at the beamsplitter, in [0, 1].
    double mode_overlap = 1;

    const std::vector<Element> &arm(Arm a) const {
        return a == Arm::signal ? signal_arm : idler_arm;
    }
    std::vector<Element> &arm(Arm a) {
        return a == Arm::signal ? signal_arm : idler_arm;
    }
    void validate() const;
};

/// Two-arm circuit: `mirrors_per_arm` mirrors on each arm, a step mask of
/// height `jump` on the idler, a 50:50 beamsplitter and opposite-side fibers.
Circuit hom_circuit(const MomentumGrid &grid, MomentumLabel k0, double jump, uint32_t mirrors_per_arm = 2);

/// Returns a copy whose idler arm ends with a delay element of `delay` meters.
Circuit with_idler_delay(Circuit circuit, double delay);

struct ParityReport {
    uint32_t signal_parity;
    uint32_t idler_parity;
    bool same_parity;
};

ParityReport reflection_parity(const Circuit &circuit);

/// Outcome probabilities at the collection fibers.
///
/// Every declared fiber is paired with its point-reflected twin (same port,
/// center -c). A coincidence channel is a declared (port a, port b) fiber pair
/// together with its twin pair; p_cc sums over those channels. p_aa and p_bb
/// count both photons landing in port a (b) fibers. residual is everything
/// else, including cross-port events outside the channels.
struct DetectionDistribution {
    double p_cc = 0;
    double p_aa = 0;
    double p_bb = 0;
    double residual = 0;
    double gamma = 0;  // indistinguishability used for the interference terms

    double total() const {
        return p_cc + p_aa + p_bb + residual;
    }
};

/// Output port/momentum mode id: port * mode_count + grid index.
using OutputMode = uint32_t;

/// Amplitude with the signal-born photon in `first` and the idler-born photon
/// in `second`.
struct OutputAmplitude {
    OutputMode first;
    OutputMode second;
    Complex amplitude;
};

/// Two-photon state after the beamsplitter, with the photons still labeled by
/// origin so partial distinguishability can be applied when squaring.
class TwoPhotonOutput {
   public:
    TwoPhotonOutput(MomentumGrid grid, std::vector<OutputAmplitude> amplitudes);

    const MomentumGrid &grid() const {
        return grid_;
    }
    std::span<const OutputAmplitude> amplitudes() const {
        return amplitudes_;
    }
    OutputMode mode(Port port, MomentumLabel k) const {
        return static_cast<OutputMode>(static_cast<uint32_t>(port) * grid_.mode_count() + grid_.index(k));
    }
    Port port_of(OutputMode m) const {
        return m < grid_.mode_count() ? Port::a : Port::b;
    }
    uint32_t grid_index_of(OutputMode m) const {
        return static_cast<uint32_t>(m % grid_.mode_count());
    }
    Complex amplitude(OutputMode first, OutputMode second) const;

    /// Sum of all outcome probabilities when interference terms are scaled by
    /// gamma. Equal to 1 for any normalized input.
    double total_probability(double gamma) const;

   private:
    MomentumGrid grid_;
    std::vector<OutputAmplitude> amplitudes_;
};

/// signal(k) -> sqrt(T) a(k) + i sqrt(R) b(k); idler(k) -> i sqrt(R) a(k) + sqrt(T) b(k).
TwoPhotonOutput apply_beamsplitter(const BiphotonState &state, double transmittance, double reflectance);

/// Port-resolved statistics summed over all momenta (residual is zero).
DetectionDistribution port_statistics(const TwoPhotonOutput &output, double gamma);

/// Projects onto the collection fibers. Throws ValidationError for a fiber
/// centered on k = 0, a center outside the grid, overlapping windows on the
/// same port, or fewer than one fiber per port.
DetectionDistribution couple_collection(
    const TwoPhotonOutput &output, const std::vector<CollectionMode> &modes, double gamma);

/// Applies each arm's elements in order.
BiphotonState propagate_arms(const Circuit &circuit, const BiphotonState &state);

/// gamma(idler delay - signal delay) times the circuit's mode overlap.
double indistinguishability(const Circuit &circuit, const BiphotonState &propagated);

enum class Selection { pair, none };

/// End-to-end: post-select the source on (k0, -k0) (unless Selection::none),
/// propagate both arms, interfere at the beamsplitter and couple into the
/// fibers. Throws ValidationError when the fibers capture nothing.
DetectionDistribution run(
    const Circuit &circuit, const BiphotonState &source, MomentumLabel k0, Selection selection = Selection::pair);

/// run() with the circuit's fibers replaced by `collection`.
DetectionDistribution run_with_collection(
    const Circuit &circuit,
    const BiphotonState &source,
    MomentumLabel k0,
    const std::vector<CollectionMode> &collection,
    Selection selection = Selection::pair);

}  // namespace homsim

#endif
