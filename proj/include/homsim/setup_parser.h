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

#ifndef HOMSIM_SETUP_PARSER_H
#define HOMSIM_SETUP_PARSER_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homsim/coincidence.h"
#include "homsim/interferometer.h"

namespace homsim {

// Setup text grammar:
//
//   file     := stmt*
//   stmt     := grid | k0 | arm | bs | collect | model
//   grid     := "grid" INT NUMBER ";"                 n, k_max
//   k0       := "k0" coords ";"
//   arm      := "arm" ("signal" | "idler") "{" element* "}"
//   element  := "mirror" ";" | "phase_step" NUMBER ";" | "phase_file" PATH ";"
//             | "delay" NUMBER ";"
//   bs       := "bs" NUMBER ";"                       transmittance T
//   collect  := "collect" ("a" | "b") ("+k0" | "-k0" | coords) [NUMBER] ";"
//   model    := "model" KEY NUMBER+ ";"
//   coords   := "(" INT "," INT ")"
//
// NUMBER accepts pi expressions ("pi", "pi/6", "-2*pi/3"). PATH is a bare word
// or a double-quoted string. "#" starts a comment. Model keys:
// coherence_length L | filter CENTER FWHM | mu X | pair_rate X |
// integration_time X | accidental_rate X.

struct ElementDecl {
    enum class Kind { mirror, phase_step, phase_file, delay };
    Kind kind;
    double value = 0;
    std::string path;
    size_t line = 0;
    size_t column = 0;

    bool operator==(const ElementDecl &o) const {
        return kind == o.kind && value == o.value && path == o.path;
    }
};

struct ArmDecl {
    std::vector<ElementDecl> elements;
    bool operator==(const ArmDecl &) const = default;
};

struct CenterSpec {
    enum class Kind { plus_k0, minus_k0, coords };
    Kind kind;
    MomentumLabel coords;

    bool operator==(const CenterSpec &) const = default;
};

struct CollectDecl {
    Port port;
    CenterSpec center;
    double width = 0;
    bool operator==(const CollectDecl &) const = default;
};

struct ModelParam {
    std::string key;
    std::vector<double> values;
    bool operator==(const ModelParam &) const = default;
};

struct GridDecl {
    int n;
    double k_max;
    bool operator==(const GridDecl &) const = default;
};

struct CircuitDescription {
    std::optional<GridDecl> grid;
    std::optional<MomentumLabel> k0;
    ArmDecl signal;
    ArmDecl idler;
    double transmittance = 0.5;
    std::vector<CollectDecl> collect;
    std::vector<ModelParam> model;

    bool operator==(const CircuitDescription &) const = default;
};

/// Throws ParseError with the 1-based line and column of the offending token.
CircuitDescription parse_setup(std::string_view text);

/// Canonical text form; parse_setup(pretty_print(d)) == d.
std::string pretty_print(const CircuitDescription &description);

/// Grid from the description, defaulting to 41 x 41 with k_max = 1.
MomentumGrid description_grid(const CircuitDescription &description);

/// Selected pair, defaulting to (max(1, half / 2), 0).
MomentumLabel description_k0(const CircuitDescription &description);

/// Resolves the description into a circuit. Relative phase_file paths are
/// taken relative to base_dir. When idler_phase is set, every idler
/// phase_step uses it instead (one is appended if the idler has none).
Circuit build_circuit(
    const CircuitDescription &description,
    const std::string &base_dir = ".",
    std::optional<double> idler_phase = std::nullopt);

/// Collection fibers with +k0 / -k0 centers resolved against the given pair.
std::vector<CollectionMode> description_collection(const CircuitDescription &description, MomentumLabel k0);

/// Counting and imperfection parameters declared by model statements.
ImperfectionModel description_model(const CircuitDescription &description);

/// The setup drawn in the two-photon interference experiment: two mirrors per
/// arm, a pi step on the idler, a 50:50 splitter and opposite-side fibers.
std::string reference_setup_text();

}  // namespace homsim

#endif
