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

#ifndef HOMSIM_NUMBER_H
#define HOMSIM_NUMBER_H

#include <optional>
#include <string_view>

namespace homsim {

/// Parses a real number, also accepting multiples and fractions of pi:
/// "pi", "-pi/2", "2pi", "2*pi/3", "pi/6", "0.5", "1e-5", "3/4".
/// Returns nullopt on anything else, including non-finite results.
std::optional<double> parse_number(std::string_view text);

}  // namespace homsim

#endif
