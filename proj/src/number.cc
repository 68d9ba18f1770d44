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

#include "homsim/number.h"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace homsim {

namespace {

std::optional<double> parse_plain(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    // from_chars rejects a leading '+'.
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    double sign = 1;
    if (text.front() == '-' || text.front() == '+') {
        // Only strip the sign when a pi term follows; plain numbers keep theirs.
        if (text.find("pi") != std::string_view::npos) {
            sign = text.front() == '-' ? -1 : 1;
            text.remove_prefix(1);
        }
    }

    std::string_view numerator = text;
    std::string_view denominator;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        numerator = text.substr(0, slash);
        denominator = text.substr(slash + 1);
        if (denominator.empty()) {
            return std::nullopt;
        }
    }

    double value;
    if (auto p = numerator.find("pi"); p != std::string_view::npos) {
        if (p + 2 != numerator.size()) {
            return std::nullopt;
        }
        std::string_view coeff = numerator.substr(0, p);
        if (!coeff.empty() && coeff.back() == '*') {
            coeff.remove_suffix(1);
            if (coeff.empty()) {
                return std::nullopt;
            }
        }
        double c = 1;
        if (!coeff.empty()) {
            auto parsed = parse_plain(coeff);
            if (!parsed) {
                return std::nullopt;
            }
            c = *parsed;
        }
        value = sign * c * std::numbers::pi;
    } else {
        auto parsed = parse_plain(numerator);
        if (!parsed) {
            return std::nullopt;
        }
        value = sign * *parsed;
    }

    if (!denominator.empty()) {
        auto d = parse_plain(denominator);
        if (!d || *d == 0) {
            return std::nullopt;
        }
        value /= *d;
    }
    if (!std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

}  // namespace homsim
