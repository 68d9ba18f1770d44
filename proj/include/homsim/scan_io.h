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

#ifndef HOMSIM_SCAN_IO_H
#define HOMSIM_SCAN_IO_H

#include <string>
#include <string_view>

#include "homsim/coincidence.h"

namespace homsim {

inline constexpr std::string_view kScanCsvHeader = "axis,raw,expected,normalized,stderr";
inline constexpr std::string_view kMapCsvHeader = "ix,iy,kx,ky,relative_phase,rate";

/// 17 significant digits, shortest "%g" layout.
std::string format_real(double value);

/// Header plus one row per point; reals with 17 significant digits, raw counts
/// as integers, LF line endings.
std::string write_scan_csv(const ScanResult &scan);

/// Parses the scan schema; accidental_counts and baseline_counts are left at
/// zero. Throws ValidationError with the offending line number.
ScanResult read_scan_csv(std::string_view text);

std::string write_map_csv(const MultimodeMap &map);

/// gnuplot data: "axis normalized stderr" rows.
std::string scan_plot_data(const ScanResult &scan);

/// gnuplot splot data: "kx ky rate" rows, blank line between kx columns.
std::string map_plot_data(const MultimodeMap &map);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

}  // namespace homsim

#endif
