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

#include "homsim/scan_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "homsim/errors.h"

namespace homsim {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t p = line.find(sep, start);
        out.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) {
            return out;
        }
        start = p + 1;
    }
}

double parse_field(std::string_view field, size_t line) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ValidationError("line " + std::to_string(line) + ": invalid number '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string write_scan_csv(const ScanResult &scan) {
    scan.validate();
    std::string out(kScanCsvHeader);
    out += '\n';
    for (size_t i = 0; i < scan.size(); i++) {
        out += format_real(scan.axis[i]);
        out += ',';
        out += std::to_string(scan.raw[i]);
        out += ',';
        out += format_real(scan.expected[i]);
        out += ',';
        out += format_real(scan.normalized[i]);
        out += ',';
        out += format_real(scan.standard_error[i]);
        out += '\n';
    }
    return out;
}

ScanResult read_scan_csv(std::string_view text) {
    ScanResult scan;
    size_t line_no = 0;
    bool header = false;
    while (!text.empty()) {
        size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (!header) {
            if (line != kScanCsvHeader) {
                throw ValidationError("line 1: expected header '" + std::string(kScanCsvHeader) + "'");
            }
            header = true;
            continue;
        }
        auto fields = split(line, ',');
        if (fields.size() != 5) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected 5 fields");
        }
        double raw = parse_field(fields[1], line_no);
        if (raw < 0 || raw != static_cast<double>(static_cast<uint64_t>(raw))) {
            throw ValidationError("line " + std::to_string(line_no) + ": raw counts must be non-negative integers");
        }
        scan.axis.push_back(parse_field(fields[0], line_no));
        scan.raw.push_back(static_cast<uint64_t>(raw));
        scan.expected.push_back(parse_field(fields[2], line_no));
        scan.normalized.push_back(parse_field(fields[3], line_no));
        scan.standard_error.push_back(parse_field(fields[4], line_no));
    }
    if (!header) {
        throw ValidationError("scan file is empty");
    }
    return scan;
}

std::string write_map_csv(const MultimodeMap &map) {
    std::string out(kMapCsvHeader);
    out += '\n';
    for (const auto &e : map.entries) {
        out += std::to_string(e.k0.ix) + ',' + std::to_string(e.k0.iy) + ',' + format_real(map.grid.kx(e.k0)) + ',' +
               format_real(map.grid.ky(e.k0)) + ',' + format_real(e.relative_phase) + ',' + format_real(e.rate) + '\n';
    }
    return out;
}

std::string scan_plot_data(const ScanResult &scan) {
    std::string out = "# axis normalized stderr\n";
    for (size_t i = 0; i < scan.size(); i++) {
        out += format_real(scan.axis[i]) + ' ' + format_real(scan.normalized[i]) + ' ' +
               format_real(scan.standard_error[i]) + '\n';
    }
    return out;
}

std::string map_plot_data(const MultimodeMap &map) {
    std::string out = "# kx ky rate\n";
    bool first = true;
    int32_t last_ix = 0;
    for (const auto &e : map.entries) {
        if (!first && e.k0.ix != last_ix) {
            out += '\n';
        }
        first = false;
        last_ix = e.k0.ix;
        out += format_real(map.grid.kx(e.k0)) + ' ' + format_real(map.grid.ky(e.k0)) + ' ' + format_real(e.rate) + '\n';
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace homsim
