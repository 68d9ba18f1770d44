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

#include "homsim/commands.h"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>

#include "homsim/analysis.h"
#include "homsim/errors.h"
#include "homsim/number.h"
#include "homsim/scan_io.h"
#include "homsim/setup_parser.h"

namespace homsim {

namespace {

using nlohmann::json;

/// Fit did not converge; the summary is still written.
struct FitFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string setup;
    std::string out;
    std::string format = "csv";
    std::string emit_plot;
    std::string in;
    std::string kind = "auto";
    std::string phi;
    std::string dl_min;
    std::string dl_max;
    std::string jump = "pi";
    std::string value;
    std::string alpha = "1";
    std::string beta = "0";
    std::string coherence_length;
    int dl_steps = 41;
    int phi_steps = 13;
    int grid = 201;
    uint32_t trials = 1;
    uint64_t seed = 0;
    double pair_rate = 0;
    double time = 0;
    double accidentals = 0;
    bool seed_given = false;
    bool pair_rate_given = false;
    bool time_given = false;
};

double number_flag(const std::string &text, const char *flag) {
    auto v = parse_number(text);
    if (!v) {
        throw ValidationError(std::string("--") + flag + ": not a number: '" + text + "'");
    }
    return *v;
}

json real_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) {
        return nullptr;
    }
    return *v;
}

/// Loaded setup file plus the model it implies.
struct Context {
    std::optional<CircuitDescription> description;
    std::string base_dir = ".";
    ImperfectionModel model = ideal_model();
    uint64_t seed = 0;
};

Context load_context(const Options &o) {
    Context c;
    if (!o.setup.empty()) {
        std::string text = read_file(o.setup);
        c.description = parse_setup(text);
        c.base_dir = std::filesystem::path(o.setup).parent_path().string();
        if (c.base_dir.empty()) {
            c.base_dir = ".";
        }
        c.model = description_model(*c.description);
    }
    if (o.pair_rate_given) {
        c.model.pair_rate = o.pair_rate;
    }
    if (o.time_given) {
        c.model.integration_time = o.time;
    }
    if (!o.coherence_length.empty()) {
        c.model.coherence = CoherenceModel(number_flag(o.coherence_length, "coherence-length"));
    }
    c.model.validate();
    if (o.seed_given) {
        c.seed = o.seed;
    } else if (const char *env = std::getenv("HOMSIM_SEED"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        errno = 0;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || *end != '\0' || env[0] == '-') {
            throw ValidationError(std::string("HOMSIM_SEED is not an unsigned integer: '") + env + "'");
        }
        c.seed = v;
    }
    return c;
}

json base_summary(const std::string &command, const Context &c, json params) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    if (c.description) {
        params["setup"] = pretty_print(*c.description);
    }
    params["coherence_length"] = c.model.coherence.coherence_length;
    j["params"] = std::move(params);
    j["seed"] = c.seed;
    j["results"] = {
        {"alpha", nullptr}, {"beta", nullptr}, {"visibility", nullptr}, {"phi_retrieved", nullptr}, {"sigma", nullptr}};
    return j;
}

json scan_rows(const ScanResult &scan) {
    json rows = json::array();
    for (size_t i = 0; i < scan.size(); i++) {
        rows.push_back(
            {{"axis", scan.axis[i]},
             {"raw", scan.raw[i]},
             {"expected", scan.expected[i]},
             {"normalized", scan.normalized[i]},
             {"stderr", scan.standard_error[i]}});
    }
    return rows;
}

void emit(const Options &o, std::ostream &out, const std::string &contents) {
    if (o.out.empty()) {
        out << contents;
    } else {
        write_file(o.out, contents);
    }
}

/// Visibility, Gaussian width and retrieved phase of a delay scan.
void analyze_delay(json &results, const ScanResult &scan, double alpha, double beta) {
    const auto &axis = scan.axis;
    const auto &normalized = scan.normalized;
    auto kind = infer_visibility_kind(axis, normalized);
    auto vis = visibility(axis, normalized, kind);
    results["visibility"] = vis.v;
    results["visibility_kind"] = visibility_kind_name(kind);
    try {
        results["phi_retrieved"] = retrieve_phase(vis.extremum, alpha, beta);
    } catch (const ValidationError &) {
        results["phi_retrieved"] = nullptr;
    }
    auto fit = fit_gaussian(axis, normalized, poisson_sigmas(scan));
    results["converged"] = fit.converged;
    for (const auto &p : fit.parameters) {
        results[p.name == "sigma" ? "sigma" : p.name] = real_or_null(p.value);
        results[p.name + "_error"] = real_or_null(p.error);
    }
    if (!fit.converged) {
        results["diagnostics"] = fit.diagnostics;
        results["sigma"] = nullptr;
    }
}

void analyze_phase(json &results, const ScanResult &scan) {
    auto fit = fit_cosine(scan.axis, scan.normalized, poisson_sigmas(scan));
    results["alpha"] = fit.value("alpha");
    results["beta"] = fit.value("beta");
    results["alpha_error"] = fit.error("alpha");
    results["beta_error"] = fit.error("beta");
    results["converged"] = fit.converged;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) {
        throw ValidationError("step count must be at least 1");
    }
    std::vector<double> v;
    for (int i = 0; i < steps; i++) {
        v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    }
    return v;
}

/// Interference contrast alpha and floor beta at zero delay.
std::pair<double, double> cosine_law(const Context &c) {
    double a = c.model.split_visibility() * c.model.mu;
    return {a, 1 - a};
}

void write_scan_outputs(const Options &o, std::ostream &out, const ScanResult &scan, json summary) {
    if (o.format == "json") {
        summary["data"] = scan_rows(scan);
        emit(o, out, summary.dump(2) + "\n");
    } else {
        emit(o, out, write_scan_csv(scan));
    }
    if (!o.emit_plot.empty()) {
        write_file(o.emit_plot, scan_plot_data(scan));
    }
}

int cmd_delay_scan(const Options &o, std::ostream &out) {
    Context c = load_context(o);
    const double lc = c.model.coherence.coherence_length;
    const double phi = o.phi.empty() ? 0.0 : number_flag(o.phi, "phi");
    const double lo = o.dl_min.empty() ? -5 * lc : number_flag(o.dl_min, "dl-min");
    const double hi = o.dl_max.empty() ? 5 * lc : number_flag(o.dl_max, "dl-max");
    if (!(hi >= lo)) {
        throw ValidationError("--dl-max must not be below --dl-min");
    }
    auto delays = linspace(lo, hi, o.dl_steps);

    ScanResult scan;
    if (c.description) {
        auto grid = description_grid(*c.description);
        std::optional<double> override_phase;
        if (!o.phi.empty()) {
            override_phase = phi;
        }
        Circuit circuit = build_circuit(*c.description, c.base_dir, override_phase);
        scan = delay_scan(circuit, spdc_state(grid), description_k0(*c.description), c.model.counting(), delays, c.seed,
                          o.trials);
    } else {
        scan = delay_scan(c.model, phi, delays, c.seed, o.trials);
    }

    json params = {{"phi", phi}, {"dl_min", lo}, {"dl_max", hi}, {"dl_steps", o.dl_steps}, {"trials", o.trials},
                   {"pair_rate", c.model.pair_rate}, {"time", c.model.integration_time}};
    json summary = base_summary("delay-scan", c, params);
    if (o.format == "json") {
        auto [alpha, beta] = cosine_law(c);
        analyze_delay(summary["results"], scan, alpha, beta);
    }
    write_scan_outputs(o, out, scan, summary);
    return kExitOk;
}

int cmd_phase_scan(const Options &o, std::ostream &out) {
    Context c = load_context(o);
    if (o.phi_steps < 1) {
        throw ValidationError("--phi-steps must be at least 1");
    }
    auto phis = linspace(0, 2 * std::numbers::pi, o.phi_steps);
    ScanResult scan;
    if (c.description) {
        auto grid = description_grid(*c.description);
        std::vector<Circuit> circuits;
        for (double phi : phis) {
            circuits.push_back(build_circuit(*c.description, c.base_dir, phi));
        }
        scan = circuit_scan(phis, circuits, spdc_state(grid), description_k0(*c.description), c.model.counting(), c.seed,
                            o.trials);
    } else {
        scan = phase_scan(c.model, phis, c.seed, o.trials);
    }
    json params = {{"phi_steps", o.phi_steps}, {"trials", o.trials}, {"pair_rate", c.model.pair_rate},
                   {"time", c.model.integration_time}};
    json summary = base_summary("phase-scan", c, params);
    if (o.format == "json" && scan.size() >= 5) {
        analyze_phase(summary["results"], scan);
    }
    write_scan_outputs(o, out, scan, summary);
    return kExitOk;
}

int cmd_multimode(const Options &o, std::ostream &out) {
    Context c = load_context(o);
    std::optional<MultimodeMap> map;
    json params;
    if (c.description) {
        const auto &d = *c.description;
        auto grid = description_grid(d);
        Circuit circuit = build_circuit(d, c.base_dir);
        map = propagated_map(circuit, spdc_state(grid), [&d](MomentumLabel k0) { return description_collection(d, k0); });
        params["grid"] = grid.n();
    } else {
        MomentumGrid grid(o.grid, 1.0);
        double jump = number_flag(o.jump, "jump");
        map = multimode_map(step_mask(jump, grid), grid, c.model);
        params["grid"] = o.grid;
        params["jump"] = jump;
    }
    if (o.format == "json") {
        json summary = base_summary("multimode", c, params);
        double lo = INFINITY, hi = -INFINITY, sum = 0;
        for (const auto &e : map->entries) {
            lo = std::min(lo, e.rate);
            hi = std::max(hi, e.rate);
            sum += e.rate;
        }
        summary["results"]["modes"] = map->entries.size();
        summary["results"]["min_rate"] = lo;
        summary["results"]["max_rate"] = hi;
        summary["results"]["mean_rate"] = sum / static_cast<double>(map->entries.size());
        emit(o, out, summary.dump(2) + "\n");
    } else {
        emit(o, out, write_map_csv(*map));
    }
    if (!o.emit_plot.empty()) {
        write_file(o.emit_plot, map_plot_data(*map));
    }
    return kExitOk;
}

int cmd_fit(const Options &o, std::ostream &out) {
    Context c = load_context(o);
    if (o.in.empty()) {
        throw ValidationError("fit needs --in PATH");
    }
    ScanResult scan = read_scan_csv(read_file(o.in));
    if (scan.size() == 0) {
        throw ValidationError("scan file has no data rows");
    }
    std::string kind = o.kind;
    if (kind == "auto") {
        // Delay axes are in meters and far below a radian in magnitude.
        double largest = 0;
        for (double x : scan.axis) {
            largest = std::max(largest, std::abs(x));
        }
        kind = largest > 1e-2 ? "phase" : "delay";
    }
    double alpha = number_flag(o.alpha, "alpha"), beta = number_flag(o.beta, "beta");
    json params = {{"in", o.in}, {"kind", kind}, {"accidentals", o.accidentals}};
    json summary = base_summary("fit", c, params);
    auto &results = summary["results"];
    if (kind == "delay") {
        scan.accidental_counts = o.accidentals;
        ScanResult normalized = normalize_scan(scan, c.model.coherence.coherence_length);
        analyze_delay(results, normalized, alpha, beta);
    } else if (kind == "phase") {
        analyze_phase(results, scan);
    } else {
        throw ValidationError("--kind must be delay, phase or auto");
    }
    bool converged = results.value("converged", true);
    if (o.format == "json") {
        emit(o, out, summary.dump(2) + "\n");
    } else {
        std::string csv = "name,value\n";
        for (auto it = results.begin(); it != results.end(); ++it) {
            if (it->is_number()) {
                csv += it.key() + "," + format_real(it->get<double>()) + "\n";
            }
        }
        emit(o, out, csv);
    }
    if (!converged) {
        throw FitFailure(results.value("diagnostics", std::string("fit did not converge")));
    }
    return kExitOk;
}

int cmd_retrieve(const Options &o, std::ostream &out) {
    Context c = load_context(o);
    double alpha = number_flag(o.alpha, "alpha"), beta = number_flag(o.beta, "beta");
    json params = {{"alpha", alpha}, {"beta", beta}};
    json summary = base_summary("retrieve", c, params);
    if (!o.value.empty() == !o.in.empty()) {
        throw ValidationError("retrieve needs exactly one of --value or --in");
    }
    if (!o.value.empty()) {
        double value = number_flag(o.value, "value");
        double phi = retrieve_phase(value, alpha, beta);
        summary["params"]["value"] = value;
        summary["results"]["phi_retrieved"] = phi;
        if (o.format == "json") {
            emit(o, out, summary.dump(2) + "\n");
        } else {
            emit(o, out, "normalized,phi_retrieved\n" + format_real(value) + "," + format_real(phi) + "\n");
        }
        return kExitOk;
    }
    ScanResult scan = read_scan_csv(read_file(o.in));
    std::string csv = "axis,normalized,phi_retrieved\n";
    json rows = json::array();
    for (size_t i = 0; i < scan.size(); i++) {
        std::optional<double> phi;
        try {
            phi = retrieve_phase(scan.normalized[i], alpha, beta);
        } catch (const ValidationError &) {
        }
        csv += format_real(scan.axis[i]) + "," + format_real(scan.normalized[i]) + "," +
               (phi ? format_real(*phi) : std::string("nan")) + "\n";
        rows.push_back({{"axis", scan.axis[i]}, {"normalized", scan.normalized[i]}, {"phi_retrieved", real_or_null(phi)}});
    }
    if (o.format == "json") {
        summary["params"]["in"] = o.in;
        summary["data"] = rows;
        emit(o, out, summary.dump(2) + "\n");
    } else {
        emit(o, out, csv);
    }
    return kExitOk;
}

void add_common(CLI::App *sub, Options &o) {
    sub->add_option("--setup", o.setup, "Setup description file");
    sub->add_option("--out", o.out, "Output file (default: standard output)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--emit-plot", o.emit_plot, "Also write gnuplot-compatible data to this path");
    sub->add_option("--seed", o.seed, "Master seed (default: HOMSIM_SEED, else 0)");
    sub->add_option("--pair-rate", o.pair_rate, "Detected pairs per second")->check(CLI::PositiveNumber);
    sub->add_option("--time", o.time, "Integration time per point in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--trials", o.trials, "Independent integration windows summed per point")->check(CLI::Range(1u, 1000000u));
    sub->add_option("--coherence-length", o.coherence_length, "Override the coherence length in meters");
}

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Momentum-entangled two-photon interference simulator", "homsim"};
    app.require_subcommand(1);

    auto *delay = app.add_subcommand("delay-scan", "Coincidences versus path-length difference");
    add_common(delay, o);
    delay->add_option("--phi", o.phi, "Idler phase jump in radians (pi expressions allowed)");
    delay->add_option("--dl-min", o.dl_min, "First delay in meters (default -5 l_c)");
    delay->add_option("--dl-max", o.dl_max, "Last delay in meters (default +5 l_c)");
    delay->add_option("--dl-steps", o.dl_steps, "Number of delays")->check(CLI::PositiveNumber);

    auto *phase = app.add_subcommand("phase-scan", "Coincidences at zero delay versus phase jump over [0, 2 pi]");
    add_common(phase, o);
    phase->add_option("--phi-steps", o.phi_steps, "Number of phases")->check(CLI::PositiveNumber);

    auto *multi = app.add_subcommand("multimode", "Normalized coincidence rate for every momentum pair");
    add_common(multi, o);
    multi->add_option("--grid", o.grid, "Odd grid size when no setup is given");
    multi->add_option("--jump", o.jump, "Step-mask phase jump when no setup is given");

    auto *fit = app.add_subcommand("fit", "Fit a scan CSV (Gaussian for delay scans, cosine for phase scans)");
    add_common(fit, o);
    fit->add_option("--in", o.in, "Scan CSV")->required();
    fit->add_option("--kind", o.kind, "delay, phase or auto")->check(CLI::IsMember({"delay", "phase", "auto"}));
    fit->add_option("--accidentals", o.accidentals, "Accidental counts per point to subtract")->check(CLI::NonNegativeNumber);
    fit->add_option("--alpha", o.alpha, "Cosine contrast used for phase retrieval");
    fit->add_option("--beta", o.beta, "Cosine floor used for phase retrieval");

    auto *retrieve = app.add_subcommand("retrieve", "Invert the coincidence law to a phase in [0, pi]");
    add_common(retrieve, o);
    retrieve->add_option("--value", o.value, "Normalized coincidence rate");
    retrieve->add_option("--in", o.in, "Scan CSV; uses its normalized column");
    retrieve->add_option("--alpha", o.alpha, "Cosine contrast");
    retrieve->add_option("--beta", o.beta, "Cosine floor");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "homsim: error[E_USAGE]: " << e.what() << "\n";
        return kExitValidation;
    }

    auto count = [](CLI::App *sub, const char *name) { return sub->count(name) > 0; };
    for (auto *sub : {delay, phase, multi, fit, retrieve}) {
        if (sub->parsed()) {
            o.seed_given = count(sub, "--seed");
            o.pair_rate_given = count(sub, "--pair-rate");
            o.time_given = count(sub, "--time");
        }
    }

    try {
        if (delay->parsed()) {
            return cmd_delay_scan(o, out);
        }
        if (phase->parsed()) {
            return cmd_phase_scan(o, out);
        }
        if (multi->parsed()) {
            return cmd_multimode(o, out);
        }
        if (fit->parsed()) {
            return cmd_fit(o, out);
        }
        return cmd_retrieve(o, out);
    } catch (const ParseError &e) {
        err << "homsim: error[E_PARSE]: " << o.setup << ":" << e.line << ":" << e.column << ": " << e.bare_message << "\n";
        return kExitValidation;
    } catch (const FitFailure &e) {
        err << "homsim: error[E_FIT]: " << e.what() << "\n";
        return kExitFitFailed;
    } catch (const IoError &e) {
        err << "homsim: error[E_IO]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError &e) {
        err << "homsim: error[E_VALIDATION]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "homsim: error[E_INTERNAL]: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace homsim
