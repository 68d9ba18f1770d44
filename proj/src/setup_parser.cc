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

#include "homsim/setup_parser.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "homsim/errors.h"
#include "homsim/number.h"
#include "homsim/scan_io.h"

namespace homsim {

ParseError::ParseError(const std::string &message, size_t line, size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line(line),
      column(column),
      bare_message(message) {
}

namespace {

struct Token {
    enum class Kind { word, string, punct, end };
    Kind kind;
    std::string text;
    size_t line;
    size_t column;
};

bool is_punct(char c) {
    return c == '{' || c == '}' || c == '(' || c == ')' || c == ';' || c == ',';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    size_t line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t count) {
        for (size_t k = 0; k < count; k++) {
            if (text[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
            i++;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                advance(1);
            }
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (is_punct(c)) {
            tokens.push_back({Token::Kind::punct, std::string(1, c), line, col});
            advance(1);
        } else if (c == '"') {
            size_t start_line = line, start_col = col;
            advance(1);
            std::string s;
            while (i < text.size() && text[i] != '"' && text[i] != '\n') {
                s += text[i];
                advance(1);
            }
            if (i >= text.size() || text[i] != '"') {
                throw ParseError("unterminated string", start_line, start_col);
            }
            advance(1);
            tokens.push_back({Token::Kind::string, s, start_line, start_col});
        } else {
            size_t start_line = line, start_col = col;
            std::string s;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && !is_punct(text[i]) &&
                   text[i] != '#' && text[i] != '"') {
                s += text[i];
                advance(1);
            }
            tokens.push_back({Token::Kind::word, s, start_line, start_col});
        }
    }
    tokens.push_back({Token::Kind::end, "", line, col});
    return tokens;
}

class Parser {
   public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {
    }

    CircuitDescription parse() {
        CircuitDescription d;
        bool seen_signal = false, seen_idler = false, seen_bs = false;
        while (peek().kind != Token::Kind::end) {
            const Token &t = next();
            if (t.kind != Token::Kind::word) {
                fail("expected a statement keyword, got '" + t.text + "'", t);
            }
            if (t.text == "grid") {
                if (d.grid) {
                    fail("duplicate grid statement", t);
                }
                const Token &nt = next();
                int n = parse_int(nt);
                double k_max = parse_real(next());
                if (n < 3 || n % 2 == 0) {
                    fail("grid size must be an odd integer >= 3", nt);
                }
                if (!(k_max > 0)) {
                    fail("grid k_max must be positive", nt);
                }
                d.grid = GridDecl{n, k_max};
                expect(";");
            } else if (t.text == "k0") {
                if (d.k0) {
                    fail("duplicate k0 statement", t);
                }
                const Token &at = peek();
                d.k0 = parse_coords();
                if (d.k0->is_origin()) {
                    fail("k0 must not be the origin", at);
                }
                expect(";");
            } else if (t.text == "arm") {
                const Token &name = next();
                if (name.kind != Token::Kind::word || (name.text != "signal" && name.text != "idler")) {
                    fail("arm name must be 'signal' or 'idler', got '" + name.text + "'", name);
                }
                bool &seen = name.text == "signal" ? seen_signal : seen_idler;
                if (seen) {
                    fail("duplicate arm '" + name.text + "'", name);
                }
                seen = true;
                (name.text == "signal" ? d.signal : d.idler) = parse_arm();
            } else if (t.text == "bs") {
                if (seen_bs) {
                    fail("duplicate bs statement", t);
                }
                seen_bs = true;
                const Token &vt = next();
                double v = parse_real(vt);
                if (!(v > 0 && v < 1)) {
                    fail("beamsplitter transmittance must lie in (0, 1), got " + vt.text, vt);
                }
                d.transmittance = v;
                expect(";");
            } else if (t.text == "collect") {
                d.collect.push_back(parse_collect());
            } else if (t.text == "model") {
                d.model.push_back(parse_model());
            } else {
                fail("unknown keyword '" + t.text + "'", t);
            }
        }
        const Token &end = peek();
        if (!seen_signal && !seen_idler) {
            fail("missing arm blocks", end);
        }
        if (!seen_signal || !seen_idler) {
            fail(std::string("missing arm block '") + (seen_signal ? "idler" : "signal") + "'", end);
        }
        if (!seen_bs) {
            fail("missing bs statement", end);
        }
        if (d.collect.size() < 2) {
            fail("at least two collect statements are required", end);
        }
        return d;
    }

   private:
    [[noreturn]] void fail(const std::string &message, const Token &t) {
        throw ParseError(message, t.line, t.column);
    }

    const Token &peek() const {
        return tokens_[pos_];
    }
    const Token &next() {
        const Token &t = tokens_[pos_];
        if (t.kind != Token::Kind::end) {
            pos_++;
        }
        return t;
    }
    void expect(const char *punct) {
        const Token &t = next();
        if (t.kind != Token::Kind::punct || t.text != punct) {
            fail(std::string("expected '") + punct + "', got " + (t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'"), t);
        }
    }

    double parse_real(const Token &t) {
        if (t.kind != Token::Kind::word) {
            fail("expected a number, got " + (t.kind == Token::Kind::end ? std::string("end of input") : "'" + t.text + "'"), t);
        }
        auto v = parse_number(t.text);
        if (!v) {
            fail("invalid number '" + t.text + "'", t);
        }
        return *v;
    }

    int parse_int(const Token &t) {
        int v = 0;
        const char *b = t.text.data(), *e = t.text.data() + t.text.size();
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (t.kind != Token::Kind::word || ec != std::errc() || ptr != e) {
            fail("expected an integer, got '" + t.text + "'", t);
        }
        return v;
    }

    MomentumLabel parse_coords() {
        expect("(");
        int x = parse_int(next());
        expect(",");
        int y = parse_int(next());
        expect(")");
        return {x, y};
    }

    ArmDecl parse_arm() {
        expect("{");
        ArmDecl arm;
        while (true) {
            const Token &t = next();
            if (t.kind == Token::Kind::punct && t.text == "}") {
                return arm;
            }
            if (t.kind != Token::Kind::word) {
                fail(t.kind == Token::Kind::end ? "unterminated arm block" : "expected an element, got '" + t.text + "'", t);
            }
            ElementDecl e{ElementDecl::Kind::mirror, 0, "", t.line, t.column};
            if (t.text == "mirror") {
                e.kind = ElementDecl::Kind::mirror;
            } else if (t.text == "phase_step") {
                e.kind = ElementDecl::Kind::phase_step;
                e.value = parse_real(next());
            } else if (t.text == "phase_file") {
                e.kind = ElementDecl::Kind::phase_file;
                const Token &p = next();
                if (p.kind != Token::Kind::word && p.kind != Token::Kind::string) {
                    fail("expected a file path", p);
                }
                if (p.text.empty()) {
                    fail("empty file path", p);
                }
                e.path = p.text;
            } else if (t.text == "delay") {
                e.kind = ElementDecl::Kind::delay;
                e.value = parse_real(next());
            } else {
                fail("unknown element '" + t.text + "'", t);
            }
            expect(";");
            arm.elements.push_back(std::move(e));
        }
    }

    CollectDecl parse_collect() {
        CollectDecl c{};
        const Token &pt = next();
        if (pt.kind != Token::Kind::word || (pt.text != "a" && pt.text != "b")) {
            fail("collection port must be 'a' or 'b', got '" + pt.text + "'", pt);
        }
        c.port = pt.text == "a" ? Port::a : Port::b;
        const Token &ct = peek();
        if (ct.kind == Token::Kind::punct && ct.text == "(") {
            c.center = {CenterSpec::Kind::coords, parse_coords()};
            if (c.center.coords.is_origin()) {
                fail("collection centered at k = 0 is self-paired", ct);
            }
        } else if (ct.kind == Token::Kind::word && (ct.text == "+k0" || ct.text == "k0")) {
            next();
            c.center = {CenterSpec::Kind::plus_k0, {}};
        } else if (ct.kind == Token::Kind::word && ct.text == "-k0") {
            next();
            c.center = {CenterSpec::Kind::minus_k0, {}};
        } else {
            fail("expected '+k0', '-k0' or coordinates, got '" + ct.text + "'", ct);
        }
        const Token &wt = peek();
        if (wt.kind == Token::Kind::word) {
            c.width = parse_real(next());
            if (!(c.width >= 0)) {
                fail("collection width must be non-negative", wt);
            }
        }
        expect(";");
        return c;
    }

    ModelParam parse_model() {
        const Token &kt = next();
        static const std::vector<std::pair<std::string, size_t>> keys = {
            {"coherence_length", 1}, {"filter", 2},          {"mu", 1},
            {"pair_rate", 1},        {"integration_time", 1}, {"accidental_rate", 1},
        };
        size_t arity = 0;
        for (const auto &[k, a] : keys) {
            if (kt.text == k) {
                arity = a;
            }
        }
        if (kt.kind != Token::Kind::word || arity == 0) {
            fail("unknown model key '" + kt.text + "'", kt);
        }
        ModelParam m{kt.text, {}};
        for (size_t i = 0; i < arity; i++) {
            const Token &vt = next();
            m.values.push_back(parse_real(vt));
            double v = m.values.back();
            bool ok = m.key == "mu" ? (v >= 0 && v <= 1) : m.key == "accidental_rate" ? v >= 0 : v > 0;
            if (!ok) {
                fail("value out of range for model key '" + m.key + "'", vt);
            }
        }
        if (m.key == "filter" && !(m.values[1] < m.values[0])) {
            fail("filter bandwidth must be smaller than its center wavelength", kt);
        }
        expect(";");
        return m;
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

std::string quote_path(const std::string &path) {
    for (char c : path) {
        if (std::isspace(static_cast<unsigned char>(c)) || is_punct(c) || c == '#') {
            return "\"" + path + "\"";
        }
    }
    return path;
}

std::string coords_text(MomentumLabel k) {
    return "(" + std::to_string(k.ix) + ", " + std::to_string(k.iy) + ")";
}

}  // namespace

CircuitDescription parse_setup(std::string_view text) {
    return Parser(text).parse();
}

std::string pretty_print(const CircuitDescription &d) {
    std::string out;
    if (d.grid) {
        out += "grid " + std::to_string(d.grid->n) + " " + format_real(d.grid->k_max) + ";\n";
    }
    if (d.k0) {
        out += "k0 " + coords_text(*d.k0) + ";\n";
    }
    for (const auto &[name, arm] : {std::pair{"signal", &d.signal}, std::pair{"idler", &d.idler}}) {
        out += std::string("arm ") + name + " {\n";
        for (const auto &e : arm->elements) {
            switch (e.kind) {
                case ElementDecl::Kind::mirror:
                    out += "    mirror;\n";
                    break;
                case ElementDecl::Kind::phase_step:
                    out += "    phase_step " + format_real(e.value) + ";\n";
                    break;
                case ElementDecl::Kind::phase_file:
                    out += "    phase_file " + quote_path(e.path) + ";\n";
                    break;
                case ElementDecl::Kind::delay:
                    out += "    delay " + format_real(e.value) + ";\n";
                    break;
            }
        }
        out += "}\n";
    }
    out += "bs " + format_real(d.transmittance) + ";\n";
    for (const auto &c : d.collect) {
        out += std::string("collect ") + port_name(c.port) + " ";
        switch (c.center.kind) {
            case CenterSpec::Kind::plus_k0:
                out += "+k0";
                break;
            case CenterSpec::Kind::minus_k0:
                out += "-k0";
                break;
            case CenterSpec::Kind::coords:
                out += coords_text(c.center.coords);
                break;
        }
        if (c.width != 0) {
            out += " " + format_real(c.width);
        }
        out += ";\n";
    }
    for (const auto &m : d.model) {
        out += "model " + m.key;
        for (double v : m.values) {
            out += " " + format_real(v);
        }
        out += ";\n";
    }
    return out;
}

MomentumGrid description_grid(const CircuitDescription &d) {
    return d.grid ? MomentumGrid(d.grid->n, d.grid->k_max) : MomentumGrid(41, 1.0);
}

MomentumLabel description_k0(const CircuitDescription &d) {
    if (d.k0) {
        return *d.k0;
    }
    return {std::max(1, description_grid(d).half() / 2), 0};
}

Circuit build_circuit(const CircuitDescription &d, const std::string &base_dir, std::optional<double> idler_phase) {
    const MomentumGrid grid = description_grid(d);
    const MomentumLabel k0 = description_k0(d);
    if (!grid.contains(k0)) {
        throw ValidationError("k0 " + k0.str() + " lies outside the grid");
    }
    Circuit c;
    c.beamsplitter = Beamsplitter::from_transmittance(d.transmittance);
    for (Arm arm : {Arm::signal, Arm::idler}) {
        const ArmDecl &decl = arm == Arm::signal ? d.signal : d.idler;
        bool has_step = false;
        for (const auto &e : decl.elements) {
            switch (e.kind) {
                case ElementDecl::Kind::mirror:
                    c.arm(arm).emplace_back(Mirror{});
                    break;
                case ElementDecl::Kind::phase_step: {
                    has_step = true;
                    double jump = arm == Arm::idler && idler_phase ? *idler_phase : e.value;
                    c.arm(arm).emplace_back(step_mask(jump, grid));
                    break;
                }
                case ElementDecl::Kind::phase_file: {
                    std::filesystem::path p(e.path);
                    if (p.is_relative()) {
                        p = std::filesystem::path(base_dir) / p;
                    }
                    c.arm(arm).emplace_back(read_mask_file(p.string(), grid));
                    break;
                }
                case ElementDecl::Kind::delay:
                    c.arm(arm).emplace_back(Delay{e.value});
                    break;
            }
        }
        if (arm == Arm::idler && idler_phase && !has_step) {
            c.arm(arm).emplace_back(step_mask(*idler_phase, grid));
        }
    }
    c.collection = description_collection(d, k0);
    ImperfectionModel m = description_model(d);
    c.coherence = m.coherence;
    c.mode_overlap = m.mu;
    return c;
}

std::vector<CollectionMode> description_collection(const CircuitDescription &d, MomentumLabel k0) {
    std::vector<CollectionMode> fibers;
    for (const auto &cd : d.collect) {
        MomentumLabel center = cd.center.kind == CenterSpec::Kind::plus_k0    ? k0
                               : cd.center.kind == CenterSpec::Kind::minus_k0 ? -k0
                                                                               : cd.center.coords;
        fibers.push_back({cd.port, center, cd.width});
    }
    return fibers;
}

ImperfectionModel description_model(const CircuitDescription &d) {
    ImperfectionModel m;
    m.transmittance = d.transmittance;
    m.reflectance = 1 - d.transmittance;
    for (const auto &p : d.model) {
        if (p.key == "coherence_length") {
            m.coherence = CoherenceModel(p.values[0]);
        } else if (p.key == "filter") {
            m.coherence = coherence_from_filter(p.values[0], p.values[1]);
        } else if (p.key == "mu") {
            m.mu = p.values[0];
        } else if (p.key == "pair_rate") {
            m.pair_rate = p.values[0];
        } else if (p.key == "integration_time") {
            m.integration_time = p.values[0];
        } else if (p.key == "accidental_rate") {
            m.accidental_rate = p.values[0];
        }
    }
    return m;
}

std::string reference_setup_text() {
    return R"(# Two-photon interference of momentum-entangled pairs.
grid 41 1.0;
k0 (10, 0);
arm signal {
    mirror;
    mirror;
}
arm idler {
    mirror;
    mirror;
    phase_step pi;
}
bs 0.5;
collect a +k0;
collect b -k0;
model filter 810e-9 3e-9;
)";
}

}  // namespace homsim
