// Copyright 2026 The fesopt Authors
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

/**
 * @file    sweeps.hpp
 * @brief   Parameter sweeps over optimal FES transformations, the six
 *          preconfigured figure panels, and CSV / SVG output.
 *
 * Column naming: the first column is the swept variable; columns starting
 * with "p_" hold probabilities and are the ones drawn by the SVG writer;
 * columns starting with "F_" hold fidelities of the transformed state to
 * eigenbasis states.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fesopt/error.hpp"
#include "fesopt/fes_states.hpp"
#include "fesopt/fes_transform.hpp"
#include "fesopt/state_io.hpp"

namespace fesopt {

enum class SweepFamily { gamma, theta, phi, ghz, custom };
enum class SweepVariable { t, theta };

struct SweepSpec {
    SweepFamily family = SweepFamily::ghz;
    double family_angle = 0.0;  // gamma / theta / phi when sweeping t
    int qubits = 3;             // ghz only
    std::optional<FesVector> custom_state;
    SweepVariable variable = SweepVariable::t;
    double lo = -0.999;
    double hi = 0.999;
    int samples = 999;
    std::optional<int> direction;  // theta sweeps; both directions if unset
    std::string label;             // curve label, derived from the family if empty
    unsigned threads = 1;
};

struct SweepTable {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::vector<std::size_t> probability_columns() const {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c].rfind("p_", 0) == 0) cols.push_back(c);
        }
        return cols;
    }
};

inline constexpr int kDefaultTSamples = 999;
inline constexpr int kDefaultThetaSamples = 499;
inline constexpr double kPanelEdge = 1e-3;

namespace detail {

inline std::string angle_label(double theta) {
    // Common fractions of pi get readable names.
    for (int den : {1, 2, 3, 4, 6, 10, 100}) {
        if (std::abs(theta - std::numbers::pi / den) < 1e-12) return "pi_" + std::to_string(den);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", theta);
    return buf;
}

inline std::string default_label(const SweepSpec &spec) {
    switch (spec.family) {
        case SweepFamily::gamma: return spec.variable == SweepVariable::t ? "gamma_" + angle_label(spec.family_angle) : "gamma";
        case SweepFamily::theta: return spec.variable == SweepVariable::t ? "theta_" + angle_label(spec.family_angle) : "theta";
        case SweepFamily::phi: return spec.variable == SweepVariable::t ? "phi_" + angle_label(spec.family_angle) : "phi";
        case SweepFamily::ghz: return "ghz" + std::to_string(spec.qubits);
        case SweepFamily::custom: return "custom";
    }
    return "curve";
}

inline Family to_family(SweepFamily f) {
    switch (f) {
        case SweepFamily::gamma: return Family::gamma;
        case SweepFamily::theta: return Family::theta;
        case SweepFamily::phi: return Family::phi;
        default: break;
    }
    throw Error(ErrorCode::InvalidSpec, "only gamma, theta and phi are angle families");
}

inline void validate(const SweepSpec &spec) {
    if (spec.samples < 2) throw Error(ErrorCode::InvalidSpec, "need at least two samples");
    if (!(spec.lo < spec.hi)) throw Error(ErrorCode::InvalidSpec, "need lo < hi");
    if (spec.direction && *spec.direction != 1 && *spec.direction != -1) {
        throw Error(ErrorCode::InvalidSpec, "direction must be +1 or -1");
    }
    if (spec.variable == SweepVariable::t) {
        if (!(spec.lo > -1.0 && spec.hi < 1.0)) throw Error(ErrorCode::InvalidSpec, "t range must lie inside (-1, 1)");
    } else {
        if (!(spec.lo > 0.0 && spec.hi <= std::numbers::pi / 2.0)) {
            throw Error(ErrorCode::InvalidSpec, "theta range must lie inside (0, pi/2]");
        }
        if (spec.family == SweepFamily::ghz || spec.family == SweepFamily::custom) {
            throw Error(ErrorCode::InvalidSpec, "theta sweeps need an angle family (gamma, theta, phi)");
        }
    }
    if (spec.family == SweepFamily::custom) {
        if (!spec.custom_state) throw Error(ErrorCode::InvalidSpec, "custom family needs a state");
        if (!spec.custom_state->normalized()) throw Error(ErrorCode::InvalidSpec, "custom state must be normalised");
    }
    if (spec.family == SweepFamily::ghz && spec.qubits < 2) throw Error(ErrorCode::InvalidSpec, "GHZ needs n >= 2");
}

inline FesVector initial_state(const SweepSpec &spec) {
    switch (spec.family) {
        case SweepFamily::ghz: return ghz(spec.qubits);
        case SweepFamily::custom: return *spec.custom_state;
        default: return family_state(to_family(spec.family), spec.family_angle);
    }
}

inline std::vector<double> linear_grid(double lo, double hi, int samples) {
    std::vector<double> xs(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    xs.back() = hi;
    return xs;
}

inline std::string psi_name(int n, int q) { return "psi" + std::to_string(n - q) + "_" + std::to_string(q); }

// Fills rows[i] = eval(xs[i]) on up to `threads` workers; each worker owns a
// contiguous block so output order never depends on scheduling.
template <class Eval>
void evaluate_rows(const std::vector<double> &xs, std::vector<std::vector<double>> &rows, unsigned threads,
                   Eval eval) {
    rows.assign(xs.size(), {});
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(xs.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < xs.size(); ++i) rows[i] = eval(xs[i]);
        return;
    }
    std::vector<std::jthread> pool;
    std::size_t block = (xs.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t begin = w * block;
        std::size_t end = std::min(xs.size(), begin + block);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) rows[i] = eval(xs[i]);
        });
    }
}

}  // namespace detail

inline SweepTable run_sweep(const SweepSpec &spec) {
    detail::validate(spec);
    std::string label = spec.label.empty() ? detail::default_label(spec) : spec.label;
    SweepTable table;
    auto xs = detail::linear_grid(spec.lo, spec.hi, spec.samples);

    if (spec.variable == SweepVariable::t) {
        FesVector s = detail::initial_state(spec);
        int n = s.qubits();
        table.title = "Optimal success probability from " + label;
        table.header = {"t", "p_" + label};
        for (int q = 0; q <= n; q += 2) table.header.push_back("F_" + label + "_" + detail::psi_name(n, q));
        detail::evaluate_rows(xs, table.rows, spec.threads, [&](double t) {
            std::vector<double> row{t, success_probability(s, t)};
            FesVector point = trajectory(s, t);
            for (std::size_t k = 0; k < point.dim(); ++k) row.push_back(std::norm(point[k]));
            return row;
        });
        return table;
    }

    Family family = detail::to_family(spec.family);
    int n = family_state(family, spec.hi).qubits();
    std::vector<int> directions = spec.direction ? std::vector<int>{*spec.direction} : std::vector<int>{1, -1};
    table.title = "Limit success probability along the " + label + " family";
    table.header = {"theta"};
    for (int dir : directions) {
        table.header.push_back("p_" + label + "_limit_" + detail::psi_name(n, dir == 1 ? 0 : n));
    }
    detail::evaluate_rows(xs, table.rows, spec.threads, [&](double theta) {
        FesVector s = family_state(family, theta);
        std::vector<double> row{theta};
        for (int dir : directions) row.push_back(limit_probability(s, dir));
        return row;
    });
    return table;
}

namespace detail {

// Joins several tables sharing the same first column.
inline SweepTable merge_tables(std::string title, const std::vector<SweepTable> &parts) {
    SweepTable out;
    out.title = std::move(title);
    out.header.push_back(parts.front().header.front());
    for (const auto &p : parts) out.header.insert(out.header.end(), p.header.begin() + 1, p.header.end());
    out.rows.resize(parts.front().rows.size());
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        out.rows[i].push_back(parts.front().rows[i].front());
        for (const auto &p : parts) out.rows[i].insert(out.rows[i].end(), p.rows[i].begin() + 1, p.rows[i].end());
    }
    return out;
}

}  // namespace detail

/// One of the six preconfigured panels 'a'..'f'. samples <= 0 selects the
/// panel's default (999 for t sweeps, 499 for theta and curve-parameter
/// sweeps).
inline SweepTable figure_panel(char panel, int samples = 0, unsigned threads = 1) {
    constexpr double pi = std::numbers::pi;
    int t_samples = samples > 0 ? samples : kDefaultTSamples;
    int theta_samples = samples > 0 ? samples : kDefaultThetaSamples;

    auto t_curve = [&](SweepFamily fam, double angle, std::string label) {
        SweepSpec spec;
        spec.family = fam;
        spec.family_angle = angle;
        spec.samples = t_samples;
        spec.label = std::move(label);
        spec.threads = threads;
        return run_sweep(spec);
    };
    auto theta_curve = [&](SweepFamily fam, std::optional<int> direction, std::string label) {
        SweepSpec spec;
        spec.family = fam;
        spec.variable = SweepVariable::theta;
        spec.lo = kPanelEdge;
        spec.hi = pi / 2.0 - kPanelEdge;
        spec.samples = theta_samples;
        spec.direction = direction;
        spec.label = std::move(label);
        spec.threads = threads;
        return run_sweep(spec);
    };

    switch (panel) {
        case 'a': {
            auto table = t_curve(SweepFamily::ghz, 0.0, "ghz3");
            table.title = "(a) Optimal probabilities of GHZ-class FES states from |GHZ3>";
            return table;
        }
        case 'b': {
            auto table = theta_curve(SweepFamily::gamma, 1, "gamma");
            table.title = "(b) Limit probability towards |psi30> from Gamma(theta)";
            return table;
        }
        case 'c':
            return detail::merge_tables("(c) Optimal probabilities from Theta(pi/100), Theta(pi/6)=GHZ4, Theta(pi/2)",
                                        {t_curve(SweepFamily::theta, pi / 100, "theta_pi_100"),
                                         t_curve(SweepFamily::theta, pi / 6, "theta_pi_6_GHZ4"),
                                         t_curve(SweepFamily::theta, pi / 2, "theta_pi_2")});
        case 'd': {
            auto table = theta_curve(SweepFamily::theta, std::nullopt, "theta");
            table.title = "(d) Limit probability towards a separable state from Theta(theta)";
            return table;
        }
        case 'e':
            return detail::merge_tables("(e) Optimal probabilities from Phi(pi/100), Phi(pi/4), Phi(pi/2)",
                                        {t_curve(SweepFamily::phi, pi / 100, "phi_pi_100"),
                                         t_curve(SweepFamily::phi, pi / 4, "phi_pi_4"),
                                         t_curve(SweepFamily::phi, pi / 2, "phi_pi_2")});
        case 'f': {
            // Horizontal axis: curve parameter s of trajectory(Phi(theta0), s).
            auto xs = detail::linear_grid(-1.0 + kPanelEdge, 1.0 - kPanelEdge, theta_samples);
            SweepTable table;
            table.title = "(f) Limit probability towards |psi50> along curves through Phi(pi/2), Phi(pi/10), Phi(pi/100)";
            table.header = {"s", "p_phi_pi_2_limit_psi50", "p_phi_pi_10_limit_psi50", "p_phi_pi_100_limit_psi50"};
            std::vector<FesVector> seeds{phi_family(pi / 2), phi_family(pi / 10), phi_family(pi / 100)};
            detail::evaluate_rows(xs, table.rows, threads, [&](double s) {
                std::vector<double> row{s};
                for (const auto &seed : seeds) row.push_back(limit_probability(trajectory(seed, s), 1));
                return row;
            });
            return table;
        }
        default: break;
    }
    throw Error(ErrorCode::UnknownPanel, std::string("unknown panel '") + panel + "', expected a-f");
}

// ----------------------------------------------------------------------------
// Output

/// Header line then one line per row, %.12g, LF line endings.
inline std::string format_csv(const SweepTable &table) {
    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) out += ',';
        out += table.header[c];
    }
    out += '\n';
    char buf[40];
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            std::snprintf(buf, sizeof buf, "%.12g", row[c]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

inline void emit_csv(const SweepTable &table, const std::string &path) { write_text_file(path, format_csv(table)); }

inline SweepTable parse_csv(std::string_view text) {
    SweepTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    auto split = [](const std::string &s) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t pos; (pos = s.find(',', start)) != std::string::npos; start = pos + 1) {
            parts.push_back(s.substr(start, pos - start));
        }
        parts.push_back(s.substr(start));
        return parts;
    };
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty CSV");
    table.header = split(line);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": wrong number of cells");
        }
        std::vector<double> row;
        for (const auto &cell : cells) row.push_back(detail::parse_double(cell, line_no));
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// Static SVG 1.1 line plot: one polyline per "p_" column against the first
/// column, linear axes with labelled ticks, y fixed to [0, 1].
inline std::string format_svg(const SweepTable &table) {
    auto cols = table.probability_columns();
    if (table.rows.size() < 2 || cols.empty()) {
        throw Error(ErrorCode::EmptyTable, "nothing to plot: need at least two rows and one probability column");
    }
    constexpr double width = 720, height = 460, left = 70, right = 200, top = 40, bottom = 60;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
    double x_lo = table.rows.front()[0], x_hi = table.rows.back()[0];
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - y) * plot_h; };
    static constexpr const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    static constexpr const char *dashes[] = {"", "8,4", "2,3", "12,3,2,3"};

    std::string out;
    char buf[256];
    auto put = [&](const char *fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
    };
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    put("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
        width, height, width, height);
    put("<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", width, height);
    out += "<text x=\"" + std::to_string(static_cast<int>(left)) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"13\">";
    for (char ch : table.title) {
        if (ch == '<') out += "&lt;";
        else if (ch == '>') out += "&gt;";
        else if (ch == '&') out += "&amp;";
        else out += ch;
    }
    out += "</text>\n";
    put("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n", left, top,
        plot_w, plot_h);

    for (int i = 0; i <= 5; ++i) {
        double x = x_lo + (x_hi - x_lo) * i / 5.0;
        double y = i / 5.0;
        put("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", px(x), top + plot_h, px(x),
            top + plot_h + 5);
        put("<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">%.3g</text>\n",
            px(x), top + plot_h + 18, x);
        put("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", left - 5, py(y), left, py(y));
        put("<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
            left - 8, py(y) + 4, y);
    }
    put("<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">%s</text>\n",
        left + plot_w / 2, height - 15, table.header.front().c_str());
    put("<text x=\"18\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 18 %.2f)\">probability</text>\n",
        top + plot_h / 2, top + plot_h / 2);

    for (std::size_t i = 0; i < cols.size(); ++i) {
        const char *color = colors[i % std::size(colors)];
        const char *dash = dashes[i % std::size(dashes)];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\"";
        if (*dash) {
            out += " stroke-dasharray=\"";
            out += dash;
            out += "\"";
        }
        out += " points=\"";
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            double y = std::clamp(table.rows[r][cols[i]], 0.0, 1.0);
            put(r ? " %.2f,%.2f" : "%.2f,%.2f", px(table.rows[r][0]), py(y));
        }
        out += "\"/>\n";
        double ly = top + 16 + 18.0 * static_cast<double>(i);
        put("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"1.5\"%s%s%s/>\n",
            left + plot_w + 10, ly, left + plot_w + 34, ly, color, *dash ? " stroke-dasharray=\"" : "", dash,
            *dash ? "\"" : "");
        put("<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"10\">%s</text>\n", left + plot_w + 40,
            ly + 4, table.header[cols[i]].c_str());
    }
    out += "</svg>\n";
    return out;
}

/// Validates before touching the filesystem, so a failed plot leaves no file.
inline void emit_svg(const SweepTable &table, const std::string &path) {
    auto svg = format_svg(table);
    write_text_file(path, svg);
}

}  // namespace fesopt
