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

// fesopt command-line tool: element validation, state construction,
// optimal FES transformations, parameter sweeps and the figure panels.
//
// Exit codes: 0 success, 1 validation / computation failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fesopt/fesopt.hpp"

namespace {

using namespace fesopt;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    double tol = kDefaultTol;
    int samples = 0;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int oracle_cap = kDefaultOracleCap;
    unsigned threads = 1;
};

struct StateOptions {
    std::string family = "ghz";
    int n = 3;
    int q = 0;
    double theta = std::numbers::pi / 6;
    std::vector<double> params;
    std::string file;
};

// "re" or "re:im"
complex_t parse_entry(const std::string &text) {
    auto colon = text.find(':');
    try {
        std::size_t used = 0;
        if (colon == std::string::npos) {
            double re = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return re;
        }
        std::string re_s = text.substr(0, colon), im_s = text.substr(colon + 1);
        double re = std::stod(re_s, &used);
        if (used != re_s.size()) throw std::invalid_argument(text);
        double im = std::stod(im_s, &used);
        if (used != im_s.size()) throw std::invalid_argument(text);
        return {re, im};
    } catch (const std::logic_error &) {
        throw UsageError("bad matrix entry '" + text + "', expected re or re:im");
    }
}

OperationElement parse_matrix(const std::vector<std::string> &entries) {
    if (entries.size() != 4) throw UsageError("need exactly four matrix entries a1 a2 a3 a4");
    return {parse_entry(entries[0]), parse_entry(entries[1]), parse_entry(entries[2]), parse_entry(entries[3])};
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(complex_t z) { return fmt(z.real()) + ":" + fmt(z.imag()); }

void print_matrix(std::ostream &os, const std::string &name, const OperationElement &m) {
    os << name << "=" << fmt(m(0, 0)) << "," << fmt(m(0, 1)) << "," << fmt(m(1, 0)) << "," << fmt(m(1, 1)) << "\n";
}

void warn_domain(Family family, double theta) {
    auto status = family_domain(family, theta);
    if (status == DomainStatus::boundary) std::cerr << "warning: theta is on the boundary of the family's range\n";
    if (status == DomainStatus::outside) std::cerr << "warning: theta is outside the family's range\n";
}

std::optional<Family> family_from_name(const std::string &name) {
    if (name == "gamma") return Family::gamma;
    if (name == "theta") return Family::theta;
    if (name == "phi") return Family::phi;
    return std::nullopt;
}

// Builds a state in whichever representation the family naturally produces.
AnyState build_state(const StateOptions &opt, const GlobalOptions &global) {
    if (!opt.file.empty()) return read_state_file(opt.file);
    if (auto fam = family_from_name(opt.family)) {
        warn_domain(*fam, opt.theta);
        return family_state(*fam, opt.theta);
    }
    if (opt.family == "ghz") return ghz(opt.n);
    if (opt.family == "psi") return psi_pq(opt.n, opt.q);
    if (opt.family == "random") return random_fes_state({global.seed, opt.n, 1});
    if (opt.family == "gabcd") {
        if (opt.params.size() != 4) throw UsageError("gabcd needs --params a,b,c,d");
        return g_abcd({opt.params[0], opt.params[1], opt.params[2], opt.params[3]});
    }
    throw UsageError("unknown family '" + opt.family + "'");
}

FesVector as_fes(const AnyState &state, double tol) {
    if (auto s = std::get_if<FesVector>(&state)) return *s;
    const auto &v = std::get<StateVector>(state);
    return from_computational(v.normalized() ? v : normalize(v), tol);
}

void add_state_options(CLI::App *cmd, StateOptions &opt) {
    cmd->add_option("--family", opt.family, "ghz | psi | gamma | theta | phi | gabcd | random")
        ->check(CLI::IsMember({"ghz", "psi", "gamma", "theta", "phi", "gabcd", "random"}));
    cmd->add_option("--n", opt.n, "qubit count (ghz, psi, random)")->check(CLI::Range(2, 20));
    cmd->add_option("--q", opt.q, "number of |-> factors (psi)");
    cmd->add_option("--theta", opt.theta, "family angle in radians");
    cmd->add_option("--params", opt.params, "G_abcd parameters a,b,c,d")->delimiter(',');
    cmd->add_option("--state", opt.file, "read the state from a state file instead")->check(CLI::ExistingFile);
}

void write_or_print(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

void emit_table(const SweepTable &table, const std::string &base, const std::string &format) {
    if (format == "csv" || format == "both") emit_csv(table, base + ".csv");
    if (format == "svg" || format == "both") emit_svg(table, base + ".svg");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Optimal one-shot local transformations of flip-and-exchange symmetric states"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--tol", global.tol, "tolerance for validity / symmetry predicates")
        ->envname("FES_TOL")
        ->check(CLI::PositiveNumber);
    app.add_option("--samples", global.samples, "samples per sweep (0 = default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", global.out, "output file, base name, or directory depending on the command");
    app.add_option("--format", global.format, "sweep output format")->check(CLI::IsMember({"csv", "svg", "both"}));
    app.add_option("--seed", global.seed, "seed for random states");
    app.add_option("--oracle-cap", global.oracle_cap, "largest n for brute-force checks")
        ->envname("FES_ORACLE_CAP")
        ->check(CLI::Range(1, 30));
    app.add_option("--threads", global.threads, "worker threads for sweeps")->check(CLI::Range(1u, 256u));

    // validate
    auto *validate = app.add_subcommand("validate", "check a 2x2 operation element (entries re or re:im, row-major)");
    std::vector<std::string> validate_entries;
    bool complete = false;
    validate->add_option("entries", validate_entries, "a1 a2 a3 a4")->required()->expected(4);
    validate->add_flag("--complete", complete, "also print the completing POVM element");

    // scale
    auto *scale = app.add_subcommand("scale", "optimal rescaling of a 2x2 operation element");
    std::vector<std::string> scale_entries;
    scale->add_option("entries", scale_entries, "a1 a2 a3 a4")->required()->expected(4);

    // state
    auto *state = app.add_subcommand("state", "build a state and print it in the state-file format");
    StateOptions state_opt;
    std::string basis = "fes";
    add_state_options(state, state_opt);
    state->add_option("--basis", basis, "fes | comp")->check(CLI::IsMember({"fes", "comp"}));

    // transform
    auto *transform = app.add_subcommand("transform", "apply the optimal FES operator M(t)");
    StateOptions transform_opt;
    double t = 0.0;
    bool oracle_check = false;
    add_state_options(transform, transform_opt);
    transform->add_option("--t", t, "operator parameter, |t| < 1")->required();
    transform->add_flag("--oracle", oracle_check, "cross-check against the brute-force statevector path");

    // sweep
    auto *sweep = app.add_subcommand("sweep", "sweep t or a family angle and tabulate probabilities");
    SweepSpec spec;
    std::string sweep_family = "ghz", variable = "t", custom_file;
    std::optional<double> lo, hi;
    std::optional<int> direction;
    sweep->add_option("--family", sweep_family, "ghz | gamma | theta | phi | custom")
        ->check(CLI::IsMember({"ghz", "gamma", "theta", "phi", "custom"}));
    sweep->add_option("--angle", spec.family_angle, "family angle for t sweeps");
    sweep->add_option("--n", spec.qubits, "GHZ qubit count")->check(CLI::Range(2, 20));
    sweep->add_option("--state", custom_file, "state file for --family custom")->check(CLI::ExistingFile);
    sweep->add_option("--variable", variable, "t | theta")->check(CLI::IsMember({"t", "theta"}));
    sweep->add_option("--lo", lo, "lower bound");
    sweep->add_option("--hi", hi, "upper bound");
    sweep->add_option("--direction", direction, "+1 or -1 for theta sweeps (both if omitted)");

    // figure
    auto *figure = app.add_subcommand("figure", "write the six preconfigured panels a-f");
    std::string panel = "all";
    figure->add_option("--panel", panel, "a | b | c | d | e | f | all")
        ->check(CLI::IsMember({"a", "b", "c", "d", "e", "f", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate) {
            auto m = parse_matrix(validate_entries);
            auto r = analyze_element(m, global.tol);
            std::cout << "frobenius_sq=" << fmt(r.frobenius_sq) << "\n"
                      << "abs_det_sq=" << fmt(r.abs_det_sq) << "\n"
                      << "lambda_min=" << fmt(r.lambda_min) << "\n"
                      << "lambda_max=" << fmt(r.lambda_max) << "\n"
                      << "valid=" << (r.valid ? "true" : "false") << "\n"
                      << "saturated=" << (r.saturated ? "true" : "false") << "\n"
                      << "max_scale_sq=" << fmt(r.max_scale_sq) << "\n";
            if (complete && r.valid) print_matrix(std::cout, "m2", complete_to_povm(m, global.tol).m2);
            return r.valid ? 0 : kExitFailure;
        }

        if (*scale) {
            auto m = parse_matrix(scale_entries);
            auto scaled = rescale_optimal(m);
            std::cout << "max_scale_sq=" << fmt(max_scale_sq(m)) << "\n";
            print_matrix(std::cout, "rescaled", scaled);
            std::cout << "osbp=" << (is_osbp_element(scaled, global.tol) ? "true" : "false") << "\n";
            return 0;
        }

        if (*state) {
            auto built = build_state(state_opt, global);
            std::string text;
            if (basis == "fes") {
                text = format_state(as_fes(built, global.tol));
            } else if (auto v = std::get_if<StateVector>(&built)) {
                text = format_state(*v);
            } else {
                text = format_state(to_computational(std::get<FesVector>(built)));
            }
            write_or_print(global.out, text);
            return 0;
        }

        if (*transform) {
            auto s = as_fes(build_state(transform_opt, global), global.tol);
            if (!s.normalized()) s = normalize(s);
            auto outcome = apply(optimal_operator(t), s);
            std::cout << "t=" << fmt(t) << "\n"
                      << "f=" << fmt(optimal_operator(t).f()) << "\n"
                      << "success_probability=" << fmt(outcome.success_prob) << "\n"
                      << "limit_plus=" << fmt(limit_probability(s, 1)) << "\n"
                      << "limit_minus=" << fmt(limit_probability(s, -1)) << "\n";
            for (int q = 0; q <= s.qubits(); q += 2) {
                std::cout << "fidelity_psi" << s.qubits() - q << "_" << q << "="
                          << fmt(fidelity(outcome.final_state, psi_pq(s.qubits(), q))) << "\n";
            }
            bool ok = true;
            if (oracle_check) {
                auto v = to_computational(s);
                double brute = brute_success_probability(v, optimal_operator(t).matrix(), global.oracle_cap);
                double diff = std::abs(brute - outcome.success_prob);
                std::cout << "oracle_success_probability=" << fmt(brute) << "\n"
                          << "oracle_abs_diff=" << fmt(diff) << "\n";
                ok = diff <= 1e-12;
            }
            if (!global.out.empty()) write_text_file(global.out, format_state(outcome.final_state));
            return ok ? 0 : kExitFailure;
        }

        if (*sweep) {
            static const std::map<std::string, SweepFamily> families{{"ghz", SweepFamily::ghz},
                                                                     {"gamma", SweepFamily::gamma},
                                                                     {"theta", SweepFamily::theta},
                                                                     {"phi", SweepFamily::phi},
                                                                     {"custom", SweepFamily::custom}};
            spec.family = families.at(sweep_family);
            spec.variable = variable == "t" ? SweepVariable::t : SweepVariable::theta;
            if (spec.variable == SweepVariable::t) {
                spec.lo = lo.value_or(-0.999);
                spec.hi = hi.value_or(0.999);
                spec.samples = global.samples > 0 ? global.samples : kDefaultTSamples;
            } else {
                spec.lo = lo.value_or(kPanelEdge);
                spec.hi = hi.value_or(std::numbers::pi / 2 - kPanelEdge);
                spec.samples = global.samples > 0 ? global.samples : kDefaultThetaSamples;
            }
            spec.direction = direction;
            spec.threads = global.threads;
            if (spec.family == SweepFamily::custom) {
                if (custom_file.empty()) throw UsageError("--family custom needs --state FILE");
                auto s = as_fes(read_state_file(custom_file), global.tol);
                spec.custom_state = s.normalized() ? s : normalize(s);
            }
            auto table = run_sweep(spec);
            if (global.out.empty()) {
                std::cout << format_csv(table);
            } else {
                emit_table(table, global.out, global.format);
            }
            return 0;
        }

        if (*figure) {
            std::filesystem::path dir = global.out.empty() ? "." : global.out;
            std::filesystem::create_directories(dir);
            std::string panels = panel == "all" ? "abcdef" : panel;
            for (char p : panels) {
                auto table = figure_panel(p, global.samples, global.threads);
                auto base = (dir / (std::string("fig2") + p)).string();
                emit_table(table, base, global.format);
                std::cout << "wrote " << base << " (" << table.rows.size() << " rows)\n";
            }
            return 0;
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::InvalidSpec ? kExitUsage : kExitFailure;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
