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

// Plain-text state files:
//
//   n=<int> basis=<fes|comp>
//   <re>,<im>        one line per amplitude, basis order, %.17g
//
// FES files list the |psi_{n-2k,2k}> amplitudes for k = 0..n/2; comp files
// list all 2^n amplitudes with qubit 0 as the most significant bit.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fesopt/error.hpp"
#include "fesopt/fes_states.hpp"

namespace fesopt {

using AnyState = std::variant<FesVector, StateVector>;

namespace detail {

inline std::string format_amplitudes(int n, std::string_view basis, std::span<const complex_t> amps) {
    std::string out = "n=" + std::to_string(n) + " basis=" + std::string(basis) + "\n";
    char buf[96];
    for (auto z : amps) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        out += buf;
    }
    return out;
}

inline double parse_double(const std::string &token, int line_no) {
    char *end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + token + "'");
    }
    return v;
}

}  // namespace detail

inline std::string format_state(const FesVector &s) { return detail::format_amplitudes(s.qubits(), "fes", s.amps()); }

inline std::string format_state(const StateVector &v) { return detail::format_amplitudes(v.qubits(), "comp", v.amps()); }

/// Parses a state file. The normalised flag is set when the squared norm is
/// within 1e-12 of one.
inline AnyState parse_state(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty state file");

    int n = 0;
    char basis[16] = {};
    if (std::sscanf(line.c_str(), "n=%d basis=%15s", &n, basis) != 2) {
        throw Error(ErrorCode::ParseError, "header must read 'n=<int> basis=<fes|comp>'");
    }
    std::string kind = basis;
    if (kind != "fes" && kind != "comp") throw Error(ErrorCode::ParseError, "unknown basis '" + kind + "'");
    if (n < 1 || n > 30) throw Error(ErrorCode::ParseError, "qubit count out of range");

    std::vector<complex_t> amps;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 're,im'");
        }
        amps.emplace_back(detail::parse_double(line.substr(0, comma), line_no),
                          detail::parse_double(line.substr(comma + 1), line_no));
    }

    double norm_sq = 0.0;
    for (auto z : amps) norm_sq += std::norm(z);
    bool normalized = std::abs(norm_sq - 1.0) <= 1e-12;
    if (kind == "fes") return FesVector(n, std::move(amps), normalized);
    return StateVector(n, std::move(amps), normalized);
}

inline AnyState read_state_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str());
}

inline void write_text_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace fesopt
