// Copyright 2026 The fftlb Authors
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

#include "fftlb/algorithm_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace fftlb {
namespace {

constexpr std::string_view kLabelPrefix = "# label:";

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected a nonnegative integer, got '" + tok + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(tok.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ParseError(line, "integer out of range: '" + tok + "'");
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& tok, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError(line, "expected a real number, got '" + tok + "'");
  }
  return v;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

LinearAlgorithm parse_algorithm(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  bool have_header = false;
  std::string label;
  std::vector<Gate> gates;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind(kLabelPrefix, 0) == 0) {
      label = line.substr(kLabelPrefix.size());
      if (!label.empty() && label.front() == ' ') label.erase(0, 1);
      continue;
    }
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "n" || tok[2] != "m") {
        throw ParseError(line_no, "expected header 'n <n> m <m>'");
      }
      n = parse_index(tok[1], line_no);
      m = parse_index(tok[3], line_no);
      if (n < 2) throw ParseError(line_no, "dimension must be at least 2");
      have_header = true;
      gates.reserve(m);
      continue;
    }

    if (gates.size() == m) throw ParseError(line_no, "more gates than the declared m");
    try {
      if (tok[0] == "R") {
        if (tok.size() != 4) throw ParseError(line_no, "rotation needs 'R <i> <j> <theta>'");
        gates.push_back(Gate::rotation(parse_index(tok[1], line_no), parse_index(tok[2], line_no),
                                       parse_real(tok[3], line_no)));
      } else if (tok[0] == "C") {
        if (tok.size() != 3) throw ParseError(line_no, "constant needs 'C <i> <c>'");
        gates.push_back(Gate::constant(parse_index(tok[1], line_no), parse_real(tok[2], line_no)));
      } else {
        throw ParseError(line_no, "unknown gate kind '" + tok[0] + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (gates.back().max_index() >= n) {
      throw ParseError(line_no, "coordinate out of range [0, " + std::to_string(n) + ")");
    }
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header 'n <n> m <m>'");
  if (gates.size() != m) {
    throw ParseError(line_no + 1, "declared m = " + std::to_string(m) + " but found " +
                                      std::to_string(gates.size()) + " gates");
  }
  return LinearAlgorithm(n, std::move(gates), std::move(label));
}

LinearAlgorithm parse_algorithm(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_algorithm(in);
}

LinearAlgorithm load_algorithm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algorithm file '" + path + "'");
  return parse_algorithm(in);
}

std::string render_algorithm(const LinearAlgorithm& algorithm) {
  std::string out = "n " + std::to_string(algorithm.dimension()) + " m " +
                    std::to_string(algorithm.gate_count()) + "\n";
  if (!algorithm.label().empty()) {
    std::string label = algorithm.label();
    for (char& ch : label) {
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    out += std::string(kLabelPrefix) + " " + label + "\n";
  }
  for (const auto& gate : algorithm.gates()) {
    if (gate.is_rotation()) {
      const auto& r = gate.as_rotation();
      out += "R " + std::to_string(r.i) + " " + std::to_string(r.j) + " " +
             format_real(r.theta) + "\n";
    } else {
      const auto& c = gate.as_constant();
      out += "C " + std::to_string(c.i) + " " + format_real(c.c) + "\n";
    }
  }
  return out;
}

void save_algorithm(const LinearAlgorithm& algorithm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write algorithm file '" + path + "'");
  out << render_algorithm(algorithm);
}

}  // namespace fftlb
