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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fftlb/gate.hpp"

namespace fftlb {

/// Malformed algorithm text. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Gate text format:
//
//   n <n> m <m>
//   # label: <free text>      (optional)
//   R <i> <j> <theta>
//   C <i> <c>
//
// Indices are 0-based; theta is in radians. Blank lines and other '#' lines
// are ignored. Reals are written with 17 significant digits so that
// parse_algorithm(render_algorithm(a)) == a.

LinearAlgorithm parse_algorithm(std::istream& in);
LinearAlgorithm parse_algorithm(std::string_view text);
LinearAlgorithm load_algorithm(const std::string& path);

std::string render_algorithm(const LinearAlgorithm& algorithm);
void save_algorithm(const LinearAlgorithm& algorithm, const std::string& path);

/// "%.17g" formatting.
std::string format_real(double value);

}  // namespace fftlb
