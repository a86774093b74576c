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

#include <iosfwd>
#include <string>
#include <vector>

#include "fftlb/types.hpp"

namespace fftlb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

inline constexpr int kSchemaVersion = 1;

/// Runs one subcommand. args excludes the program name. Primary output goes to
/// out unless -o is given; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Real literal with optional power syntax: "0.25", "1e-3", "2^-10".
double parse_real(const std::string& text);

/// "identity", "proj:i,j,..." (diagonal projection onto the listed
/// coordinates) or "file:path" (n x n whitespace-separated rows).
Matrix parse_projection(const std::string& spec, std::size_t n);

}  // namespace fftlb::cli
