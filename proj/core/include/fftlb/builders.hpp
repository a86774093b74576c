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
#include <cstdint>
#include <string>

#include "fftlb/gate.hpp"
#include "fftlb/types.hpp"

namespace fftlb {

bool is_power_of_two(std::size_t n);

/// Fast Walsh-Hadamard transform: (n/2) log2 n butterflies, each
/// Rotation(i, j, pi/4) followed by Constant(j, -1), so that
/// (x_i, x_j) -> ((x_i + x_j)/sqrt2, (x_i - x_j)/sqrt2). n must be 2^k, k >= 1.
LinearAlgorithm build_wht(std::size_t n);

/// Real embedding of the normalized (n/2)-point DFT with layout
/// (Re z_0, Im z_0, Re z_1, Im z_1, ...). Radix-2 decimation in time:
/// bit-reversal swaps (Rotation(pi/2) + reflection each), twiddles as
/// rotations of (Re, Im) pairs, and normalized butterflies applied separately
/// to the real and imaginary parts. n must be 2^k, k >= 2.
LinearAlgorithm build_dft_real(std::size_t n);

/// Deterministic random algorithm with m gates. Index pairs are uniform,
/// theta uniform on [0, 2pi). Unless angle_only, each gate is a constant with
/// probability 1/4 with log2|c| uniform on [-3, 3] and a random sign.
LinearAlgorithm build_random(std::size_t n, std::size_t m, std::uint64_t seed, bool angle_only);

/// Constant(i, c) for i < k, then Constant(i, 1/c) for i < k, then
/// build_wht(n). M^(k) = diag(c, ..., c, 1, ..., 1), an overflow bottleneck.
LinearAlgorithm build_scaled_bottleneck_fixture(std::size_t n, double c, std::size_t k);

/// Mirror of the scaled fixture: scale by 1/c first, then by c, then
/// build_wht(n). Rows of (M^(k))^{-T} have norm c, an underflow bottleneck.
LinearAlgorithm build_inverse_bottleneck_fixture(std::size_t n, double c, std::size_t k);

enum class FixtureKind { kWht, kDftReal, kRandom, kScaledBottleneck, kInverseBottleneck };

struct FixtureSpec {
  FixtureKind kind = FixtureKind::kWht;
  std::size_t n = 2;
  std::uint64_t seed = 0;       // kRandom
  std::size_t gate_budget = 1;  // kRandom
  bool angle_only = false;      // kRandom
  double scale = 2.0;           // bottleneck fixtures
  std::size_t rows = 1;         // bottleneck fixtures
};

LinearAlgorithm build_fixture(const FixtureSpec& spec);

/// Parses "wht:8", "dft:8", "random:n:m:seed[:angles]", "scaled:n:c:k",
/// "inverse:n:c:k". Throws std::invalid_argument.
FixtureSpec parse_fixture_spec(const std::string& text);

/// F(k, l) = n^{-1/2} (-1)^{popcount(k & l)}.
Matrix walsh_hadamard_matrix(std::size_t n);

/// Real embedding of F(k, l) = N^{-1/2} exp(-2 pi i k l / N), N = n/2.
Matrix dft_real_matrix(std::size_t n);

}  // namespace fftlb
