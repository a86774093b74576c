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
#include <random>

#include "fftlb/types.hpp"

namespace fftlb {

/// Seeded engine used everywhere. Draws are converted to reals and bounded
/// integers by the helpers below rather than std distributions, so gate lists
/// and test instances are identical across standard libraries.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);
/// Uniform integer in [0, bound).
std::size_t uniform_index(Rng& rng, std::size_t bound);
/// Standard normal (Box-Muller on uniform01 draws).
double standard_normal(Rng& rng);

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);
Vector random_unit_vector(Rng& rng, std::size_t a);
/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// diagonal of R made positive.
Matrix random_orthogonal(Rng& rng, std::size_t a);
/// Orthogonal projection onto a uniformly random subspace of the given rank.
Matrix random_orthogonal_projection(Rng& rng, std::size_t n, std::size_t rank);

}  // namespace fftlb
