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
#include <limits>
#include <vector>

#include "fftlb/gate.hpp"
#include "fftlb/types.hpp"

namespace fftlb {

enum class DirectionKind { kOverflow, kUnderflow };

const char* to_string(DirectionKind kind);

/// An ordered orthonormal system of input directions together with where
/// each one was found: vectors[j] is the normalized projection of row
/// coords[j] of M^(steps[j]) (overflow) or of (M^(steps[j]))^{-T} (underflow)
/// onto the complement of the earlier vectors, and magnitudes[j] is the norm
/// of that projection.
struct DirectionSystem {
  DirectionKind kind = DirectionKind::kOverflow;
  std::vector<Vector> vectors;
  /// Unprojected rows z_j.
  std::vector<Vector> raw_rows;
  std::vector<std::size_t> steps;
  std::vector<std::size_t> coords;
  std::vector<double> magnitudes;

  std::size_t size() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }
  /// Projection onto the orthogonal complement of span(vectors).
  Matrix complement_projection(std::size_t n) const;
  /// max |G - Id| over the Gram matrix of vectors.
  double orthonormality_error() const;
  std::size_t distinct_steps() const;
  bool has_repeated_site() const;
};

enum class ExtractCriterion {
  /// Extend while some candidate row has a projected norm >= tau on either
  /// side; candidates are ranked by the larger of the two norms.
  kEitherNorm,
  /// Extend while some candidate has |row(MP)| |row(M^{-T}Q)| >= tau^2;
  /// candidates are ranked by that product.
  kProduct,
};

struct ExtractOptions {
  double tau = 0.0;
  ExtractCriterion criterion = ExtractCriterion::kEitherNorm;
  /// Scan steps whose gate is a constant as well as rotation steps.
  bool include_constant_gates = true;
  /// Restrict row i at step t to the rows touched by gate t. When false every
  /// row of every M^(t), t = 0..m, is a candidate.
  bool touched_rows_only = true;
  /// Reject algorithms whose final matrix is not F_WHT(n) within 1e-8.
  bool require_walsh_hadamard_target = true;
  /// Directions already deflated before the greedy loop starts.
  std::vector<Vector> initial_overflow;
  std::vector<Vector> initial_underflow;
};

struct ExtractionResult {
  DirectionSystem overflow;
  DirectionSystem underflow;
  /// Final projections onto the complements of (initial + extracted) systems.
  Matrix p;
  Matrix q;
  /// Best candidate score when the loop stopped (below threshold).
  double final_score = 0.0;
};

/// tau = sqrt(b / 2) with b = n log2 n / m.
double default_tau(const LinearAlgorithm& algorithm);

/// Greedy extraction of orthonormal overflow and underflow systems. Each
/// iteration picks the best (t, i) candidate (ties: smallest t, then smallest
/// i) and extends the overflow side when |row(MP)| >= |row(M^{-T}Q)|, the
/// underflow side otherwise. Throws std::invalid_argument if tau <= 0 or the
/// final matrix check fails.
ExtractionResult extract_directions(const LinearAlgorithm& algorithm,
                                    const ExtractOptions& options);

/// Orthonormal completion of an underflow system by standard basis vectors.
struct ExtendedBasis {
  std::vector<Vector> z_vectors;
  std::vector<Vector> u_vectors;
  std::vector<double> gammas;
  std::size_t extracted = 0;
};

/// For j = n'..n-1 picks e_{i0} minimizing sum_{j' <= j} u_{j'}(i0)^2 (ties:
/// smallest i0) and appends its normalized projection onto the complement.
/// Throws std::logic_error if a projection degenerates (|Qz| < 1e-12).
ExtendedBasis extend_basis(const DirectionSystem& underflow, std::size_t n);

struct VolumeBound {
  /// sum_j log2 gamma_j.
  double sum_log_gamma = 0.0;
  /// n' log2 sqrt(b/2) + sum_{j=n'+1}^{n} log2 sqrt(1 - (j-1)/n).
  double closed_form = 0.0;
  double b = 0.0;
  std::size_t n_prime = 0;
};

/// log2 of the uncertainty volume over eps^n, from the extended basis and
/// from the closed-form estimate.
VolumeBound uncertainty_volume_log(const ExtendedBasis& basis, double b, std::size_t n_prime);

}  // namespace fftlb
