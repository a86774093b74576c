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

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fftlb/gate.hpp"
#include "fftlb/types.hpp"

namespace fftlb {

/// Gate with its trigonometric coefficients evaluated once. This is the one
/// gate kernel; every replay path (dense rows, vectors, quantized state) goes
/// through it so their results agree bit for bit.
struct CompiledGate {
  std::size_t i = 0;
  std::size_t j = 0;
  double c = 1.0;
  double s = 0.0;
  bool rotation = false;

  static CompiledGate from(const Gate& gate) {
    CompiledGate g;
    if (gate.is_rotation()) {
      const auto& r = gate.as_rotation();
      g = {r.i, r.j, std::cos(r.theta), std::sin(r.theta), true};
    } else {
      const auto& k = gate.as_constant();
      g = {k.i, k.i, k.c, 0.0, false};
    }
    return g;
  }

  void apply(std::span<double> x) const {
    if (rotation) {
      const double a = x[i];
      const double b = x[j];
      x[i] = c * a + s * b;
      x[j] = -s * a + c * b;
    } else {
      x[i] *= c;
    }
  }
};

inline void apply_gate(const Gate& gate, std::span<double> x) { CompiledGate::from(gate).apply(x); }

std::vector<CompiledGate> compile(const LinearAlgorithm& algorithm);

/// The pair (M^(t), (M^(t))^{-T}) maintained jointly while gates are applied.
///
/// A rotation R acts on rows {i, j} of both matrices identically (R^{-T} = R);
/// Constant(i, c) scales row i of M by c and row i of M^{-T} by 1/c. Each
/// update costs O(n) and rows outside the touched set are left untouched.
class TrajectoryState {
 public:
  /// State at t = 0: M = M^{-T} = Id.
  explicit TrajectoryState(std::size_t n);

  std::size_t step() const { return t_; }
  std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& m() const { return m_; }
  const Matrix& minv_t() const { return minv_t_; }
  /// Rows rewritten by the most recent gate (empty at t = 0).
  const TouchedRows& touched() const { return touched_; }

  void apply(const Gate& gate);

  /// max_{k,l} |(M (M^{-T})^T - Id)(k, l)|.
  double inverse_residual() const;

 private:
  std::size_t t_ = 0;
  Matrix m_;
  Matrix minv_t_;
  TouchedRows touched_;
};

TrajectoryState advance(TrajectoryState state, const Gate& gate);

/// Calls visit(state) for t = 0, 1, ..., m in order.
template <class Visit>
void replay(const LinearAlgorithm& algorithm, Visit&& visit) {
  TrajectoryState state(algorithm.dimension());
  visit(static_cast<const TrajectoryState&>(state));
  for (const auto& gate : algorithm.gates()) {
    state.apply(gate);
    visit(static_cast<const TrajectoryState&>(state));
  }
}

/// M^(upto_t) x by sequential gate application. Throws on a length mismatch or
/// upto_t > m.
Vector apply_to_vector(const LinearAlgorithm& algorithm, std::span<const double> x,
                       std::size_t upto_t);

struct MatrixPair {
  Matrix m;
  Matrix minv_t;
};

MatrixPair matrices_at(const LinearAlgorithm& algorithm, std::size_t t);

Matrix final_matrix(const LinearAlgorithm& algorithm);

struct ValidationReport {
  double max_residual = 0.0;
  /// kappa(M^(t)) = sigma_1 / sigma_n for t = 0..m.
  std::vector<double> condition_numbers;
  /// Touched rows per step; entry 0 is empty.
  std::vector<TouchedRows> touched;
  bool unstable = false;

  double max_condition_number() const;
};

struct ValidateOptions {
  /// Residual above which the algorithm is flagged unstable.
  double residual_threshold = 1e-6;
};

ValidationReport validate(const LinearAlgorithm& algorithm, const ValidateOptions& options = {});

/// sigma_1(A) / sigma_n(A); +inf for a singular matrix.
double condition_number(const Matrix& a);

}  // namespace fftlb
