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
#include <string>
#include <vector>

#include "fftlb/gate.hpp"
#include "fftlb/quasi_entropy.hpp"
#include "fftlb/types.hpp"

namespace fftlb {

/// Frobenius product sqrt(|(M P)[I,:]|_F^2 |(M^{-T} Q)[I,:]|_F^2) over one
/// window of R consecutive gates, evaluated at both ends of the window.
struct WindowProduct {
  std::size_t window = 0;
  /// Trajectory indices of the window ends: M^(t_start) and M^(t_end).
  std::size_t t_start = 0;
  std::size_t t_end = 0;
  /// Union of rows touched by the window's gates (ascending).
  std::vector<std::size_t> rows;
  double at_start = 0.0;
  double at_end = 0.0;
  double value = 0.0;  // max(at_start, at_end)
  /// False for windows skipped by the rotation-only rule.
  bool included = true;
};

struct BottleneckReport {
  std::size_t R = 1;
  std::size_t gate_count = 0;
  std::size_t padded_gate_count = 0;
  /// Maximizing window, the trajectory index where the max is attained and
  /// the window's row set I_t.
  std::size_t window_star = 0;
  std::size_t t_star = 0;
  std::vector<std::size_t> rows_star;
  double lhs = 0.0;
  /// R (Phi_{P,Q}(M^(m)) - Phi_{P,Q}(Id)) / (m log2 2R).
  double rhs = 0.0;
  double potential_change = 0.0;
  std::vector<WindowProduct> per_step;

  double slack() const { return lhs - rhs; }
};

struct ScanOptions {
  std::size_t R = 1;
  /// With R = 1 only rotation steps are scanned unless this is set, in which
  /// case a constant gate contributes its single row (i_t = j_t).
  bool include_constant_gates = false;
};

/// Bottleneck scan. The gate list is padded with identity steps up to a
/// multiple of R; windows start at t = 0, R, 2R, .... Ties pick the smallest
/// window, and within a window the later end. Throws std::invalid_argument
/// unless 1 <= R <= floor(n/2) and m >= 1.
BottleneckReport scan_bottlenecks(const LinearAlgorithm& algorithm,
                                  const Projections& projections = {},
                                  const ScanOptions& options = {});

struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs - rhs, oriented so that the link holds iff slack >= 0.
  double slack = 0.0;
};

/// Numerical check of each step of the bottleneck argument:
///  triangle        sum_w |Phi(end_w) - Phi(start_w)| >= |Phi(M^(m')) - Phi(Id)|
///  window bound    |Phi(end_w) - Phi(start_w)| <= (p_end + p_start) log2 2R, every w
///  max vs average  max_w max(p) >= |Phi(M^(m')) - Phi(Id)| / (2 (m'/R) log2 2R)
///  stated bound    the scan's lhs >= rhs
struct ChainReport {
  std::size_t R = 1;
  std::vector<double> window_change;
  std::vector<double> window_bound;
  std::size_t worst_window = 0;
  std::vector<ChainLink> links;

  double min_slack() const;
  bool holds(double tolerance = 1e-7) const { return min_slack() >= -tolerance; }
};

ChainReport verify_bottleneck_chain(const LinearAlgorithm& algorithm,
                                  const Projections& projections = {}, std::size_t R = 1);

/// Both sides of the Fourier-after-projection bounds for F = F_WHT(n).
///   lower: Phi(FP, FQ) >= n log n - (tr P^ + tr Q^) log n - (a2 + b2)(147 + 30 log n)
///   upper: Phi(P, Q)   <= tr P^ + tr Q^ + (a2 + b2)(1 + log n)
/// with P^ = Id - P, Q^ = Id - Q, a2 = |P^|_F^2, b2 = |Q^|_F^2, logs base 2.
/// The upper constant collects the diagonal part (tr P^ + tr Q^ + a2 + b2) and
/// the off-diagonal part ((a2 + b2) log n) of the argument for PSD
/// contractions.
struct FourierProjectionReport {
  std::size_t n = 0;
  double trace_p_hat = 0.0;
  double trace_q_hat = 0.0;
  double alpha2 = 0.0;
  double beta2 = 0.0;
  double lower_lhs = 0.0;
  double lower_rhs = 0.0;
  bool upper_checked = false;
  double upper_lhs = 0.0;
  double upper_rhs = 0.0;

  double lower_slack() const { return lower_lhs - lower_rhs; }
  double upper_slack() const { return upper_rhs - upper_lhs; }
};

double lower_bound_constant(std::size_t n);
double upper_bound_rhs(double trace_p_hat, double trace_q_hat, double alpha2, double beta2,
                       std::size_t n);

/// Symmetric with eigenvalues in [0, 1], both within tolerance.
bool is_psd_contraction(const Matrix& a, double tolerance = 1e-9);

/// Throws std::invalid_argument on shape mismatch, on n not a power of two,
/// or when check_upper is set and P or Q is not a PSD contraction.
FourierProjectionReport verify_fourier_projection_bound(std::size_t n, const Matrix& p,
                                                        const Matrix& q, bool check_upper = true);

}  // namespace fftlb
