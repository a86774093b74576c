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
#include <optional>
#include <span>
#include <vector>

#include "fftlb/gate.hpp"
#include "fftlb/types.hpp"

namespace fftlb {

/// |A(i,j) B(i,j)| below this is treated as an exact zero (0 log 0 = 0).
inline constexpr double kProductFloor = 1e-300;

/// -p log2 |p| with the zero convention.
double entropy_term(double p);

/// Quasi-entropy sum_{i,j} -A(i,j) B(i,j) log2 |A(i,j) B(i,j)|. Throws
/// std::invalid_argument on a shape mismatch.
double phi(const Matrix& a, const Matrix& b);
double phi(std::span<const double> a, std::span<const double> b);

/// Complex quasi-entropy: columns are paired (2j, 2j+1) and each pair
/// contributes -s log2 |s| with s = A(i,2j) B(i,2j) + A(i,2j+1) B(i,2j+1).
/// Throws on an odd column count.
double phi_complex(const Matrix& a, const Matrix& b);

/// Phi(M P, M^{-T} Q). The caller guarantees minv_t is (M)^{-T}.
double phi_pq(const Matrix& m, const Matrix& minv_t, const Matrix& p, const Matrix& q);

/// Optional right factors for Phi_{P,Q}; an empty optional means Id.
struct Projections {
  std::optional<Matrix> p;
  std::optional<Matrix> q;

  static Projections identity() { return {}; }
};

struct PotentialTrace {
  /// Phi_{P,Q}(M^(t)) for t = 0..m.
  std::vector<double> values;
  /// |Phi(t) - Phi(t-1)|; entry 0 is 0.
  std::vector<double> per_step_delta;
  /// Right-hand side of the nonsingular-change bound on the touched rows:
  /// (|A_t|_F |B_t|_F + |A_{t-1}|_F |B_{t-1}|_F) log2 |I_t|.
  std::vector<double> per_step_bound;
  std::vector<TouchedRows> touched;
  /// Largest |incremental - recomputed| seen at a resync point.
  double max_resync_drift = 0.0;
};

struct TraceOptions {
  std::size_t resync_interval = 1000;
  double resync_tolerance = 1e-7;
};

/// Phi_{P,Q}(M^(t)) along the trajectory. Only the touched rows' contributions
/// are recomputed per gate; every resync_interval gates the full sum is
/// recomputed and must agree within resync_tolerance (std::runtime_error
/// otherwise).
PotentialTrace trace_potential(const LinearAlgorithm& algorithm,
                               const Projections& projections = {},
                               const TraceOptions& options = {});

}  // namespace fftlb
