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

namespace fftlb {

/// Outcome of a randomized sweep over one quasi-entropy inequality.
/// slack = rhs - lhs for each instance; a violation is slack < -tolerance.
struct LemmaSweepReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
  std::size_t worst_trial = 0;
  /// Dimensions of the worst instance.
  std::size_t worst_rows = 0;
  std::size_t worst_cols = 0;
  double tolerance = 0.0;

  bool holds() const { return violations == 0; }
};

enum class UnitPairBound {
  /// log2 a.
  kStated,
  /// max(log2 a, 2 / (e ln 2)). For a = 2 both products x(j) y(j) can equal
  /// +-1/e, giving |Phi| = 2 / (e ln 2) ~ 1.0615 > 1; for a >= 3 the
  /// constraint sum |x(j) y(j)| <= 1 binds and log2 a is sharp.
  kSharp,
};

double unit_pair_bound(std::size_t a, UnitPairBound kind);

/// -bound <= Phi(x, y) <= bound for unit x, y in R^a, a uniform in
/// [2, max_a]. Slack is the distance to the nearer end.
LemmaSweepReport sweep_unit_pair_bound(std::size_t trials, std::size_t max_a, std::uint64_t seed,
                                       UnitPairBound kind = UnitPairBound::kStated,
                                       double tolerance = 1e-9);
/// |Phi(A, B) - Phi(UA, UB)| <= factor * |A|_F |B|_F log2 a for Gaussian
/// A, B in R^{a x n} and Haar U. factor = 1 is the bound as usually stated;
/// factor = 2 is what the column-wise argument establishes.
LemmaSweepReport sweep_orthogonal_change(std::size_t trials, std::size_t max_a,
                                         std::size_t max_n, std::uint64_t seed,
                                         double factor = 1.0, double tolerance = 1e-7);

/// |Phi(A, B) - Phi(DA, D^{-T}B)| <= factor * (|A|_F |B|_F + |DA|_F |D^{-T}B|_F) log2 a
/// for Gaussian A, B and a Gaussian nonsingular D.
LemmaSweepReport sweep_nonsingular_change(std::size_t trials, std::size_t max_a,
                                          std::size_t max_n, std::uint64_t seed,
                                          double factor = 1.0, double tolerance = 1e-7);

}  // namespace fftlb
