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

#include "fftlb/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fftlb/quasi_entropy.hpp"
#include "fftlb/random.hpp"

namespace fftlb {
namespace {

LemmaSweepReport start(std::string name, double tolerance) {
  LemmaSweepReport r;
  r.name = std::move(name);
  r.min_slack = std::numeric_limits<double>::infinity();
  r.tolerance = tolerance;
  return r;
}

void record(LemmaSweepReport& r, double slack, std::size_t rows, std::size_t cols) {
  if (slack < r.min_slack) {
    r.min_slack = slack;
    r.worst_trial = r.trials;
    r.worst_rows = rows;
    r.worst_cols = cols;
  }
  if (slack < -r.tolerance) ++r.violations;
  ++r.trials;
}

void check_dims(std::size_t max_a, std::size_t max_n) {
  if (max_a < 2) throw std::invalid_argument("lemma sweep: max_a must be at least 2");
  if (max_n < 1) throw std::invalid_argument("lemma sweep: max_n must be at least 1");
}

}  // namespace

double unit_pair_bound(std::size_t a, UnitPairBound kind) {
  const double stated = std::log2(static_cast<double>(a));
  if (kind == UnitPairBound::kStated) return stated;
  return std::max(stated, 2.0 / (std::exp(1.0) * std::log(2.0)));
}

LemmaSweepReport sweep_unit_pair_bound(std::size_t trials, std::size_t max_a, std::uint64_t seed,
                                       UnitPairBound kind, double tolerance) {
  check_dims(max_a, 1);
  auto report = start("unit-pair bound", tolerance);
  Rng rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t a = 2 + uniform_index(rng, max_a - 1);
    const Vector x = random_unit_vector(rng, a);
    const Vector y = random_unit_vector(rng, a);
    const double value = phi(std::span<const double>(x.data(), a),
                             std::span<const double>(y.data(), a));
    const double bound = unit_pair_bound(a, kind);
    record(report, std::min(bound - value, value + bound), a, 1);
  }
  return report;
}

LemmaSweepReport sweep_orthogonal_change(std::size_t trials, std::size_t max_a,
                                         std::size_t max_n, std::uint64_t seed, double factor,
                                         double tolerance) {
  check_dims(max_a, max_n);
  auto report = start("orthogonal change", tolerance);
  Rng rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t a = 2 + uniform_index(rng, max_a - 1);
    const std::size_t n = 1 + uniform_index(rng, max_n);
    const Matrix A = gaussian_matrix(rng, a, n);
    const Matrix B = gaussian_matrix(rng, a, n);
    const Matrix U = random_orthogonal(rng, a);
    const double change = std::abs(phi(A, B) - phi(Matrix(U * A), Matrix(U * B)));
    const double bound = factor * A.norm() * B.norm() * std::log2(static_cast<double>(a));
    record(report, bound - change, a, n);
  }
  return report;
}

LemmaSweepReport sweep_nonsingular_change(std::size_t trials, std::size_t max_a,
                                          std::size_t max_n, std::uint64_t seed, double factor,
                                          double tolerance) {
  check_dims(max_a, max_n);
  auto report = start("nonsingular change", tolerance);
  Rng rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t a = 2 + uniform_index(rng, max_a - 1);
    const std::size_t n = 1 + uniform_index(rng, max_n);
    const Matrix A = gaussian_matrix(rng, a, n);
    const Matrix B = gaussian_matrix(rng, a, n);
    Matrix D = gaussian_matrix(rng, a, a);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
    while (!lu.isInvertible()) {
      D = gaussian_matrix(rng, a, a);
      lu.compute(D);
    }
    const Matrix DA = D * A;
    const Matrix DB = Matrix(lu.inverse()).transpose() * B;
    const double change = std::abs(phi(A, B) - phi(DA, DB));
    const double bound = factor * (A.norm() * B.norm() + DA.norm() * DB.norm()) *
                         std::log2(static_cast<double>(a));
    record(report, bound - change, a, n);
  }
  return report;
}

}  // namespace fftlb
