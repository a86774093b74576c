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

#include "fftlb/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fftlb {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(Rng& rng, std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<std::size_t>(draw % b);
}

double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = standard_normal(rng);
  }
  return a;
}

Vector random_unit_vector(Rng& rng, std::size_t a) {
  Vector v(static_cast<Eigen::Index>(a));
  do {
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = standard_normal(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

Matrix random_orthogonal(Rng& rng, std::size_t a) {
  const Eigen::MatrixXd g = gaussian_matrix(rng, a, a);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

Matrix random_orthogonal_projection(Rng& rng, std::size_t n, std::size_t rank) {
  if (rank > n) throw std::invalid_argument("projection rank exceeds dimension");
  const Matrix q = random_orthogonal(rng, n);
  const auto dim = static_cast<Eigen::Index>(n);
  if (rank == 0) return Matrix::Zero(dim, dim);
  if (rank == n) return Matrix::Identity(dim, dim);
  const auto basis = q.leftCols(static_cast<Eigen::Index>(rank));
  Matrix p = basis * basis.transpose();
  return 0.5 * (p + p.transpose());
}

}  // namespace fftlb
