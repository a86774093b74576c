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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dense_oracle.hpp"
#include "fftlb/builders.hpp"
#include "fftlb/directions.hpp"
#include "fftlb/random.hpp"

namespace fftlb {
namespace {

using testing::dense_inverse_transpose;
using testing::dense_product;

struct OracleSystem {
  std::vector<bool> overflow;
  std::vector<std::size_t> steps;
  std::vector<std::size_t> coords;
  std::vector<double> magnitudes;
};

// Greedy extraction over densely recomputed matrices, restricted to touched
// rows of every gate and ranked by the larger projected norm.
OracleSystem dense_extract(const LinearAlgorithm& a, double tau) {
  const auto n = static_cast<Eigen::Index>(a.dimension());
  std::vector<Matrix> ms;
  std::vector<Matrix> bs;
  for (std::size_t t = 0; t <= a.gate_count(); ++t) {
    ms.push_back(dense_product(a, t));
    bs.push_back(dense_inverse_transpose(a, t));
  }
  Matrix p = Matrix::Identity(n, n);
  Matrix q = Matrix::Identity(n, n);
  OracleSystem out;
  while (true) {
    double best = -1.0;
    std::size_t bt = 0;
    std::size_t bi = 0;
    bool side = true;
    for (std::size_t t = 1; t <= a.gate_count(); ++t) {
      const auto touched = a.gates()[t - 1].touched();
      std::vector<std::size_t> rows(touched.begin(), touched.end());
      std::sort(rows.begin(), rows.end());
      for (std::size_t i : rows) {
        const double na = (ms[t].row(static_cast<Eigen::Index>(i)) * p).norm();
        const double nb = (bs[t].row(static_cast<Eigen::Index>(i)) * q).norm();
        if (std::max(na, nb) > best) {
          best = std::max(na, nb);
          bt = t;
          bi = i;
          side = na >= nb;
        }
      }
    }
    if (best < tau) break;
    const auto r = static_cast<Eigen::Index>(bi);
    Vector v = side ? Vector((ms[bt].row(r) * p).transpose()) : Vector((bs[bt].row(r) * q).transpose());
    out.overflow.push_back(side);
    out.steps.push_back(bt);
    out.coords.push_back(bi);
    out.magnitudes.push_back(v.norm());
    v.normalize();
    (side ? p : q) -= v * v.transpose();
  }
  return out;
}

ExtractOptions at_tau(double tau) {
  ExtractOptions o;
  o.tau = tau;
  return o;
}

TEST(ExtractTest, WalshHadamardGivesEmptySystems) {
  const auto r = extract_directions(build_wht(8), at_tau(2.0));
  EXPECT_TRUE(r.overflow.empty());
  EXPECT_TRUE(r.underflow.empty());
}

TEST(ExtractTest, ScaledFixtureOverflow) {
  const auto r = extract_directions(build_scaled_bottleneck_fixture(8, 4.0, 4), at_tau(2.0));
  ASSERT_EQ(r.overflow.size(), 4u);
  EXPECT_TRUE(r.underflow.empty());
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(r.overflow.magnitudes[j], 4.0, 1e-8);
    EXPECT_EQ(r.overflow.coords[j], j);
    EXPECT_EQ(r.overflow.steps[j], j + 1);
    EXPECT_NEAR(std::abs(r.overflow.vectors[j](static_cast<Eigen::Index>(j))), 1.0, 1e-12);
  }
  EXPECT_LT(r.overflow.orthonormality_error(), 1e-8);
  EXPECT_FALSE(r.overflow.has_repeated_site());
}

TEST(ExtractTest, InverseFixtureUnderflow) {
  const auto r = extract_directions(build_inverse_bottleneck_fixture(8, 4.0, 4), at_tau(2.0));
  ASSERT_EQ(r.underflow.size(), 4u);
  EXPECT_TRUE(r.overflow.empty());
  for (double g : r.underflow.magnitudes) EXPECT_NEAR(g, 4.0, 1e-8);
}

TEST(ExtractTest, RequiresWalshHadamardTarget) {
  EXPECT_THROW(extract_directions(build_random(8, 20, 1, false), at_tau(2.0)),
               std::invalid_argument);
  EXPECT_THROW(extract_directions(build_wht(8), at_tau(0.0)), std::invalid_argument);
}

TEST(ExtractTest, MatchesDenseInversionOracle) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto a = build_random(5, 18, seed, false);
    auto options = at_tau(1.5);
    options.require_walsh_hadamard_target = false;
    const auto r = extract_directions(a, options);
    const auto want = dense_extract(a, 1.5);
    std::size_t over = 0;
    std::size_t under = 0;
    ASSERT_EQ(r.overflow.size() + r.underflow.size(), want.steps.size()) << seed;
    for (std::size_t k = 0; k < want.steps.size(); ++k) {
      const DirectionSystem& sys = want.overflow[k] ? r.overflow : r.underflow;
      const std::size_t j = want.overflow[k] ? over++ : under++;
      EXPECT_EQ(sys.steps[j], want.steps[k]) << seed;
      EXPECT_EQ(sys.coords[j], want.coords[k]) << seed;
      EXPECT_NEAR(sys.magnitudes[j], want.magnitudes[k], 1e-8 * want.magnitudes[k]) << seed;
    }
  }
}

TEST(ExtractTest, StoppingConditionAndReextraction) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto a = build_random(6, 30, 50 + seed, false);
    auto options = at_tau(1.5);
    options.require_walsh_hadamard_target = false;
    const auto r = extract_directions(a, options);
    for (double mag : r.overflow.magnitudes) EXPECT_GE(mag, 1.5);
    for (double mag : r.underflow.magnitudes) EXPECT_GE(mag, 1.5);
    EXPECT_LT(r.final_score, 1.5);
    EXPECT_LT(r.overflow.orthonormality_error(), 1e-8);
    EXPECT_LT(r.underflow.orthonormality_error(), 1e-8);
    EXPECT_LT((r.p - r.overflow.complement_projection(6)).cwiseAbs().maxCoeff(), 1e-10);

    auto again = options;
    again.initial_overflow = r.overflow.vectors;
    again.initial_underflow = r.underflow.vectors;
    const auto second = extract_directions(a, again);
    EXPECT_TRUE(second.overflow.empty()) << seed;
    EXPECT_TRUE(second.underflow.empty()) << seed;
  }
}

TEST(ExtractTest, ProductCriterionIsAvailable) {
  auto options = at_tau(2.0);
  options.criterion = ExtractCriterion::kProduct;
  const auto r = extract_directions(build_scaled_bottleneck_fixture(8, 4.0, 4), options);
  // Row norms on a diagonal scaling multiply to 1 at every step.
  EXPECT_TRUE(r.overflow.empty());
  EXPECT_TRUE(r.underflow.empty());
}

TEST(ExtractTest, LinearGrowthOnScaledFamily) {
  for (std::size_t n : {8, 16, 32}) {
    const auto r = extract_directions(build_scaled_bottleneck_fixture(n, 4.0, n / 2), at_tau(2.0));
    EXPECT_GE(r.overflow.size() + r.underflow.size(), n / 2);
    EXPECT_GE(2 * r.overflow.distinct_steps(), r.overflow.size());
  }
}

TEST(ExtendBasisTest, EmptySystemGivesStandardBasis) {
  const auto basis = extend_basis(DirectionSystem{}, 4);
  ASSERT_EQ(basis.gammas.size(), 4u);
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_DOUBLE_EQ(basis.gammas[j], 1.0);
    EXPECT_DOUBLE_EQ(basis.z_vectors[j](static_cast<Eigen::Index>(j)), 1.0);
  }
}

DirectionSystem single(const Vector& u) {
  DirectionSystem s;
  s.kind = DirectionKind::kUnderflow;
  s.vectors = {u};
  s.raw_rows = {u};
  s.steps = {1};
  s.coords = {0};
  s.magnitudes = {1.0};
  return s;
}

TEST(ExtendBasisTest, AxisVectorIsSkipped) {
  const auto basis = extend_basis(single(Vector::Unit(4, 0)), 4);
  EXPECT_DOUBLE_EQ(basis.z_vectors[1](1), 1.0);
  EXPECT_DOUBLE_EQ(basis.gammas[1], 1.0);
}

TEST(ExtendBasisTest, DiagonalVectorTieBreak) {
  Vector u(2);
  u << std::sqrt(0.5), std::sqrt(0.5);
  const auto basis = extend_basis(single(u), 2);
  EXPECT_DOUBLE_EQ(basis.z_vectors[1](0), 1.0);
  EXPECT_NEAR(basis.gammas[1], std::sqrt(0.5), 1e-15);
}

TEST(ExtendBasisTest, PigeonholeGuaranteeOnRandomSystems) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + uniform_index(rng, 14);
    const std::size_t k = uniform_index(rng, n + 1);
    const Matrix o = random_orthogonal(rng, n);
    DirectionSystem s;
    for (std::size_t j = 0; j < k; ++j) {
      s.vectors.push_back(o.col(static_cast<Eigen::Index>(j)));
      s.magnitudes.push_back(1.0);
    }
    const auto basis = extend_basis(s, n);
    for (std::size_t j = k; j < n; ++j) {
      EXPECT_GE(basis.gammas[j],
                std::sqrt(1.0 - static_cast<double>(j) / static_cast<double>(n)) - 1e-9);
    }
    DirectionSystem all;
    all.vectors = basis.u_vectors;
    EXPECT_LT(all.orthonormality_error(), 1e-8);
  }
}

TEST(VolumeTest, StandardStorageIsZero) {
  const auto basis = extend_basis(DirectionSystem{}, 4);
  const auto v = uncertainty_volume_log(basis, 1.0, 0);
  EXPECT_DOUBLE_EQ(v.sum_log_gamma, 0.0);
  const double want = 0.5 * (std::log2(0.75) + std::log2(0.5) + std::log2(0.25));
  EXPECT_NEAR(v.closed_form, want, 1e-14);
  EXPECT_LE(v.closed_form, v.sum_log_gamma);
}

// Values printed by tests/oracles/volume_oracle.py (dense numpy reference).
TEST(VolumeTest, InverseFixtureMatchesDenseReference) {
  const auto r = extract_directions(build_inverse_bottleneck_fixture(8, 4.0, 4), at_tau(2.0));
  const auto basis = extend_basis(r.underflow, 8);
  const std::vector<double> gammas{4, 4, 4, 4, 1, 1, 1, 1};
  ASSERT_EQ(basis.gammas.size(), gammas.size());
  for (std::size_t j = 0; j < gammas.size(); ++j) EXPECT_NEAR(basis.gammas[j], gammas[j], 1e-12);
  const auto v = uncertainty_volume_log(basis, 32.0, 4);
  EXPECT_NEAR(v.sum_log_gamma, 8.0, 1e-12);
  EXPECT_NEAR(v.closed_form, 4.292481250360578, 1e-12);
  EXPECT_GE(v.sum_log_gamma, v.closed_form);
}

TEST(VolumeTest, RejectsOversizedNPrime) {
  EXPECT_THROW(uncertainty_volume_log(extend_basis(DirectionSystem{}, 2), 1.0, 3),
               std::invalid_argument);
}

}  // namespace
}  // namespace fftlb
