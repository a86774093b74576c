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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dense_oracle.hpp"
#include "fftlb/builders.hpp"
#include "fftlb/gate.hpp"
#include "fftlb/trajectory.hpp"

namespace fftlb {
namespace {

using testing::dense_product;

TEST(GateTest, FactoriesRejectDegenerateGates) {
  EXPECT_THROW(Gate::rotation(1, 1, 0.3), std::invalid_argument);
  EXPECT_THROW(Gate::rotation(0, 1, std::nan("")), std::invalid_argument);
  EXPECT_THROW(Gate::constant(0, 0.0), std::invalid_argument);
  EXPECT_THROW(Gate::constant(0, INFINITY), std::invalid_argument);
}

TEST(GateTest, TouchedRowsAndReflection) {
  const auto r = Gate::rotation(3, 1, 0.5);
  EXPECT_EQ(r.touched().size(), 2u);
  EXPECT_EQ(r.touched().first(), 3u);
  EXPECT_EQ(r.touched().second(), 1u);
  EXPECT_EQ(r.max_index(), 3u);
  const auto c = Gate::constant(2, -1.0);
  EXPECT_TRUE(c.is_reflection());
  EXPECT_EQ(c.touched().size(), 1u);
  EXPECT_EQ(c.touched().second(), 2u);
  EXPECT_FALSE(Gate::constant(2, 2.0).is_reflection());
}

TEST(LinearAlgorithmTest, RejectsOutOfRangeIndices) {
  EXPECT_THROW(LinearAlgorithm(1, {}), std::invalid_argument);
  EXPECT_THROW(LinearAlgorithm(2, {Gate::rotation(0, 2, 0.1)}), std::invalid_argument);
  EXPECT_NO_THROW(LinearAlgorithm(3, {Gate::rotation(0, 2, 0.1)}));
}

TEST(LinearAlgorithmTest, SpeedupFactor) {
  const auto w = build_wht(8);
  EXPECT_DOUBLE_EQ(speedup_factor(w), 1.0);
  EXPECT_THROW(speedup_factor(LinearAlgorithm(4, {})), std::invalid_argument);
}

TEST(TrajectoryTest, MatchesDenseGateProducts) {
  const auto a = build_random(6, 40, 11, false);
  TrajectoryState s(6);
  for (std::size_t t = 1; t <= a.gate_count(); ++t) {
    s.apply(a.gates()[t - 1]);
    const Matrix m = dense_product(a, t);
    const Matrix minv_t = m.inverse().transpose();
    EXPECT_LT((s.m() - m).cwiseAbs().maxCoeff(), 1e-9) << "t=" << t;
    EXPECT_LT((s.minv_t() - minv_t).cwiseAbs().maxCoeff(), 1e-9 * minv_t.cwiseAbs().maxCoeff())
        << "t=" << t;
  }
  EXPECT_LT(s.inverse_residual(), 1e-9);
}

TEST(TrajectoryTest, ConstantScalesInverseRowByReciprocal) {
  TrajectoryState s(3);
  s.apply(Gate::constant(1, 4.0));
  EXPECT_DOUBLE_EQ(s.m()(1, 1), 4.0);
  EXPECT_DOUBLE_EQ(s.minv_t()(1, 1), 0.25);
  EXPECT_EQ(s.step(), 1u);
  EXPECT_TRUE(s.touched().contains(1));
}

TEST(TrajectoryTest, ApplyToVectorAgreesWithMatrix) {
  const auto a = build_random(5, 30, 3, false);
  const std::vector<double> x{0.3, -1.2, 2.0, 0.7, -0.1};
  const Vector got = apply_to_vector(a, x, 17);
  const Vector want = dense_product(a, 17) * Eigen::Map<const Vector>(x.data(), 5);
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(apply_to_vector(a, std::vector<double>(4), 1), std::invalid_argument);
  EXPECT_THROW(apply_to_vector(a, x, 31), std::out_of_range);
}

TEST(TrajectoryTest, ReplayVisitsEveryStep) {
  const auto a = build_wht(4);
  std::vector<std::size_t> steps;
  replay(a, [&](const TrajectoryState& s) { steps.push_back(s.step()); });
  ASSERT_EQ(steps.size(), a.gate_count() + 1);
  for (std::size_t t = 0; t < steps.size(); ++t) EXPECT_EQ(steps[t], t);
}

TEST(ValidateTest, ConditionNumbersOfScaledFixture) {
  const auto a = build_scaled_bottleneck_fixture(8, 4.0, 4);
  const auto report = validate(a);
  EXPECT_FALSE(report.unstable);
  EXPECT_LT(report.max_residual, 1e-12);
  ASSERT_EQ(report.condition_numbers.size(), a.gate_count() + 1);
  EXPECT_NEAR(report.condition_numbers[0], 1.0, 1e-12);
  EXPECT_NEAR(report.condition_numbers[4], 4.0, 1e-12);
  EXPECT_NEAR(report.max_condition_number(), 4.0, 1e-12);
  EXPECT_NEAR(report.condition_numbers.back(), 1.0, 1e-9);
}

TEST(ValidateTest, ConditionNumberOfSingularMatrixIsInfinite) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  EXPECT_TRUE(std::isinf(condition_number(a)));
}

}  // namespace
}  // namespace fftlb
