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
#include <complex>
#include <stdexcept>

#include "fftlb/builders.hpp"
#include "fftlb/trajectory.hpp"

namespace fftlb {
namespace {

// Sylvester recursion H_{2k} = [[H_k, H_k], [H_k, -H_k]] / sqrt2.
Matrix sylvester(std::size_t n) {
  Matrix h = Matrix::Ones(1, 1);
  while (static_cast<std::size_t>(h.rows()) < n) {
    const auto k = h.rows();
    Matrix next(2 * k, 2 * k);
    next << h, h, h, -h;
    h = next / std::sqrt(2.0);
  }
  return h;
}

// Real embedding of the unitary DFT computed from std::complex arithmetic.
Matrix complex_dft_embedding(std::size_t n) {
  const std::size_t points = n / 2;
  Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < points; ++k) {
    for (std::size_t l = 0; l < points; ++l) {
      const double angle = -2.0 * kPi * static_cast<double>(k * l % points) /
                           static_cast<double>(points);
      const std::complex<double> w = std::polar(1.0 / std::sqrt(static_cast<double>(points)), angle);
      const auto r = static_cast<Eigen::Index>(2 * k);
      const auto c = static_cast<Eigen::Index>(2 * l);
      out(r, c) = w.real();
      out(r, c + 1) = -w.imag();
      out(r + 1, c) = w.imag();
      out(r + 1, c + 1) = w.real();
    }
  }
  return out;
}

class WhtSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(WhtSizes, FinalMatrixIsSylvesterHadamard) {
  const std::size_t n = GetParam();
  const auto a = build_wht(n);
  EXPECT_EQ(a.gate_count(), n * static_cast<std::size_t>(std::log2(n)));
  EXPECT_LT((final_matrix(a) - sylvester(n)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((walsh_hadamard_matrix(n) - sylvester(n)).cwiseAbs().maxCoeff(), 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Builders, WhtSizes, ::testing::Values(2, 4, 8, 16, 32, 64));

class DftSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(DftSizes, FinalMatrixIsRealEmbeddedDft) {
  const std::size_t n = GetParam();
  const Matrix want = complex_dft_embedding(n);
  EXPECT_LT((final_matrix(build_dft_real(n)) - want).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((dft_real_matrix(n) - want).cwiseAbs().maxCoeff(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Builders, DftSizes, ::testing::Values(4, 8, 16, 32, 64));

TEST(BuildersTest, RejectsBadSizes) {
  EXPECT_THROW(build_wht(6), std::invalid_argument);
  EXPECT_THROW(build_wht(1), std::invalid_argument);
  EXPECT_THROW(build_dft_real(2), std::invalid_argument);
  EXPECT_THROW(build_scaled_bottleneck_fixture(8, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(build_scaled_bottleneck_fixture(8, 4.0, 9), std::invalid_argument);
  EXPECT_THROW(build_inverse_bottleneck_fixture(8, 4.0, 0), std::invalid_argument);
}

TEST(BuildersTest, RandomIsDeterministicAndSeedSensitive) {
  EXPECT_EQ(build_random(8, 60, 5, false), build_random(8, 60, 5, false));
  EXPECT_NE(build_random(8, 60, 5, false), build_random(8, 60, 6, false));
  const auto angles = build_random(8, 60, 5, true);
  EXPECT_EQ(angles.rotation_count(), 60u);
}

TEST(BuildersTest, FixturesEndAtWalshHadamard) {
  for (std::size_t n : {8, 16}) {
    const Matrix f = walsh_hadamard_matrix(n);
    EXPECT_LT((final_matrix(build_scaled_bottleneck_fixture(n, 4.0, n / 2)) - f).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_LT((final_matrix(build_inverse_bottleneck_fixture(n, 4.0, n / 2)) - f).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(BuildersTest, ScaledFixtureIntermediateIsDiagonal) {
  const auto pair = matrices_at(build_scaled_bottleneck_fixture(8, 4.0, 4), 4);
  for (Eigen::Index i = 0; i < 8; ++i) {
    EXPECT_DOUBLE_EQ(pair.m(i, i), i < 4 ? 4.0 : 1.0);
    EXPECT_DOUBLE_EQ(pair.minv_t(i, i), i < 4 ? 0.25 : 1.0);
  }
}

TEST(BuildersTest, ParseFixtureSpec) {
  EXPECT_EQ(build_fixture(parse_fixture_spec("wht:8")), build_wht(8));
  EXPECT_EQ(build_fixture(parse_fixture_spec("dft:16")), build_dft_real(16));
  EXPECT_EQ(build_fixture(parse_fixture_spec("random:6:20:3")), build_random(6, 20, 3, false));
  EXPECT_EQ(build_fixture(parse_fixture_spec("random:6:20:3:angles")), build_random(6, 20, 3, true));
  EXPECT_EQ(build_fixture(parse_fixture_spec("scaled:8:4:4")),
            build_scaled_bottleneck_fixture(8, 4.0, 4));
  EXPECT_EQ(build_fixture(parse_fixture_spec("inverse:8:4:4")),
            build_inverse_bottleneck_fixture(8, 4.0, 4));
  EXPECT_THROW(parse_fixture_spec("fft:8"), std::invalid_argument);
  EXPECT_THROW(parse_fixture_spec("wht"), std::invalid_argument);
  EXPECT_THROW(parse_fixture_spec("wht:x"), std::invalid_argument);
}

}  // namespace
}  // namespace fftlb
