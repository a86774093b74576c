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

#include <cstdio>
#include <filesystem>
#include <string>

#include "fftlb/algorithm_io.hpp"
#include "fftlb/builders.hpp"

namespace fftlb {
namespace {

TEST(AlgorithmIoTest, RoundTripIsExact) {
  for (const auto& a : {build_wht(8), build_dft_real(16), build_random(7, 50, 9, false),
                        build_scaled_bottleneck_fixture(8, 4.0, 3)}) {
    const auto text = render_algorithm(a);
    EXPECT_EQ(parse_algorithm(text), a) << a.label();
  }
}

TEST(AlgorithmIoTest, ParsesCommentsAndBlankLines) {
  const auto a = parse_algorithm(
      "# a comment\n"
      "n 3 m 2\n"
      "# label: demo\n"
      "\n"
      "R 0 2 0.5\n"
      "C 1 -1\n");
  EXPECT_EQ(a.dimension(), 3u);
  EXPECT_EQ(a.label(), "demo");
  ASSERT_EQ(a.gate_count(), 2u);
  EXPECT_DOUBLE_EQ(a.gate(0).as_rotation().theta, 0.5);
  EXPECT_TRUE(a.gate(1).is_reflection());
}

std::size_t error_line(const std::string& text) {
  try {
    parse_algorithm(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(AlgorithmIoTest, ReportsLineNumbers) {
  EXPECT_EQ(error_line("n 3 m 1\nR 0 3 0.1\n"), 2u);
  EXPECT_EQ(error_line("n 3 m 2\nR 0 1 0.1\nX 1\n"), 3u);
  EXPECT_EQ(error_line("n 3 m 1\nC 0 0\n"), 2u);
  EXPECT_EQ(error_line("n 3 m 1\nR 0 1 abc\n"), 2u);
  EXPECT_EQ(error_line("m 3\n"), 1u);
  EXPECT_GT(error_line("n 3 m 2\nR 0 1 0.1\n"), 0u);
  EXPECT_EQ(error_line("n 3 m 1\nR 0 1 0.1\nR 0 1 0.1\n"), 3u);
}

TEST(AlgorithmIoTest, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "fftlb_io_test.alg";
  const auto a = build_dft_real(8);
  save_algorithm(a, path.string());
  EXPECT_EQ(load_algorithm(path.string()), a);
  std::filesystem::remove(path);
  EXPECT_THROW(load_algorithm(path.string()), std::runtime_error);
}

}  // namespace
}  // namespace fftlb
