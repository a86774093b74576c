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
#include <span>
#include <utility>
#include <vector>

#include "fftlb/directions.hpp"
#include "fftlb/gate.hpp"
#include "fftlb/types.hpp"

namespace fftlb {

/// Nearest multiple of eps, ties to even.
double quantize(double v, double eps);

/// log2(1 + |v| / eps) + 1: magnitude bits plus a sign bit.
double word_bits(double v, double eps);

/// Replays the first upto_t gates on x, rounding the input and every written
/// coordinate to a multiple of eps.
Vector quantized_replay(const LinearAlgorithm& algorithm, std::span<const double> x, double eps,
                        std::size_t upto_t);

struct SimulationConfig {
  double epsilon = 0x1p-10;
  double sigma = 1.0;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double word_budget = 32.0;
  std::size_t threads = 1;
};

/// Statistics of one machine word between two writes. The value of
/// coordinate i is constant from step t until its next write.
struct WriteStats {
  std::size_t t = 0;
  double mean_bits = 0.0;
  double max_abs = 0.0;
};

/// Per-(t, i) statistics of a quantized replay. Storage is per write event
/// (n + sum of touched rows entries); lookups forward-fill.
class QuantizedRunStats {
 public:
  QuantizedRunStats() = default;
  QuantizedRunStats(SimulationConfig config, std::size_t n, std::size_t m,
                    std::vector<std::vector<WriteStats>> history);

  const SimulationConfig& config() const { return config_; }
  std::size_t dimension() const { return history_.size(); }
  std::size_t gate_count() const { return m_; }

  double mean_bits(std::size_t t, std::size_t i) const;
  double max_abs(std::size_t t, std::size_t i) const;
  bool overflow(std::size_t t, std::size_t i) const;

  /// Write events of coordinate i in increasing t; the first is at t = 0.
  const std::vector<WriteStats>& history(std::size_t i) const { return history_.at(i); }

  double max_mean_bits() const;
  double min_mean_bits() const;
  double input_mean_bits() const;
  std::size_t overflow_cell_count() const;
  /// All overflowing (t, i) cells in increasing (t, i) order.
  std::vector<std::pair<std::size_t, std::size_t>> overflow_cells() const;

 private:
  const WriteStats& at(std::size_t t, std::size_t i) const;

  SimulationConfig config_;
  std::size_t m_ = 0;
  std::vector<std::vector<WriteStats>> history_;
};

/// Monte-Carlo quantized replay over x ~ N(0, sigma^2 Id). Sample s draws
/// from an engine seeded with mix_seed(seed, s); bit sums are accumulated in
/// 2^-32 fixed point so results do not depend on the thread count. Throws
/// std::invalid_argument unless epsilon > 0, sigma > 0 and samples >= 1.
QuantizedRunStats simulate(const LinearAlgorithm& algorithm, const SimulationConfig& config);

struct UnderflowReport {
  double epsilon = 0.0;
  double tau = 0.0;
  /// Extracted underflow directions followed by standard-basis extensions.
  std::vector<Vector> directions;
  std::vector<std::size_t> steps;
  std::vector<std::size_t> coords;
  std::size_t extracted = 0;
  /// eps * gamma_j.
  std::vector<double> widths;
  /// eps * |z_j|.
  std::vector<double> raw_widths;
  std::vector<double> gammas;
  VolumeBound volume;
};

UnderflowReport underflow_widths(const LinearAlgorithm& algorithm, double epsilon, double tau);

enum class CheckStatus { kAgrees, kDisagrees, kInconclusive };

const char* to_string(CheckStatus status);

struct UncertaintyCheck {
  double predicted_width = 0.0;
  double measured_width = 0.0;
  std::size_t bins_used = 0;
  std::size_t samples = 0;
  CheckStatus status = CheckStatus::kInconclusive;
  double ratio() const { return measured_width / predicted_width; }
};

struct UncertaintyCheckOptions {
  std::size_t samples = 8000;
  std::uint64_t seed = 0;
  std::size_t groups = 4;
  /// Sampling window for g, in units of the predicted width.
  double window_widths = 8.0;
  std::size_t min_bin_samples = 30;
};

/// Estimates how precisely g = z^T x is determined by the quantized word at
/// (t, i). For each group the component of x orthogonal to z is drawn once
/// and fixed; g is drawn uniformly on a window around 0 and samples are
/// binned by the word value. The width of a bin is estimated from its range
/// as range (N + 1) / (N - 1); interior bins with at least min_bin_samples
/// samples are averaged. The prediction is eps / |row_i(M^(t)) z|. Agreement
/// means the two are within a factor of 2.
UncertaintyCheck empirical_uncertainty_check(const LinearAlgorithm& algorithm, double epsilon,
                                             const Vector& z, std::size_t t, std::size_t i,
                                             const UncertaintyCheckOptions& options);

}  // namespace fftlb
