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

#include "fftlb/quantized.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include "fftlb/random.hpp"
#include "fftlb/trajectory.hpp"

namespace fftlb {
namespace {

// Bit counts are summed as integers in units of 2^-24. A word never needs more
// than ~1100 bits, so 2^27 samples stay clear of int64 overflow.
constexpr double kFixedScale = 0x1p24;
constexpr std::size_t kMaxSamples = std::size_t{1} << 27;

struct EventLayout {
  // offset[i] is the flat index of coordinate i's t = 0 event.
  std::vector<std::size_t> offset;
  // Flat event index written by gate k for its first and second touched row.
  std::vector<std::size_t> slot_first;
  std::vector<std::size_t> slot_second;
  std::vector<std::size_t> event_time;
  std::size_t size = 0;
};

EventLayout make_layout(const LinearAlgorithm& algorithm) {
  const std::size_t n = algorithm.dimension();
  std::vector<std::vector<std::size_t>> times(n, std::vector<std::size_t>{0});
  for (std::size_t k = 0; k < algorithm.gate_count(); ++k) {
    for (std::size_t r : algorithm.gates()[k].touched()) times[r].push_back(k + 1);
  }
  EventLayout layout;
  layout.offset.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    layout.offset[i] = layout.size;
    layout.size += times[i].size();
    layout.event_time.insert(layout.event_time.end(), times[i].begin(), times[i].end());
  }
  std::vector<std::size_t> cursor = layout.offset;
  layout.slot_first.resize(algorithm.gate_count());
  layout.slot_second.resize(algorithm.gate_count());
  for (std::size_t k = 0; k < algorithm.gate_count(); ++k) {
    const auto touched = algorithm.gates()[k].touched();
    layout.slot_first[k] = ++cursor[touched.first()];
    layout.slot_second[k] =
        touched.size() == 2 ? ++cursor[touched.second()] : layout.slot_first[k];
  }
  return layout;
}

struct Accumulator {
  std::vector<std::int64_t> bits;
  std::vector<double> max_abs;

  explicit Accumulator(std::size_t size) : bits(size, 0), max_abs(size, 0.0) {}

  void record(std::size_t slot, double v, double eps) {
    if (!std::isfinite(v)) throw std::runtime_error("quantized state is not finite");
    bits[slot] += std::llround(word_bits(v, eps) * kFixedScale);
    max_abs[slot] = std::max(max_abs[slot], std::abs(v));
  }

  void merge(const Accumulator& other) {
    for (std::size_t k = 0; k < bits.size(); ++k) {
      bits[k] += other.bits[k];
      max_abs[k] = std::max(max_abs[k], other.max_abs[k]);
    }
  }
};

void run_samples(const LinearAlgorithm& algorithm, const std::vector<CompiledGate>& gates,
                 const EventLayout& layout, const SimulationConfig& config, std::size_t begin,
                 std::size_t end, Accumulator& acc) {
  const std::size_t n = algorithm.dimension();
  const double eps = config.epsilon;
  std::vector<double> x(n);
  for (std::size_t s = begin; s < end; ++s) {
    Rng rng(mix_seed(config.seed, s));
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = quantize(config.sigma * standard_normal(rng), eps);
      acc.record(layout.offset[i], x[i], eps);
    }
    for (std::size_t k = 0; k < gates.size(); ++k) {
      const CompiledGate& g = gates[k];
      g.apply(x);
      x[g.i] = quantize(x[g.i], eps);
      acc.record(layout.slot_first[k], x[g.i], eps);
      if (g.rotation) {
        x[g.j] = quantize(x[g.j], eps);
        acc.record(layout.slot_second[k], x[g.j], eps);
      }
    }
  }
}

}  // namespace

double quantize(double v, double eps) { return std::nearbyint(v / eps) * eps; }

double word_bits(double v, double eps) { return std::log2(1.0 + std::abs(v) / eps) + 1.0; }

Vector quantized_replay(const LinearAlgorithm& algorithm, std::span<const double> x, double eps,
                        std::size_t upto_t) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (x.size() != algorithm.dimension()) throw std::invalid_argument("input length mismatch");
  if (upto_t > algorithm.gate_count()) throw std::out_of_range("step exceeds gate count");
  Vector state(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) state(static_cast<Eigen::Index>(i)) = quantize(x[i], eps);
  std::span<double> view(state.data(), x.size());
  for (std::size_t k = 0; k < upto_t; ++k) {
    const auto g = CompiledGate::from(algorithm.gates()[k]);
    g.apply(view);
    view[g.i] = quantize(view[g.i], eps);
    if (g.rotation) view[g.j] = quantize(view[g.j], eps);
  }
  return state;
}

QuantizedRunStats::QuantizedRunStats(SimulationConfig config, std::size_t n, std::size_t m,
                                     std::vector<std::vector<WriteStats>> history)
    : config_(config), m_(m), history_(std::move(history)) {
  if (history_.size() != n) throw std::invalid_argument("history size must equal n");
}

const WriteStats& QuantizedRunStats::at(std::size_t t, std::size_t i) const {
  if (i >= history_.size() || t > m_) throw std::out_of_range("(t, i) outside the trajectory");
  const auto& h = history_[i];
  auto it = std::upper_bound(h.begin(), h.end(), t,
                             [](std::size_t value, const WriteStats& w) { return value < w.t; });
  return *std::prev(it);
}

double QuantizedRunStats::mean_bits(std::size_t t, std::size_t i) const {
  return at(t, i).mean_bits;
}

double QuantizedRunStats::max_abs(std::size_t t, std::size_t i) const { return at(t, i).max_abs; }

bool QuantizedRunStats::overflow(std::size_t t, std::size_t i) const {
  return mean_bits(t, i) > config_.word_budget;
}

double QuantizedRunStats::max_mean_bits() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& h : history_) {
    for (const auto& w : h) best = std::max(best, w.mean_bits);
  }
  return best;
}

double QuantizedRunStats::min_mean_bits() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : history_) {
    for (const auto& w : h) best = std::min(best, w.mean_bits);
  }
  return best;
}

double QuantizedRunStats::input_mean_bits() const {
  double total = 0.0;
  for (const auto& h : history_) total += h.front().mean_bits;
  return total / static_cast<double>(history_.size());
}

std::size_t QuantizedRunStats::overflow_cell_count() const {
  std::size_t count = 0;
  for (const auto& h : history_) {
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k].mean_bits <= config_.word_budget) continue;
      const std::size_t until = k + 1 < h.size() ? h[k + 1].t : m_ + 1;
      count += until - h[k].t;
    }
  }
  return count;
}

std::vector<std::pair<std::size_t, std::size_t>> QuantizedRunStats::overflow_cells() const {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < history_.size(); ++i) {
    const auto& h = history_[i];
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k].mean_bits <= config_.word_budget) continue;
      const std::size_t until = k + 1 < h.size() ? h[k + 1].t : m_ + 1;
      for (std::size_t t = h[k].t; t < until; ++t) cells.emplace_back(t, i);
    }
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

QuantizedRunStats simulate(const LinearAlgorithm& algorithm, const SimulationConfig& config) {
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    throw std::invalid_argument("epsilon must be a finite value > 0");
  }
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    throw std::invalid_argument("sigma must be a finite value > 0");
  }
  if (config.samples < 1 || config.samples > kMaxSamples) {
    throw std::invalid_argument("samples must lie in [1, 2^27]");
  }
  const auto gates = compile(algorithm);
  const auto layout = make_layout(algorithm);
  const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, config.samples);

  Accumulator total(layout.size);
  if (threads == 1) {
    run_samples(algorithm, gates, layout, config, 0, config.samples, total);
  } else {
    std::vector<Accumulator> parts(threads, Accumulator(layout.size));
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      const std::size_t begin = config.samples * w / threads;
      const std::size_t end = config.samples * (w + 1) / threads;
      pool.emplace_back([&, w, begin, end] {
        try {
          run_samples(algorithm, gates, layout, config, begin, end, parts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const auto& part : parts) total.merge(part);
  }

  const std::size_t n = algorithm.dimension();
  const double denom = kFixedScale * static_cast<double>(config.samples);
  std::vector<std::vector<WriteStats>> history(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t end = i + 1 < n ? layout.offset[i + 1] : layout.size;
    for (std::size_t k = layout.offset[i]; k < end; ++k) {
      history[i].push_back(
          {layout.event_time[k], static_cast<double>(total.bits[k]) / denom, total.max_abs[k]});
    }
  }
  return QuantizedRunStats(config, n, algorithm.gate_count(), std::move(history));
}

UnderflowReport underflow_widths(const LinearAlgorithm& algorithm, double epsilon, double tau) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  ExtractOptions options;
  options.tau = tau;
  const auto extraction = extract_directions(algorithm, options);
  const std::size_t n = algorithm.dimension();
  const auto basis = extend_basis(extraction.underflow, n);

  UnderflowReport report;
  report.epsilon = epsilon;
  report.tau = tau;
  report.extracted = basis.extracted;
  report.directions = basis.u_vectors;
  report.gammas = basis.gammas;
  report.steps = extraction.underflow.steps;
  report.coords = extraction.underflow.coords;
  for (std::size_t j = 0; j < n; ++j) {
    report.widths.push_back(epsilon * basis.gammas[j]);
    report.raw_widths.push_back(epsilon * basis.z_vectors[j].norm());
  }
  report.volume = uncertainty_volume_log(basis, speedup_factor(algorithm), basis.extracted);
  return report;
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kAgrees:
      return "agrees";
    case CheckStatus::kDisagrees:
      return "disagrees";
    case CheckStatus::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

UncertaintyCheck empirical_uncertainty_check(const LinearAlgorithm& algorithm, double epsilon,
                                             const Vector& z, std::size_t t, std::size_t i,
                                             const UncertaintyCheckOptions& options) {
  const std::size_t n = algorithm.dimension();
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (static_cast<std::size_t>(z.size()) != n) throw std::invalid_argument("direction length mismatch");
  if (std::abs(z.norm() - 1.0) > 1e-9) throw std::invalid_argument("direction must be unit norm");
  if (i >= n) throw std::out_of_range("coordinate out of range");
  if (options.groups < 1) throw std::invalid_argument("groups must be >= 1");

  UncertaintyCheck check;
  check.samples = options.samples;
  const Vector row = matrices_at(algorithm, t).m.row(static_cast<Eigen::Index>(i)).transpose();
  const double d = std::abs(row.dot(z));
  if (d < 1e-12) {
    check.predicted_width = std::numeric_limits<double>::infinity();
    return check;
  }
  check.predicted_width = epsilon / d;
  const double half_window = 0.5 * options.window_widths * check.predicted_width;

  double width_sum = 0.0;
  const std::size_t per_group = options.samples / options.groups;
  for (std::size_t group = 0; group < options.groups; ++group) {
    Rng rng(mix_seed(options.seed, group));
    Vector perp(static_cast<Eigen::Index>(n));
    for (Eigen::Index k = 0; k < perp.size(); ++k) perp(k) = standard_normal(rng);
    perp -= perp.dot(z) * z;

    std::map<long long, std::vector<double>> bins;
    for (std::size_t s = 0; s < per_group; ++s) {
      const double g = (2.0 * uniform01(rng) - 1.0) * half_window;
      const Vector x = g * z + perp;
      const Vector state = quantized_replay(algorithm, {x.data(), n}, epsilon, t);
      bins[std::llround(state(static_cast<Eigen::Index>(i)) / epsilon)].push_back(g);
    }
    if (bins.size() < 3) continue;
    // The first and last bins are cut by the sampling window.
    auto last = std::prev(bins.end());
    for (auto it = std::next(bins.begin()); it != last; ++it) {
      const auto& values = it->second;
      const std::size_t count = values.size();
      if (count < options.min_bin_samples) continue;
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      width_sum += (*hi - *lo) * static_cast<double>(count + 1) / static_cast<double>(count - 1);
      ++check.bins_used;
    }
  }
  if (check.bins_used == 0) return check;
  check.measured_width = width_sum / static_cast<double>(check.bins_used);
  const double ratio = check.ratio();
  check.status = ratio >= 0.5 && ratio <= 2.0 ? CheckStatus::kAgrees : CheckStatus::kDisagrees;
  return check;
}

}  // namespace fftlb
