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

#include "fftlb/builders.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fftlb/random.hpp"

namespace fftlb {
namespace {

void require_power_of_two(std::size_t n, std::size_t min_n, const char* what) {
  if (!is_power_of_two(n) || n < min_n) {
    throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) +
                                " must be a power of two >= " + std::to_string(min_n));
  }
}

void push_butterfly(std::vector<Gate>& gates, std::size_t i, std::size_t j) {
  gates.push_back(Gate::rotation(i, j, kPi / 4.0));
  gates.push_back(Gate::constant(j, -1.0));
}

// Rotation(pi/2) maps (x_i, x_j) to (x_j, -x_i); the reflection restores the sign.
void push_swap(std::vector<Gate>& gates, std::size_t i, std::size_t j) {
  gates.push_back(Gate::rotation(i, j, kPi / 2.0));
  gates.push_back(Gate::constant(j, -1.0));
}

std::size_t bit_reverse(std::size_t v, unsigned bits) {
  std::size_t r = 0;
  for (unsigned b = 0; b < bits; ++b) {
    r = (r << 1) | ((v >> b) & 1U);
  }
  return r;
}

void check_fixture_args(std::size_t n, double c, std::size_t k) {
  require_power_of_two(n, 2, "bottleneck fixture");
  if (!(c > 1.0) || !std::isfinite(c)) throw std::invalid_argument("fixture scale c must be > 1");
  if (k < 1 || k > n) throw std::invalid_argument("fixture row count k must lie in [1, n]");
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

LinearAlgorithm build_wht(std::size_t n) {
  require_power_of_two(n, 2, "build_wht");
  std::vector<Gate> gates;
  gates.reserve(n * static_cast<std::size_t>(std::countr_zero(n)));
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      for (std::size_t i = base; i < base + h; ++i) push_butterfly(gates, i, i + h);
    }
  }
  return LinearAlgorithm(n, std::move(gates), "wht:" + std::to_string(n));
}

LinearAlgorithm build_dft_real(std::size_t n) {
  require_power_of_two(n, 4, "build_dft_real");
  const std::size_t points = n / 2;
  const auto bits = static_cast<unsigned>(std::countr_zero(points));
  const auto re = [](std::size_t p) { return 2 * p; };
  const auto im = [](std::size_t p) { return 2 * p + 1; };

  std::vector<Gate> gates;
  for (std::size_t p = 0; p < points; ++p) {
    const std::size_t q = bit_reverse(p, bits);
    if (p < q) {
      push_swap(gates, re(p), re(q));
      push_swap(gates, im(p), im(q));
    }
  }
  for (std::size_t span = 2; span <= points; span *= 2) {
    const std::size_t half = span / 2;
    for (std::size_t base = 0; base < points; base += span) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::size_t top = base + k;
        const std::size_t bottom = top + half;
        if (k != 0) {
          // Multiplying by exp(i phi), phi = -2 pi k / span, is a rotation of
          // (Re, Im) by theta = -phi in the gate's sign convention.
          const double phi = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(span);
          gates.push_back(Gate::rotation(re(bottom), im(bottom), -phi));
        }
        push_butterfly(gates, re(top), re(bottom));
        push_butterfly(gates, im(top), im(bottom));
      }
    }
  }
  return LinearAlgorithm(n, std::move(gates), "dft:" + std::to_string(n));
}

LinearAlgorithm build_random(std::size_t n, std::size_t m, std::uint64_t seed, bool angle_only) {
  if (n < 2) throw std::invalid_argument("build_random: n must be at least 2");
  if (m < 1) throw std::invalid_argument("build_random: m must be at least 1");
  Rng rng(seed);
  std::vector<Gate> gates;
  gates.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    if (!angle_only && uniform01(rng) < 0.25) {
      const std::size_t i = uniform_index(rng, n);
      const double magnitude = std::exp2(-3.0 + 6.0 * uniform01(rng));
      const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
      gates.push_back(Gate::constant(i, sign * magnitude));
    } else {
      const std::size_t i = uniform_index(rng, n);
      std::size_t j = uniform_index(rng, n - 1);
      if (j >= i) ++j;
      gates.push_back(Gate::rotation(i, j, 2.0 * kPi * uniform01(rng)));
    }
  }
  std::ostringstream label;
  label << "random:" << n << ":" << m << ":" << seed << (angle_only ? ":angles" : "");
  return LinearAlgorithm(n, std::move(gates), label.str());
}

LinearAlgorithm build_scaled_bottleneck_fixture(std::size_t n, double c, std::size_t k) {
  check_fixture_args(n, c, k);
  std::vector<Gate> gates;
  for (std::size_t i = 0; i < k; ++i) gates.push_back(Gate::constant(i, c));
  for (std::size_t i = 0; i < k; ++i) gates.push_back(Gate::constant(i, 1.0 / c));
  const auto wht = build_wht(n);
  gates.insert(gates.end(), wht.gates().begin(), wht.gates().end());
  std::ostringstream label;
  label << "scaled:" << n << ":" << c << ":" << k;
  return LinearAlgorithm(n, std::move(gates), label.str());
}

LinearAlgorithm build_inverse_bottleneck_fixture(std::size_t n, double c, std::size_t k) {
  check_fixture_args(n, c, k);
  std::vector<Gate> gates;
  for (std::size_t i = 0; i < k; ++i) gates.push_back(Gate::constant(i, 1.0 / c));
  for (std::size_t i = 0; i < k; ++i) gates.push_back(Gate::constant(i, c));
  const auto wht = build_wht(n);
  gates.insert(gates.end(), wht.gates().begin(), wht.gates().end());
  std::ostringstream label;
  label << "inverse:" << n << ":" << c << ":" << k;
  return LinearAlgorithm(n, std::move(gates), label.str());
}

LinearAlgorithm build_fixture(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::kWht:
      return build_wht(spec.n);
    case FixtureKind::kDftReal:
      return build_dft_real(spec.n);
    case FixtureKind::kRandom:
      return build_random(spec.n, spec.gate_budget, spec.seed, spec.angle_only);
    case FixtureKind::kScaledBottleneck:
      return build_scaled_bottleneck_fixture(spec.n, spec.scale, spec.rows);
    case FixtureKind::kInverseBottleneck:
      return build_inverse_bottleneck_fixture(spec.n, spec.scale, spec.rows);
  }
  throw std::invalid_argument("unknown fixture kind");
}

FixtureSpec parse_fixture_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  const auto bad = [&]() {
    return std::invalid_argument("bad builder spec '" + text +
                                 "' (expected wht:N, dft:N, random:N:M:SEED[:angles], "
                                 "scaled:N:C:K or inverse:N:C:K)");
  };
  if (parts.empty()) throw bad();
  const auto to_size = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad();
    return static_cast<std::size_t>(std::stoull(s));
  };
  const auto to_real = [&](const std::string& s) -> double {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw bad();
      return v;
    } catch (const std::logic_error&) {
      throw bad();
    }
  };

  FixtureSpec spec;
  const std::string& kind = parts[0];
  if ((kind == "wht" || kind == "dft") && parts.size() == 2) {
    spec.kind = kind == "wht" ? FixtureKind::kWht : FixtureKind::kDftReal;
    spec.n = to_size(parts[1]);
  } else if (kind == "random" && (parts.size() == 4 || parts.size() == 5)) {
    spec.kind = FixtureKind::kRandom;
    spec.n = to_size(parts[1]);
    spec.gate_budget = to_size(parts[2]);
    spec.seed = to_size(parts[3]);
    if (parts.size() == 5) {
      if (parts[4] != "angles") throw bad();
      spec.angle_only = true;
    }
  } else if ((kind == "scaled" || kind == "inverse") && parts.size() == 4) {
    spec.kind = kind == "scaled" ? FixtureKind::kScaledBottleneck : FixtureKind::kInverseBottleneck;
    spec.n = to_size(parts[1]);
    spec.scale = to_real(parts[2]);
    spec.rows = to_size(parts[3]);
  } else {
    throw bad();
  }
  return spec;
}

Matrix walsh_hadamard_matrix(std::size_t n) {
  require_power_of_two(n, 2, "walsh_hadamard_matrix");
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          (std::popcount(k & l) % 2 == 0) ? s : -s;
    }
  }
  return f;
}

Matrix dft_real_matrix(std::size_t n) {
  require_power_of_two(n, 4, "dft_real_matrix");
  const std::size_t points = n / 2;
  const double s = 1.0 / std::sqrt(static_cast<double>(points));
  Matrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < points; ++k) {
    for (std::size_t l = 0; l < points; ++l) {
      const double angle = -2.0 * kPi * static_cast<double>((k * l) % points) /
                           static_cast<double>(points);
      const double c = s * std::cos(angle);
      const double d = s * std::sin(angle);
      const auto r = static_cast<Eigen::Index>(2 * k);
      const auto q = static_cast<Eigen::Index>(2 * l);
      f(r, q) = c;
      f(r, q + 1) = -d;
      f(r + 1, q) = d;
      f(r + 1, q + 1) = c;
    }
  }
  return f;
}

}  // namespace fftlb
