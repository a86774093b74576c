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

#include "fftlb/gate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fftlb {

Gate Gate::rotation(std::size_t i, std::size_t j, double theta) {
  if (i == j) {
    throw std::invalid_argument("rotation gate needs two distinct coordinates, got i = j = " +
                                std::to_string(i));
  }
  if (!std::isfinite(theta)) throw std::invalid_argument("rotation angle must be finite");
  return Gate(Rotation{i, j, theta});
}

Gate Gate::constant(std::size_t i, double c) {
  if (c == 0.0 || !std::isfinite(c)) {
    throw std::invalid_argument("constant gate needs a finite nonzero scalar");
  }
  return Gate(Constant{i, c});
}

bool Gate::is_reflection() const { return is_constant() && as_constant().c == -1.0; }

TouchedRows Gate::touched() const {
  if (is_rotation()) {
    const auto& r = as_rotation();
    return TouchedRows(r.i, r.j);
  }
  return TouchedRows(as_constant().i);
}

std::size_t Gate::max_index() const {
  const auto rows = touched();
  return std::max(rows.first(), rows.second());
}

LinearAlgorithm::LinearAlgorithm(std::size_t n, std::vector<Gate> gates, std::string label)
    : n_(n), gates_(std::move(gates)), label_(std::move(label)) {
  if (n_ < 2) throw std::invalid_argument("dimension must be at least 2");
  for (std::size_t k = 0; k < gates_.size(); ++k) {
    if (gates_[k].max_index() >= n_) {
      throw std::invalid_argument("gate " + std::to_string(k) + " touches coordinate " +
                                  std::to_string(gates_[k].max_index()) +
                                  " outside [0, " + std::to_string(n_) + ")");
    }
  }
}

std::size_t LinearAlgorithm::rotation_count() const {
  std::size_t count = 0;
  for (const auto& g : gates_) count += g.is_rotation() ? 1 : 0;
  return count;
}

double speedup_factor(const LinearAlgorithm& algorithm) {
  if (algorithm.gate_count() == 0) throw std::invalid_argument("speedup of an empty algorithm");
  const double n = static_cast<double>(algorithm.dimension());
  return n * std::log2(n) / static_cast<double>(algorithm.gate_count());
}

}  // namespace fftlb
