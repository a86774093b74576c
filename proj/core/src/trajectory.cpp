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

#include "fftlb/trajectory.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace fftlb {
namespace {

void apply_to_rows(const Gate& gate, Matrix& a, bool inverse_transpose) {
  const auto cols = a.cols();
  if (gate.is_rotation()) {
    const auto g = CompiledGate::from(gate);
    const double c = g.c;
    const double s = g.s;
    double* ri = a.row(static_cast<Eigen::Index>(g.i)).data();
    double* rj = a.row(static_cast<Eigen::Index>(g.j)).data();
    for (Eigen::Index k = 0; k < cols; ++k) {
      const double x = ri[k];
      const double y = rj[k];
      ri[k] = c * x + s * y;
      rj[k] = -s * x + c * y;
    }
  } else {
    const auto& k = gate.as_constant();
    const double factor = inverse_transpose ? 1.0 / k.c : k.c;
    a.row(static_cast<Eigen::Index>(k.i)) *= factor;
  }
}

}  // namespace

std::vector<CompiledGate> compile(const LinearAlgorithm& algorithm) {
  std::vector<CompiledGate> out;
  out.reserve(algorithm.gate_count());
  for (const auto& gate : algorithm.gates()) out.push_back(CompiledGate::from(gate));
  return out;
}

TrajectoryState::TrajectoryState(std::size_t n)
    : m_(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))),
      minv_t_(m_) {}

void TrajectoryState::apply(const Gate& gate) {
  if (gate.max_index() >= dimension()) {
    throw std::invalid_argument("gate index out of range for dimension " +
                                std::to_string(dimension()));
  }
  apply_to_rows(gate, m_, false);
  apply_to_rows(gate, minv_t_, true);
  touched_ = gate.touched();
  ++t_;
}

double TrajectoryState::inverse_residual() const {
  const Matrix product = m_ * minv_t_.transpose();
  return (product - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
}

TrajectoryState advance(TrajectoryState state, const Gate& gate) {
  state.apply(gate);
  return state;
}

Vector apply_to_vector(const LinearAlgorithm& algorithm, std::span<const double> x,
                       std::size_t upto_t) {
  if (x.size() != algorithm.dimension()) {
    throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                " does not match dimension " +
                                std::to_string(algorithm.dimension()));
  }
  if (upto_t > algorithm.gate_count()) {
    throw std::out_of_range("step " + std::to_string(upto_t) + " exceeds gate count " +
                            std::to_string(algorithm.gate_count()));
  }
  Vector state = Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size()));
  std::span<double> view(state.data(), x.size());
  for (std::size_t k = 0; k < upto_t; ++k) apply_gate(algorithm.gates()[k], view);
  return state;
}

MatrixPair matrices_at(const LinearAlgorithm& algorithm, std::size_t t) {
  if (t > algorithm.gate_count()) {
    throw std::out_of_range("step " + std::to_string(t) + " exceeds gate count " +
                            std::to_string(algorithm.gate_count()));
  }
  TrajectoryState state(algorithm.dimension());
  for (std::size_t k = 0; k < t; ++k) state.apply(algorithm.gates()[k]);
  return {state.m(), state.minv_t()};
}

Matrix final_matrix(const LinearAlgorithm& algorithm) {
  return matrices_at(algorithm, algorithm.gate_count()).m;
}

double condition_number(const Matrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smallest = sv(sv.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

double ValidationReport::max_condition_number() const {
  if (condition_numbers.empty()) return 1.0;
  return *std::max_element(condition_numbers.begin(), condition_numbers.end());
}

ValidationReport validate(const LinearAlgorithm& algorithm, const ValidateOptions& options) {
  ValidationReport report;
  report.condition_numbers.reserve(algorithm.gate_count() + 1);
  report.touched.reserve(algorithm.gate_count() + 1);
  replay(algorithm, [&](const TrajectoryState& state) {
    report.max_residual = std::max(report.max_residual, state.inverse_residual());
    report.condition_numbers.push_back(condition_number(state.m()));
    report.touched.push_back(state.touched());
  });
  report.unstable = report.max_residual > options.residual_threshold;
  return report;
}

}  // namespace fftlb
