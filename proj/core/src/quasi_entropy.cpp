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

#include "fftlb/quasi_entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fftlb/trajectory.hpp"

namespace fftlb {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("phi: shape mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
  }
}

void require_square(const std::optional<Matrix>& p, Eigen::Index n, const char* name) {
  if (p && (p->rows() != n || p->cols() != n)) {
    throw std::invalid_argument(std::string(name) + " must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
}

// Row r of (A X) where X = Id when absent.
RowVector projected_row(const Matrix& a, Eigen::Index r, const std::optional<Matrix>& x) {
  if (!x) return a.row(r);
  return a.row(r) * (*x);
}

double row_term(const RowVector& a, const RowVector& b) {
  return phi(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
             std::span<const double>(b.data(), static_cast<std::size_t>(b.size())));
}

}  // namespace

double entropy_term(double p) {
  const double mag = std::abs(p);
  if (mag < kProductFloor) return 0.0;
  return -p * std::log2(mag);
}

double phi(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("phi: length mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += entropy_term(a[k] * b[k]);
  return sum;
}

double phi(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  return phi(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
             std::span<const double>(b.data(), static_cast<std::size_t>(b.size())));
}

double phi_complex(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  if (a.cols() % 2 != 0) throw std::invalid_argument("phi_complex: column count must be even");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); j += 2) {
      sum += entropy_term(a(i, j) * b(i, j) + a(i, j + 1) * b(i, j + 1));
    }
  }
  return sum;
}

double phi_pq(const Matrix& m, const Matrix& minv_t, const Matrix& p, const Matrix& q) {
  require_same_shape(m, minv_t);
  if (p.rows() != m.cols() || q.rows() != minv_t.cols()) {
    throw std::invalid_argument("phi_pq: P/Q row count must equal n");
  }
  return phi(Matrix(m * p), Matrix(minv_t * q));
}

PotentialTrace trace_potential(const LinearAlgorithm& algorithm, const Projections& projections,
                               const TraceOptions& options) {
  const auto n = static_cast<Eigen::Index>(algorithm.dimension());
  require_square(projections.p, n, "P");
  require_square(projections.q, n, "Q");

  PotentialTrace trace;
  const std::size_t steps = algorithm.gate_count() + 1;
  trace.values.reserve(steps);
  trace.per_step_delta.reserve(steps);
  trace.per_step_bound.reserve(steps);
  trace.touched.reserve(steps);

  // Per-row potential contribution and the squared norms of the projected rows.
  std::vector<double> contribution(static_cast<std::size_t>(n));
  std::vector<double> norm_a(static_cast<std::size_t>(n));
  std::vector<double> norm_b(static_cast<std::size_t>(n));

  const auto refresh_row = [&](const TrajectoryState& s, Eigen::Index r) {
    const RowVector a = projected_row(s.m(), r, projections.p);
    const RowVector b = projected_row(s.minv_t(), r, projections.q);
    const auto k = static_cast<std::size_t>(r);
    contribution[k] = row_term(a, b);
    norm_a[k] = a.squaredNorm();
    norm_b[k] = b.squaredNorm();
  };
  const auto full_sum = [&]() {
    double sum = 0.0;
    for (double c : contribution) sum += c;
    return sum;
  };
  const auto frobenius_product = [&](const TouchedRows& rows) {
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t r : rows) {
      sa += norm_a[r];
      sb += norm_b[r];
    }
    return std::sqrt(sa * sb);
  };

  double current = 0.0;
  std::size_t since_resync = 0;
  replay(algorithm, [&](const TrajectoryState& s) {
    if (s.step() == 0) {
      for (Eigen::Index r = 0; r < n; ++r) refresh_row(s, r);
      current = full_sum();
      trace.values.push_back(current);
      trace.per_step_delta.push_back(0.0);
      trace.per_step_bound.push_back(0.0);
      trace.touched.push_back(s.touched());
      return;
    }
    const TouchedRows& rows = s.touched();
    const double before_product = frobenius_product(rows);
    double old_part = 0.0;
    for (std::size_t r : rows) old_part += contribution[r];
    for (std::size_t r : rows) refresh_row(s, static_cast<Eigen::Index>(r));
    double new_part = 0.0;
    for (std::size_t r : rows) new_part += contribution[r];
    const double after_product = frobenius_product(rows);

    const double previous = current;
    current += new_part - old_part;
    if (++since_resync == options.resync_interval) {
      since_resync = 0;
      for (Eigen::Index r = 0; r < n; ++r) refresh_row(s, r);
      const double exact = full_sum();
      const double drift = std::abs(exact - current);
      trace.max_resync_drift = std::max(trace.max_resync_drift, drift);
      if (drift > options.resync_tolerance) {
        throw std::runtime_error("trace_potential: incremental potential drifted by " +
                                 std::to_string(drift) + " at step " + std::to_string(s.step()));
      }
      current = exact;
    }
    trace.values.push_back(current);
    trace.per_step_delta.push_back(std::abs(current - previous));
    trace.per_step_bound.push_back((after_product + before_product) *
                                   std::log2(static_cast<double>(rows.size())));
    trace.touched.push_back(rows);
  });
  return trace;
}

}  // namespace fftlb
