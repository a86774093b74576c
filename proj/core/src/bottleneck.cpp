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

#include "fftlb/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "fftlb/builders.hpp"
#include "fftlb/trajectory.hpp"

namespace fftlb {
namespace {

double rows_norm2(const Matrix& a, const std::vector<std::size_t>& rows,
                  const std::optional<Matrix>& right) {
  double sum = 0.0;
  for (std::size_t r : rows) {
    const auto idx = static_cast<Eigen::Index>(r);
    sum += right ? (a.row(idx) * (*right)).squaredNorm() : a.row(idx).squaredNorm();
  }
  return sum;
}

double window_product(const Matrix& m, const Matrix& minv_t, const std::vector<std::size_t>& rows,
                      const Projections& pq) {
  return std::sqrt(rows_norm2(m, rows, pq.p) * rows_norm2(minv_t, rows, pq.q));
}

Matrix identity_or(const std::optional<Matrix>& x, Eigen::Index n) {
  return x ? *x : Matrix(Matrix::Identity(n, n));
}

double potential(const Matrix& m, const Matrix& minv_t, const Projections& pq) {
  const auto n = m.rows();
  return phi_pq(m, minv_t, identity_or(pq.p, n), identity_or(pq.q, n));
}

void check_projections(const Projections& pq, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  for (const auto* x : {&pq.p, &pq.q}) {
    if (*x && ((*x)->rows() != dim || (*x)->cols() != dim)) {
      throw std::invalid_argument("P and Q must be " + std::to_string(n) + "x" +
                                  std::to_string(n));
    }
  }
}

void check_window(const LinearAlgorithm& algorithm, std::size_t R) {
  if (R < 1 || R > algorithm.dimension() / 2) {
    throw std::invalid_argument("R = " + std::to_string(R) + " outside [1, floor(n/2)] for n = " +
                                std::to_string(algorithm.dimension()));
  }
  if (algorithm.gate_count() == 0) throw std::invalid_argument("algorithm has no gates");
}

std::size_t padded(std::size_t m, std::size_t R) { return (m + R - 1) / R * R; }

// Walks windows of R gates, calling visit(window, start_state, end_state, rows).
template <class Visit>
void for_each_window(const LinearAlgorithm& algorithm, std::size_t R, Visit&& visit) {
  const std::size_t m = algorithm.gate_count();
  const std::size_t windows = padded(m, R) / R;
  TrajectoryState state(algorithm.dimension());
  for (std::size_t w = 0; w < windows; ++w) {
    const TrajectoryState start = state;
    std::set<std::size_t> rows;
    bool has_rotation = false;
    for (std::size_t g = w * R; g < std::min(w * R + R, m); ++g) {
      const Gate& gate = algorithm.gates()[g];
      state.apply(gate);
      has_rotation = has_rotation || gate.is_rotation();
      for (std::size_t r : gate.touched()) rows.insert(r);
    }
    visit(w, start, state, std::vector<std::size_t>(rows.begin(), rows.end()), has_rotation);
  }
}

}  // namespace

BottleneckReport scan_bottlenecks(const LinearAlgorithm& algorithm, const Projections& projections,
                                  const ScanOptions& options) {
  check_window(algorithm, options.R);
  check_projections(projections, algorithm.dimension());
  const std::size_t R = options.R;
  const std::size_t m = algorithm.gate_count();

  BottleneckReport report;
  report.R = R;
  report.gate_count = m;
  report.padded_gate_count = padded(m, R);
  report.lhs = -std::numeric_limits<double>::infinity();

  const bool rotations_only = R == 1 && !options.include_constant_gates;
  double final_potential = 0.0;
  for_each_window(algorithm, R,
                  [&](std::size_t w, const TrajectoryState& start, const TrajectoryState& end,
                      std::vector<std::size_t> rows, bool has_rotation) {
                    WindowProduct p;
                    p.window = w;
                    p.t_start = start.step();
                    p.t_end = end.step();
                    p.included = !(rotations_only && !has_rotation) && !rows.empty();
                    if (p.included) {
                      p.at_start = window_product(start.m(), start.minv_t(), rows, projections);
                      p.at_end = window_product(end.m(), end.minv_t(), rows, projections);
                      p.value = std::max(p.at_start, p.at_end);
                      if (p.value > report.lhs) {
                        report.lhs = p.value;
                        report.window_star = w;
                        report.t_star = p.at_start > p.at_end ? p.t_start : p.t_end;
                        report.rows_star = rows;
                      }
                    }
                    p.rows = std::move(rows);
                    report.per_step.push_back(std::move(p));
                    if (end.step() == m) {
                      final_potential = potential(end.m(), end.minv_t(), projections);
                    }
                  });
  if (report.lhs == -std::numeric_limits<double>::infinity()) report.lhs = 0.0;

  const auto n = static_cast<Eigen::Index>(algorithm.dimension());
  const double initial_potential =
      phi(identity_or(projections.p, n), identity_or(projections.q, n));
  report.potential_change = final_potential - initial_potential;
  report.rhs = static_cast<double>(R) * report.potential_change /
               (static_cast<double>(m) * std::log2(2.0 * static_cast<double>(R)));
  return report;
}

double ChainReport::min_slack() const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& link : links) s = std::min(s, link.slack);
  return s;
}

ChainReport verify_bottleneck_chain(const LinearAlgorithm& algorithm, const Projections& projections,
                                  std::size_t R) {
  check_window(algorithm, R);
  check_projections(projections, algorithm.dimension());
  const double log_window = std::log2(2.0 * static_cast<double>(R));

  ChainReport report;
  report.R = R;
  double initial = 0.0;
  double final_value = 0.0;
  double max_product = 0.0;
  double min_window_slack = std::numeric_limits<double>::infinity();
  for_each_window(algorithm, R,
                  [&](std::size_t w, const TrajectoryState& start, const TrajectoryState& end,
                      const std::vector<std::size_t>& rows, bool) {
                    const double before = potential(start.m(), start.minv_t(), projections);
                    const double after = potential(end.m(), end.minv_t(), projections);
                    if (w == 0) initial = before;
                    final_value = after;
                    const double p_start = window_product(start.m(), start.minv_t(), rows,
                                                          projections);
                    const double p_end = window_product(end.m(), end.minv_t(), rows, projections);
                    max_product = std::max({max_product, p_start, p_end});
                    const double change = std::abs(after - before);
                    const double bound = (p_start + p_end) * log_window;
                    report.window_change.push_back(change);
                    report.window_bound.push_back(bound);
                    if (bound - change < min_window_slack) {
                      min_window_slack = bound - change;
                      report.worst_window = w;
                    }
                  });

  const double total = std::abs(final_value - initial);
  double change_sum = 0.0;
  double bound_sum = 0.0;
  for (std::size_t w = 0; w < report.window_change.size(); ++w) {
    change_sum += report.window_change[w];
    bound_sum += report.window_bound[w];
  }
  const auto windows = static_cast<double>(report.window_change.size());
  const double required = total / (2.0 * windows * log_window);

  report.links.push_back({"triangle", change_sum, total, change_sum - total});
  const std::size_t worst = report.worst_window;
  report.links.push_back({"window bound", report.window_bound[worst], report.window_change[worst],
                          min_window_slack});
  report.links.push_back({"summed window bound", bound_sum, total, bound_sum - total});
  report.links.push_back({"max vs average", max_product, required, max_product - required});

  ScanOptions scan;
  scan.R = R;
  const auto stated = scan_bottlenecks(algorithm, projections, scan);
  report.links.push_back({"stated bound", stated.lhs, stated.rhs, stated.slack()});
  return report;
}

double lower_bound_constant(std::size_t n) {
  return 147.0 + 30.0 * std::log2(static_cast<double>(n));
}

double upper_bound_rhs(double trace_p_hat, double trace_q_hat, double alpha2, double beta2,
                       std::size_t n) {
  return trace_p_hat + trace_q_hat + (alpha2 + beta2) * (1.0 + std::log2(static_cast<double>(n)));
}

bool is_psd_contraction(const Matrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > tolerance) return false;
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return ev.minCoeff() >= -tolerance && ev.maxCoeff() <= 1.0 + tolerance;
}

FourierProjectionReport verify_fourier_projection_bound(std::size_t n, const Matrix& p,
                                                        const Matrix& q, bool check_upper) {
  const auto dim = static_cast<Eigen::Index>(n);
  if (p.rows() != dim || p.cols() != dim || q.rows() != dim || q.cols() != dim) {
    throw std::invalid_argument("P and Q must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (check_upper && !(is_psd_contraction(p) && is_psd_contraction(q))) {
    throw std::invalid_argument("upper bound requires P and Q to be PSD contractions");
  }
  const Matrix f = walsh_hadamard_matrix(n);  // symmetric orthogonal: F^{-T} = F
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix p_hat = id - p;
  const Matrix q_hat = id - q;
  const double log_n = std::log2(static_cast<double>(n));

  FourierProjectionReport r;
  r.n = n;
  r.trace_p_hat = p_hat.trace();
  r.trace_q_hat = q_hat.trace();
  r.alpha2 = p_hat.squaredNorm();
  r.beta2 = q_hat.squaredNorm();
  r.lower_lhs = phi(Matrix(f * p), Matrix(f * q));
  r.lower_rhs = static_cast<double>(n) * log_n - (r.trace_p_hat + r.trace_q_hat) * log_n -
                (r.alpha2 + r.beta2) * lower_bound_constant(n);
  r.upper_checked = check_upper;
  if (check_upper) {
    r.upper_lhs = phi(p, q);
    r.upper_rhs = upper_bound_rhs(r.trace_p_hat, r.trace_q_hat, r.alpha2, r.beta2, n);
  }
  return r;
}

}  // namespace fftlb
