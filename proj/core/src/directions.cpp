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

#include "fftlb/directions.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "fftlb/builders.hpp"
#include "fftlb/trajectory.hpp"

namespace fftlb {
namespace {

constexpr double kReorthogonalizeThreshold = 1e-10;

struct Candidate {
  std::size_t t = 0;
  std::size_t i = 0;
  Vector raw_a;  // row i of M^(t)
  Vector raw_b;  // row i of (M^(t))^{-T}
  Vector a;      // raw_a P
  Vector b;      // raw_b Q
};

void deflate(Vector& x, const Vector& v) { x -= x.dot(v) * v; }

// Normalizes x and re-orthogonalizes against basis when the residual overlap
// exceeds the threshold.
Vector orthonormalize(Vector x, const std::vector<Vector>& basis) {
  x.normalize();
  double overlap = 0.0;
  for (const auto& v : basis) overlap = std::max(overlap, std::abs(x.dot(v)));
  if (overlap > kReorthogonalizeThreshold) {
    for (const auto& v : basis) deflate(x, v);
    x.normalize();
  }
  return x;
}

void deflate_projection(Matrix& p, const Vector& v) {
  p -= v * v.transpose();
  p = 0.5 * (p + p.transpose()).eval();
}

std::vector<Candidate> collect_candidates(const LinearAlgorithm& algorithm,
                                          const ExtractOptions& options) {
  std::vector<Candidate> out;
  const std::size_t n = algorithm.dimension();
  replay(algorithm, [&](const TrajectoryState& s) {
    const auto take = [&](std::size_t i) {
      const auto r = static_cast<Eigen::Index>(i);
      Candidate c;
      c.t = s.step();
      c.i = i;
      c.raw_a = s.m().row(r).transpose();
      c.raw_b = s.minv_t().row(r).transpose();
      c.a = c.raw_a;
      c.b = c.raw_b;
      out.push_back(std::move(c));
    };
    if (!options.touched_rows_only) {
      for (std::size_t i = 0; i < n; ++i) take(i);
      return;
    }
    if (s.step() == 0) return;
    const Gate& gate = algorithm.gates()[s.step() - 1];
    if (gate.is_constant() && !options.include_constant_gates) return;
    std::set<std::size_t> rows(s.touched().begin(), s.touched().end());
    for (std::size_t i : rows) take(i);
  });
  return out;
}

void append(DirectionSystem& system, const Candidate& c, const Vector& projected,
            double magnitude, bool underflow) {
  system.vectors.push_back(orthonormalize(projected, system.vectors));
  system.raw_rows.push_back(underflow ? c.raw_b : c.raw_a);
  system.steps.push_back(c.t);
  system.coords.push_back(c.i);
  system.magnitudes.push_back(magnitude);
}

}  // namespace

const char* to_string(DirectionKind kind) {
  return kind == DirectionKind::kOverflow ? "overflow" : "underflow";
}

Matrix DirectionSystem::complement_projection(std::size_t n) const {
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix p = Matrix::Identity(dim, dim);
  for (const auto& v : vectors) p -= v * v.transpose();
  return p;
}

double DirectionSystem::orthonormality_error() const {
  double err = 0.0;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    for (std::size_t b = 0; b < vectors.size(); ++b) {
      const double target = a == b ? 1.0 : 0.0;
      err = std::max(err, std::abs(vectors[a].dot(vectors[b]) - target));
    }
  }
  return err;
}

std::size_t DirectionSystem::distinct_steps() const {
  return std::set<std::size_t>(steps.begin(), steps.end()).size();
}

bool DirectionSystem::has_repeated_site() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    if (!seen.emplace(steps[j], coords[j]).second) return true;
  }
  return false;
}

double default_tau(const LinearAlgorithm& algorithm) {
  return std::sqrt(speedup_factor(algorithm) / 2.0);
}

ExtractionResult extract_directions(const LinearAlgorithm& algorithm,
                                    const ExtractOptions& options) {
  if (!(options.tau > 0.0)) throw std::invalid_argument("extraction threshold tau must be > 0");
  const std::size_t n = algorithm.dimension();
  if (options.require_walsh_hadamard_target) {
    if (!is_power_of_two(n)) {
      throw std::invalid_argument("extraction needs a Walsh-Hadamard target; n is not a power of 2");
    }
    const double err =
        (final_matrix(algorithm) - walsh_hadamard_matrix(n)).cwiseAbs().maxCoeff();
    if (err > 1e-8) {
      throw std::invalid_argument("final matrix differs from F_WHT(" + std::to_string(n) +
                                  ") by " + std::to_string(err));
    }
  }

  auto candidates = collect_candidates(algorithm, options);
  ExtractionResult result;
  result.overflow.kind = DirectionKind::kOverflow;
  result.underflow.kind = DirectionKind::kUnderflow;
  const auto dim = static_cast<Eigen::Index>(n);
  result.p = Matrix::Identity(dim, dim);
  result.q = Matrix::Identity(dim, dim);

  std::vector<Vector> overflow_basis;
  std::vector<Vector> underflow_basis;
  const auto seed_side = [&](const std::vector<Vector>& seeds, std::vector<Vector>& basis,
                             Matrix& proj, bool underflow) {
    for (const auto& s : seeds) {
      if (s.size() != dim) throw std::invalid_argument("initial direction has wrong length");
      Vector v = s;
      for (const auto& b : basis) deflate(v, b);
      if (v.norm() < 1e-12) continue;
      v.normalize();
      basis.push_back(v);
      deflate_projection(proj, v);
      for (auto& c : candidates) deflate(underflow ? c.b : c.a, v);
    }
  };
  seed_side(options.initial_overflow, overflow_basis, result.p, false);
  seed_side(options.initial_underflow, underflow_basis, result.q, true);

  const bool product = options.criterion == ExtractCriterion::kProduct;
  const double threshold = product ? options.tau * options.tau : options.tau;
  while (true) {
    const Candidate* best = nullptr;
    double best_score = -1.0;
    double best_a = 0.0;
    double best_b = 0.0;
    for (const auto& c : candidates) {
      const double na = c.a.norm();
      const double nb = c.b.norm();
      const double score = product ? na * nb : std::max(na, nb);
      if (score > best_score) {
        best_score = score;
        best = &c;
        best_a = na;
        best_b = nb;
      }
    }
    result.final_score = std::max(best_score, 0.0);
    if (best == nullptr || best_score < threshold) break;

    const bool overflow = best_a >= best_b;
    if (overflow) {
      append(result.overflow, *best, best->a, best_a, false);
      const Vector v = result.overflow.vectors.back();
      overflow_basis.push_back(v);
      deflate_projection(result.p, v);
      for (auto& c : candidates) deflate(c.a, v);
    } else {
      append(result.underflow, *best, best->b, best_b, true);
      const Vector v = result.underflow.vectors.back();
      underflow_basis.push_back(v);
      deflate_projection(result.q, v);
      for (auto& c : candidates) deflate(c.b, v);
    }
    if (overflow_basis.size() >= n && underflow_basis.size() >= n) break;
  }
  return result;
}

ExtendedBasis extend_basis(const DirectionSystem& underflow, std::size_t n) {
  if (underflow.size() > n) throw std::invalid_argument("underflow system larger than n");
  const auto dim = static_cast<Eigen::Index>(n);
  ExtendedBasis basis;
  basis.extracted = underflow.size();
  Vector weight = Vector::Zero(dim);
  for (std::size_t j = 0; j < underflow.size(); ++j) {
    if (underflow.vectors[j].size() != dim) {
      throw std::invalid_argument("underflow vector has wrong length");
    }
    basis.z_vectors.push_back(underflow.raw_rows.empty() ? underflow.vectors[j]
                                                         : underflow.raw_rows[j]);
    basis.u_vectors.push_back(underflow.vectors[j]);
    basis.gammas.push_back(underflow.magnitudes[j]);
    weight += underflow.vectors[j].cwiseAbs2();
  }
  for (std::size_t j = underflow.size(); j < n; ++j) {
    Eigen::Index i0 = 0;
    for (Eigen::Index i = 1; i < dim; ++i) {
      if (weight(i) < weight(i0)) i0 = i;
    }
    Vector z = Vector::Zero(dim);
    z(i0) = 1.0;
    Vector qz = z;
    for (const auto& u : basis.u_vectors) deflate(qz, u);
    const double gamma = qz.norm();
    if (gamma < 1e-12) {
      throw std::logic_error("extend_basis: degenerate projection at j = " + std::to_string(j));
    }
    Vector u = orthonormalize(qz, basis.u_vectors);
    weight += u.cwiseAbs2();
    basis.z_vectors.push_back(std::move(z));
    basis.u_vectors.push_back(std::move(u));
    basis.gammas.push_back(gamma);
  }
  return basis;
}

VolumeBound uncertainty_volume_log(const ExtendedBasis& basis, double b, std::size_t n_prime) {
  const std::size_t n = basis.gammas.size();
  if (n_prime > n) throw std::invalid_argument("n' exceeds basis size");
  VolumeBound v;
  v.b = b;
  v.n_prime = n_prime;
  for (double g : basis.gammas) v.sum_log_gamma += std::log2(g);
  v.closed_form = static_cast<double>(n_prime) * std::log2(std::sqrt(b / 2.0));
  for (std::size_t j = n_prime + 1; j <= n; ++j) {
    v.closed_form += std::log2(
        std::sqrt(1.0 - static_cast<double>(j - 1) / static_cast<double>(n)));
  }
  return v;
}

}  // namespace fftlb
