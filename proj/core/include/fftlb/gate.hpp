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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fftlb {

/// Planar rotation on coordinates (i, j):
///   x_i <- cos(theta) x_i + sin(theta) x_j
///   x_j <- -sin(theta) x_i + cos(theta) x_j
struct Rotation {
  std::size_t i = 0;
  std::size_t j = 1;
  double theta = 0.0;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

/// Multiplication of coordinate i by a nonzero scalar c.
struct Constant {
  std::size_t i = 0;
  double c = 1.0;

  friend bool operator==(const Constant&, const Constant&) = default;
};

/// The set of coordinates a gate rewrites: {i, j} for a rotation, {i} for a
/// constant.
class TouchedRows {
 public:
  TouchedRows() = default;
  explicit TouchedRows(std::size_t i) : idx_{i, i}, count_(1) {}
  TouchedRows(std::size_t i, std::size_t j) : idx_{i, j}, count_(2) {}

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const std::size_t* begin() const { return idx_.data(); }
  const std::size_t* end() const { return idx_.data() + count_; }
  std::size_t operator[](std::size_t k) const { return idx_[k]; }

  /// A constant gate reports its single row as both first and second.
  std::size_t first() const { return idx_[0]; }
  std::size_t second() const { return count_ == 2 ? idx_[1] : idx_[0]; }

  bool contains(std::size_t r) const {
    for (std::size_t k = 0; k < count_; ++k) {
      if (idx_[k] == r) return true;
    }
    return false;
  }

 private:
  std::array<std::size_t, 2> idx_{0, 0};
  std::uint8_t count_ = 0;
};

/// One step of an in-place linear algorithm. Construct through rotation() or
/// constant(), which reject i == j and c == 0.
class Gate {
 public:
  static Gate rotation(std::size_t i, std::size_t j, double theta);
  static Gate constant(std::size_t i, double c);

  bool is_rotation() const { return std::holds_alternative<Rotation>(op_); }
  bool is_constant() const { return std::holds_alternative<Constant>(op_); }
  /// A constant gate with c == -1.
  bool is_reflection() const;

  const Rotation& as_rotation() const { return std::get<Rotation>(op_); }
  const Constant& as_constant() const { return std::get<Constant>(op_); }

  TouchedRows touched() const;
  std::size_t max_index() const;

  template <class Visitor>
  decltype(auto) visit(Visitor&& v) const {
    return std::visit(std::forward<Visitor>(v), op_);
  }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  explicit Gate(Rotation r) : op_(r) {}
  explicit Gate(Constant c) : op_(c) {}

  std::variant<Rotation, Constant> op_;
};

/// An in-place algorithm A_n = (M^(0) = Id, M^(1), ..., M^(m)) over R^n,
/// described by its gate list. Indices are 0-based.
class LinearAlgorithm {
 public:
  /// Throws std::invalid_argument if n < 2 or a gate index is out of range.
  LinearAlgorithm(std::size_t n, std::vector<Gate> gates, std::string label = {});

  std::size_t dimension() const { return n_; }
  std::size_t gate_count() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(std::size_t k) const { return gates_.at(k); }
  const std::string& label() const { return label_; }

  std::size_t rotation_count() const;

  friend bool operator==(const LinearAlgorithm&, const LinearAlgorithm&) = default;

 private:
  std::size_t n_;
  std::vector<Gate> gates_;
  std::string label_;
};

/// Speedup factor b = n log2 n / m relative to the n log2 n gate budget.
double speedup_factor(const LinearAlgorithm& algorithm);

}  // namespace fftlb
