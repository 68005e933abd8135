// Copyright 2026 The kdvsplit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace kdvsplit {

/// Real matrix storing only the diagonals -lower..upper. Element (i, j) is in
/// the band when -lower <= j - i <= upper; everything else reads as exactly 0.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int rows, int cols, int lower, int upper);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int lower() const { return lower_; }
  int upper() const { return upper_; }

  bool in_band(int i, int j) const {
    return i >= 0 && i < rows_ && j >= 0 && j < cols_ && j - i >= -lower_ &&
           j - i <= upper_;
  }

  double operator()(int i, int j) const {
    return in_band(i, j) ? band_[index(i, j)] : 0.0;
  }

  /// Mutable access; throws std::out_of_range outside the band.
  double& at(int i, int j);

  double max_abs() const;

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transpose(std::span<const double> x) const;

  BandedMatrix transposed() const;
  Eigen::MatrixXd to_dense() const;

  /// Packs `dense` into a band. Entries outside it must be no larger than
  /// rel_tol * max|dense|; otherwise BandwidthViolation names `what`.
  static BandedMatrix from_dense(const Eigen::MatrixXd& dense, int lower, int upper,
                                 double rel_tol, const std::string& what);

  /// a * A + b * B over the union of the two bands.
  static BandedMatrix combine(double a, const BandedMatrix& A, double b,
                              const BandedMatrix& B);

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * (lower_ + upper_ + 1) + (j - i + lower_);
  }

  int rows_ = 0;
  int cols_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<double> band_;
};

/// LU of a square banded matrix without pivoting. If the element growth
/// max|U| / max|A| exceeds `growth_limit`, or a zero pivot appears, the
/// factorization is redone densely with partial pivoting.
class BandedLU {
 public:
  explicit BandedLU(const BandedMatrix& a, double growth_limit = 1e6);

  std::vector<double> solve(std::span<const double> b) const;

  int size() const { return n_; }
  bool used_dense_fallback() const { return dense_ != nullptr; }
  double growth_factor() const { return growth_; }

 private:
  int n_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  BandedMatrix lu_;
  double growth_ = 1.0;
  std::shared_ptr<const Eigen::PartialPivLU<Eigen::MatrixXd>> dense_;
};

}  // namespace kdvsplit
