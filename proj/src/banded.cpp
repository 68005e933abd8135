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

#include "kdvsplit/banded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kdvsplit/errors.hpp"

namespace kdvsplit {

BandedMatrix::BandedMatrix(int rows, int cols, int lower, int upper)
    : rows_(rows), cols_(cols), lower_(lower), upper_(upper) {
  if (rows < 0 || cols < 0 || lower < 0 || upper < 0) {
    throw std::invalid_argument("BandedMatrix: negative dimension or bandwidth");
  }
  band_.assign(static_cast<std::size_t>(rows) * (lower + upper + 1), 0.0);
}

double& BandedMatrix::at(int i, int j) {
  if (!in_band(i, j)) {
    throw std::out_of_range("BandedMatrix::at(" + std::to_string(i) + ", " +
                            std::to_string(j) + ") is outside the band");
  }
  return band_[index(i, j)];
}

double BandedMatrix::max_abs() const {
  double m = 0.0;
  for (double v : band_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols_) throw LengthMismatch("BandedMatrix::multiply");
  std::vector<double> y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const int j0 = std::max(0, i - lower_);
    const int j1 = std::min(cols_ - 1, i + upper_);
    double s = 0.0;
    for (int j = j0; j <= j1; ++j) s += band_[index(i, j)] * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> BandedMatrix::multiply_transpose(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != rows_) {
    throw LengthMismatch("BandedMatrix::multiply_transpose");
  }
  std::vector<double> y(cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const int j0 = std::max(0, i - lower_);
    const int j1 = std::min(cols_ - 1, i + upper_);
    for (int j = j0; j <= j1; ++j) y[j] += band_[index(i, j)] * x[i];
  }
  return y;
}

BandedMatrix BandedMatrix::transposed() const {
  BandedMatrix t(cols_, rows_, upper_, lower_);
  for (int i = 0; i < rows_; ++i) {
    const int j0 = std::max(0, i - lower_);
    const int j1 = std::min(cols_ - 1, i + upper_);
    for (int j = j0; j <= j1; ++j) t.at(j, i) = band_[index(i, j)];
  }
  return t;
}

Eigen::MatrixXd BandedMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    const int j0 = std::max(0, i - lower_);
    const int j1 = std::min(cols_ - 1, i + upper_);
    for (int j = j0; j <= j1; ++j) d(i, j) = band_[index(i, j)];
  }
  return d;
}

BandedMatrix BandedMatrix::from_dense(const Eigen::MatrixXd& dense, int lower, int upper,
                                      double rel_tol, const std::string& what) {
  const int rows = static_cast<int>(dense.rows());
  const int cols = static_cast<int>(dense.cols());
  const double scale = dense.cwiseAbs().maxCoeff();
  BandedMatrix b(rows, cols, lower, upper);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (b.in_band(i, j)) {
        b.at(i, j) = dense(i, j);
      } else if (std::abs(dense(i, j)) > rel_tol * scale) {
        std::ostringstream os;
        os << what << ": entry (" << i << ", " << j << ") = " << dense(i, j)
           << " lies outside the declared band [-" << lower << ", " << upper
           << "] (max entry " << scale << ")";
        throw BandwidthViolation(os.str());
      }
    }
  }
  return b;
}

BandedMatrix BandedMatrix::combine(double a, const BandedMatrix& A, double b,
                                   const BandedMatrix& B) {
  if (A.rows_ != B.rows_ || A.cols_ != B.cols_) {
    throw LengthMismatch("BandedMatrix::combine: shape mismatch");
  }
  BandedMatrix c(A.rows_, A.cols_, std::max(A.lower_, B.lower_),
                 std::max(A.upper_, B.upper_));
  for (int i = 0; i < c.rows_; ++i) {
    const int j0 = std::max(0, i - c.lower_);
    const int j1 = std::min(c.cols_ - 1, i + c.upper_);
    for (int j = j0; j <= j1; ++j) c.at(i, j) = a * A(i, j) + b * B(i, j);
  }
  return c;
}

BandedLU::BandedLU(const BandedMatrix& a, double growth_limit)
    : n_(a.rows()), lower_(a.lower()), upper_(a.upper()), lu_(a) {
  if (a.rows() != a.cols()) throw LengthMismatch("BandedLU: matrix is not square");
  const double scale = a.max_abs();
  if (scale == 0.0 && n_ > 0) throw FactorizationError("BandedLU: zero matrix");

  bool fallback = false;
  double max_u = scale;
  for (int k = 0; k < n_ && !fallback; ++k) {
    const double pivot = lu_(k, k);
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      fallback = true;
      break;
    }
    const int i1 = std::min(n_ - 1, k + lower_);
    const int j1 = std::min(n_ - 1, k + upper_);
    for (int i = k + 1; i <= i1; ++i) {
      const double l = lu_(i, k) / pivot;
      lu_.at(i, k) = l;
      for (int j = k + 1; j <= j1; ++j) {
        double& v = lu_.at(i, j);
        v -= l * lu_(k, j);
        max_u = std::max(max_u, std::abs(v));
      }
    }
    if (max_u > growth_limit * scale) fallback = true;
  }
  growth_ = scale > 0.0 ? max_u / scale : 1.0;

  if (fallback) {
    auto dense = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(a.to_dense());
    if (n_ > 0 && dense->matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0) {
      throw FactorizationError("BandedLU: matrix is singular");
    }
    dense_ = std::move(dense);
  }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const {
  if (static_cast<int>(b.size()) != n_) throw LengthMismatch("BandedLU::solve");
  if (dense_) {
    const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n_);
    const Eigen::VectorXd x = dense_->solve(rhs);
    return {x.data(), x.data() + n_};
  }
  std::vector<double> x(b.begin(), b.end());
  for (int i = 0; i < n_; ++i) {
    const int k0 = std::max(0, i - lower_);
    double s = x[i];
    for (int k = k0; k < i; ++k) s -= lu_(i, k) * x[k];
    x[i] = s;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    const int j1 = std::min(n_ - 1, i + upper_);
    double s = x[i];
    for (int j = i + 1; j <= j1; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

}  // namespace kdvsplit
