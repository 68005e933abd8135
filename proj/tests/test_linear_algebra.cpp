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


#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "kdvsplit/banded.hpp"
#include "kdvsplit/errors.hpp"
#include "kdvsplit/small_solve.hpp"
#include "support/oracles.hpp"

using namespace kdvsplit;

TEST_CASE("solve3 matches cramer's rule") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = oracle::random_vector(rng, 12);
    Mat3 a{{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}}};
    Vec3 b{v[9], v[10], v[11]};
    const auto x = solve3(a, b);
    REQUIRE(x.has_value());
    const auto ref = oracle::cramer(a, b);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs((*x)[i] - ref[i]) < 1e-10 * std::max(1.0, std::abs(ref[i])));
    }
  }
}

TEST_CASE("solve3 rejects singular matrices") {
  Mat3 a{{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}};
  CHECK_FALSE(solve3(a, {1, 2, 3}).has_value());
  Mat3 z{};
  CHECK_FALSE(solve3(z, {0, 0, 0}).has_value());
  Mat3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK(determinant(id) == 1.0);
  CHECK(norm_inf(a) == 12.0);
}

TEST_CASE("banded storage") {
  BandedMatrix m(5, 6, 1, 2);
  CHECK(m(0, 3) == 0.0);
  CHECK_THROWS_AS(m.at(0, 3), std::out_of_range);
  m.at(2, 1) = 4.0;
  m.at(2, 4) = -1.0;
  CHECK(m(2, 1) == 4.0);
  const Eigen::MatrixXd d = m.to_dense();
  CHECK(d(2, 4) == -1.0);
  const auto back = BandedMatrix::from_dense(d, 1, 2, 0.0, "test");
  CHECK(back.to_dense() == d);
  Eigen::MatrixXd bad = d;
  bad(0, 4) = 1.0;
  CHECK_THROWS_AS(BandedMatrix::from_dense(bad, 1, 2, 1e-10, "test"), BandwidthViolation);
  const auto t = m.transposed();
  CHECK(t.rows() == 6);
  CHECK(t.lower() == 2);
  CHECK(t.upper() == 1);
  CHECK(t.to_dense() == d.transpose());
}

TEST_CASE("banded products and combination match dense algebra") {
  std::mt19937 rng(9);
  const int n = 12;
  BandedMatrix a(n, n, 3, 3), b(n, n, 1, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a.in_band(i, j)) a.at(i, j) = oracle::random_vector(rng, 1)[0];
      if (b.in_band(i, j)) b.at(i, j) = oracle::random_vector(rng, 1)[0];
    }
  }
  const auto x = oracle::random_vector(rng, n);
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
  const Eigen::VectorXd ax = a.to_dense() * xv;
  const Eigen::VectorXd atx = a.to_dense().transpose() * xv;
  const auto y = a.multiply(x);
  const auto yt = a.multiply_transpose(x);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(y[i] - ax(i)) < 1e-14);
    CHECK(std::abs(yt[i] - atx(i)) < 1e-14);
  }
  const auto c = BandedMatrix::combine(2.0, a, -0.5, b);
  CHECK((c.to_dense() - (2.0 * a.to_dense() - 0.5 * b.to_dense())).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK_THROWS_AS(a.multiply(std::vector<double>(3)), LengthMismatch);
}

TEST_CASE("banded LU solves agree with a dense solve") {
  std::mt19937 rng(2);
  const int n = 40;
  BandedMatrix a(n, n, 3, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - 3); j <= std::min(n - 1, i + 3); ++j) {
      a.at(i, j) = oracle::random_vector(rng, 1)[0] + (i == j ? 8.0 : 0.0);
    }
  }
  const BandedLU lu(a);
  CHECK_FALSE(lu.used_dense_fallback());
  const auto b = oracle::random_vector(rng, n);
  const auto x = lu.solve(b);
  const Eigen::VectorXd ref =
      a.to_dense().partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n));
  for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - ref(i)) < 1e-12);
}

TEST_CASE("banded LU falls back to pivoting on a zero pivot") {
  BandedMatrix a(3, 3, 1, 1);
  a.at(0, 1) = 1.0;
  a.at(1, 0) = 1.0;
  a.at(1, 2) = 1.0;
  a.at(2, 1) = 1.0;
  a.at(2, 2) = 1.0;
  const BandedLU lu(a);
  CHECK(lu.used_dense_fallback());
  const auto x = lu.solve(std::vector<double>{1.0, 2.0, 3.0});
  const auto r = a.multiply(x);
  CHECK(r[0] == doctest::Approx(1.0));
  CHECK(r[1] == doctest::Approx(2.0));
  CHECK(r[2] == doctest::Approx(3.0));

  BandedMatrix singular(2, 2, 0, 0);
  CHECK_THROWS_AS(BandedLU{singular}, FactorizationError);
}
