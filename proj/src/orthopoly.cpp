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

#include "kdvsplit/orthopoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kdvsplit/errors.hpp"

namespace kdvsplit::orthopoly {

LegendreTable legendre_table(int n_max, double x, int max_order) {
  if (n_max < 0 || max_order < 0) {
    throw std::invalid_argument("legendre_table: negative size");
  }
  LegendreTable t;
  t.n_max = n_max;
  t.max_order = max_order;
  const std::size_t stride = static_cast<std::size_t>(n_max) + 1;
  t.data.assign(stride * (max_order + 1), 0.0);
  auto at = [&](int d, int n) -> double& { return t.data[d * stride + n]; };

  // Differentiating (n+1) L_{n+1} = (2n+1) x L_n - n L_{n-1} d times gives
  // (n+1) L_{n+1}^(d) = (2n+1) (x L_n^(d) + d L_n^(d-1)) - n L_{n-1}^(d).
  for (int d = 0; d <= max_order; ++d) {
    at(d, 0) = d == 0 ? 1.0 : 0.0;
    if (n_max >= 1) at(d, 1) = d == 0 ? x : (d == 1 ? 1.0 : 0.0);
    for (int n = 1; n < n_max; ++n) {
      double lower = d > 0 ? at(d - 1, n) : 0.0;
      at(d, n + 1) = ((2.0 * n + 1.0) * (x * at(d, n) + d * lower) -
                      n * at(d, n - 1)) /
                     (n + 1.0);
    }
  }
  return t;
}

double legendre(int n, double x, int derivative) {
  if (n < 0 || derivative < 0) throw std::invalid_argument("legendre: negative");
  return legendre_table(n, x, derivative)(derivative, n);
}

double legendre_endpoint(int n, int derivative, int side) {
  if (derivative > n) return 0.0;
  // (n-k+1)_{2k} / (2^k k!)
  double value = 1.0;
  for (int i = 0; i < 2 * derivative; ++i) value *= n - derivative + 1 + i;
  for (int i = 1; i <= derivative; ++i) value /= 2.0 * i;
  if (side < 0 && ((n - derivative) % 2 != 0)) value = -value;
  return value;
}

double jacobi(int n, double alpha, double beta, double x) {
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x);
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + alpha + beta;
    const double a1 = 2.0 * k * (k + alpha + beta) * (s - 2.0);
    const double a2 = (s - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
    const double next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
    p_prev = p;
    p = next;
  }
  return p;
}

double jacobi_derivative(int n, double alpha, double beta, double x) {
  if (n == 0) return 0.0;
  return 0.5 * (n + alpha + beta + 1.0) * jacobi(n - 1, alpha + 1.0, beta + 1.0, x);
}

namespace {

// Implicit QL with Wilkinson-type shifts on the symmetric tridiagonal matrix
// (diag, off). Only the first components of the eigenvectors are tracked,
// which is all the Golub-Welsch weights need.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double> off,
                    std::vector<double>& first, int max_sweeps) {
  const int n = static_cast<int>(diag.size());
  off.resize(n, 0.0);
  first.assign(n, 0.0);
  first[0] = 1.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (sweeps++ >= max_sweeps) {
        throw EigenSolveError("tridiagonal QL did not converge within " +
                              std::to_string(max_sweeps) + " sweeps");
      }
      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        f = first[i + 1];
        first[i + 1] = s * first[i] + c * f;
        first[i] = c * first[i] - s * f;
      }
      if (deflated) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }
}

double jacobi_scale(int n, double alpha, double beta) {
  return std::max({1.0, std::abs(jacobi(n, alpha, beta, 1.0)),
                   std::abs(jacobi(n, alpha, beta, -1.0))});
}

}  // namespace

GaussJacobi gauss_jacobi(double alpha, double beta, int n, int max_sweeps) {
  if (!(alpha > -1.0) || !(beta > -1.0) || n < 1) {
    throw std::invalid_argument("gauss_jacobi: need alpha, beta > -1 and n >= 1");
  }
  const double ab = alpha + beta;
  std::vector<double> diag(n), off(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag[k] = k == 0 ? (beta - alpha) / (ab + 2.0)
                     : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double j = k + 1.0;
      const double t = 2.0 * j + ab;
      off[k] = std::sqrt(4.0 * j * (j + alpha) * (j + beta) * (j + ab) /
                         (t * t * (t + 1.0) * (t - 1.0)));
    }
  }
  std::vector<double> first;
  tridiagonal_ql(diag, off, first, max_sweeps);

  // Integral of the weight function. tgamma rather than lgamma, which writes
  // the global signgam.
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) *
                     std::tgamma(beta + 1.0) / std::tgamma(ab + 2.0);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

  GaussJacobi out;
  out.nodes.resize(n);
  out.weights.resize(n);
  const double scale = jacobi_scale(n, alpha, beta);
  for (int i = 0; i < n; ++i) {
    double x = diag[order[i]];
    // One Newton correction against the recurrence-evaluated polynomial.
    const double dp = jacobi_derivative(n, alpha, beta, x);
    if (dp != 0.0) {
      const double candidate = x - jacobi(n, alpha, beta, x) / dp;
      if (std::abs(jacobi(n, alpha, beta, candidate)) <=
          std::abs(jacobi(n, alpha, beta, x))) {
        x = candidate;
      }
    }
    if (std::abs(jacobi(n, alpha, beta, x)) > 1e-10 * scale) {
      throw EigenSolveError("root " + std::to_string(i) + " of P_" +
                            std::to_string(n) + " fails the residual check");
    }
    out.nodes[i] = x;
    out.weights[i] = mu0 * first[order[i]] * first[order[i]];
  }
  for (int i = 1; i < n; ++i) {
    if (!(out.nodes[i] > out.nodes[i - 1])) {
      throw EigenSolveError("Jacobi roots are not strictly increasing");
    }
  }
  return out;
}

std::vector<double> jacobi_roots(double alpha, double beta, int n, int max_sweeps) {
  return gauss_jacobi(alpha, beta, n, max_sweeps).nodes;
}

QuadratureRule gauss_legendre_rule(int N) {
  if (N < 1) throw std::invalid_argument("gauss_legendre_rule: N >= 1 required");
  GaussJacobi gj = gauss_jacobi(0.0, 0.0, N + 1);
  QuadratureRule rule;
  rule.nodes = std::move(gj.nodes);
  rule.weights = std::move(gj.weights);
  rule.exactness_degree = 2 * N + 1;
  return rule;
}

QuadratureRule dispersive_rule(int N) {
  if (N < 4) throw std::invalid_argument("dispersive_rule: N >= 4 required");
  std::vector<double> nodes;
  nodes.reserve(N);
  nodes.push_back(-1.0);
  for (double y : jacobi_roots(2.0, 1.0, N - 2)) nodes.push_back(y);
  nodes.push_back(1.0);

  // Unknowns: the N nodal weights followed by the derivative weight.
  // Row n enforces exact integration of L_n, n = 0..N.
  const int unknowns = N + 1;
  Eigen::MatrixXd moments(unknowns, unknowns);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  rhs(0) = 2.0;
  for (int i = 0; i < N; ++i) {
    const LegendreTable t = legendre_table(N, nodes[i], 0);
    for (int n = 0; n <= N; ++n) moments(n, i) = t(0, n);
  }
  for (int n = 0; n <= N; ++n) moments(n, N) = legendre_endpoint(n, 1, +1);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(moments);
  if (!lu.isInvertible()) {
    throw QuadratureError("dispersive moment system is singular for N = " +
                          std::to_string(N));
  }
  const Eigen::VectorXd w = lu.solve(rhs);

  QuadratureRule rule;
  rule.nodes = std::move(nodes);
  rule.weights.assign(w.data(), w.data() + N);
  rule.endpoint_derivative_weight = w(N);
  rule.exactness_degree = 2 * N - 2;

  // Post-hoc exactness check through degree 2N - 2.
  const int top = rule.exactness_degree;
  std::vector<LegendreTable> tables;
  tables.reserve(N);
  for (double y : rule.nodes) tables.push_back(legendre_table(top, y, 0));
  for (int n = 0; n <= top; ++n) {
    double q = 0.0, mag = 0.0;
    for (int i = 0; i < N; ++i) {
      q += rule.weights[i] * tables[i](0, n);
      mag += std::abs(rule.weights[i] * tables[i](0, n));
    }
    const double dl = legendre_endpoint(n, 1, +1);
    q += w(N) * dl;
    mag += std::abs(w(N) * dl);
    const double exact = n == 0 ? 2.0 : 0.0;
    if (std::abs(q - exact) > 1e-10 * std::max(mag, 1.0)) {
      throw QuadratureError("dispersive rule for N = " + std::to_string(N) +
                            " is not exact for L_" + std::to_string(n));
    }
  }
  return rule;
}

double inner_product(const QuadratureRule& rule, const NodalValues& u,
                     const NodalValues& v) {
  const std::size_t n = rule.nodes.size();
  if (u.values.size() != n || v.values.size() != n) {
    throw LengthMismatch("inner_product: nodal vectors do not match the rule");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * u.values[i] * v.values[i];
  if (rule.endpoint_derivative_weight) {
    // d/dy(u v) at +1; the last node is y = +1.
    s += *rule.endpoint_derivative_weight *
         (u.right_derivative * v.values[n - 1] + u.values[n - 1] * v.right_derivative);
  }
  return s;
}

double integrate(const QuadratureRule& rule, const NodalValues& f) {
  const std::size_t n = rule.nodes.size();
  if (f.values.size() != n) throw LengthMismatch("integrate: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * f.values[i];
  if (rule.endpoint_derivative_weight) {
    s += *rule.endpoint_derivative_weight * f.right_derivative;
  }
  return s;
}

}  // namespace kdvsplit::orthopoly
