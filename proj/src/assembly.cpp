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


#include "kdvsplit/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kdvsplit/errors.hpp"

namespace kdvsplit::assembly {

namespace {

using orthopoly::LegendreTable;
using orthopoly::NodalValues;
using orthopoly::QuadratureRule;

std::vector<LegendreTable> tables_on(const QuadratureRule& rule, int n_max, int order) {
  std::vector<LegendreTable> t;
  t.reserve(rule.nodes.size());
  for (double y : rule.nodes) t.push_back(orthopoly::legendre_table(n_max, y, order));
  return t;
}

// d-th derivative of sum_i c_i L_{k+i} at node l.
double combo(const LegendreTable& tab, int k, const pg::BasisTriple& t, int d) {
  return tab(d, k) + t.alpha * tab(d, k + 1) + t.beta * tab(d, k + 2) +
         t.gamma * tab(d, k + 3);
}

double combo_right(int k, const pg::BasisTriple& t, int d) {
  using orthopoly::legendre_endpoint;
  return legendre_endpoint(k, d, 1) + t.alpha * legendre_endpoint(k + 1, d, 1) +
         t.beta * legendre_endpoint(k + 2, d, 1) + t.gamma * legendre_endpoint(k + 3, d, 1);
}

NodalBasis on_rule(const std::vector<pg::BasisTriple>& triples, int N,
                   const QuadratureRule& rule) {
  const auto tabs = tables_on(rule, N, 0);
  NodalBasis out;
  const int n = static_cast<int>(triples.size());
  out.values.assign(n, std::vector<double>(rule.nodes.size()));
  out.right_derivative.resize(n);
  for (int k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < tabs.size(); ++l) {
      out.values[k][l] = combo(tabs[l], k, triples[k], 0);
    }
    out.right_derivative[k] = combo_right(k, triples[k], 1);
  }
  return out;
}

double ip(const QuadratureRule& rule, const std::vector<double>& u, double du,
          const std::vector<double>& v, double dv) {
  return orthopoly::inner_product(rule, NodalValues{u, du}, NodalValues{v, dv});
}

void require_dispersive(const pg::BasisCoeffs& basis, const QuadratureRule& rule) {
  if (!rule.endpoint_derivative_weight ||
      static_cast<int>(rule.nodes.size()) != basis.N) {
    throw std::invalid_argument("dispersive rule does not match the basis degree");
  }
}

}  // namespace

NodalBasis trial_on_rule(const pg::BasisCoeffs& basis, const QuadratureRule& rule) {
  return on_rule(basis.trial, basis.N, rule);
}

NodalBasis dual_on_rule(const pg::BasisCoeffs& basis, const QuadratureRule& rule) {
  return on_rule(basis.dual, basis.N, rule);
}

BandedMatrix mass_dispersive(const pg::BasisCoeffs& basis, const QuadratureRule& rule) {
  require_dispersive(basis, rule);
  const NodalBasis phi = trial_on_rule(basis, rule);
  const NodalBasis psi = dual_on_rule(basis, rule);
  const int n = basis.size();
  Eigen::MatrixXd m(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      m(k, j) = ip(rule, phi.values[k], phi.right_derivative[k], psi.values[j],
                   psi.right_derivative[j]);
    }
  }
  return BandedMatrix::from_dense(m, 3, 3, kBandTolerance, "mass matrix M^d");
}

BandedMatrix stiffness_dispersive(const pg::BasisCoeffs& basis, const QuadratureRule& rule,
                                  const EndpointLine& p_g, double s) {
  require_dispersive(basis, rule);
  const int N = basis.N;
  const int n = basis.size();
  const auto tabs = tables_on(rule, N, 3);
  const NodalBasis psi = dual_on_rule(basis, rule);
  const double s3 = s * s * s;

  Eigen::MatrixXd m(n, n);
  std::vector<double> q(rule.nodes.size());
  for (int k = 0; k < n; ++k) {
    const auto& t = basis.trial[k];
    for (std::size_t l = 0; l < tabs.size(); ++l) {
      q[l] = p_g(rule.nodes[l]) * s * combo(tabs[l], k, t, 1) + s3 * combo(tabs[l], k, t, 3);
    }
    const double dq = s * (p_g.slope() * combo_right(k, t, 1) + p_g(1.0) * combo_right(k, t, 2)) +
                      s3 * combo_right(k, t, 4);
    for (int j = 0; j < n; ++j) {
      m(k, j) = ip(rule, q, dq, psi.values[j], psi.right_derivative[j]);
    }
  }
  return BandedMatrix::from_dense(m, 3, 3, kBandTolerance, "stiffness matrix S^d");
}

BandedMatrix mass_advection(const QuadratureRule& gauss) {
  const int N = static_cast<int>(gauss.nodes.size()) - 1;
  const auto tabs = tables_on(gauss, N, 0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int j = 0; j <= N; ++j) {
      double sum = 0.0;
      for (std::size_t l = 0; l < tabs.size(); ++l) {
        sum += gauss.weights[l] * tabs[l](0, k) * tabs[l](0, j);
      }
      m(k, j) = sum;
    }
  }
  return BandedMatrix::from_dense(m, 0, 0, kBandTolerance, "mass matrix M^a");
}

Eigen::MatrixXd AdvectionStiffness::to_dense(int n) const {
  switch (kind) {
    case Kind::kZero: return Eigen::MatrixXd::Zero(n, n);
    case Kind::kBanded: return banded.to_dense();
    case Kind::kDense: return dense;
  }
  return {};
}

AdvectionStiffness stiffness_advection(const QuadratureRule& gauss,
                                       std::span<const double> g_star, double s,
                                       DeclaredForm form) {
  const int N = static_cast<int>(gauss.nodes.size()) - 1;
  if (static_cast<int>(g_star.size()) != N + 1) {
    throw LengthMismatch("stiffness_advection: g* must be sampled at the N + 1 nodes");
  }
  AdvectionStiffness out;
  if (form.kind == DeclaredForm::Kind::kPolynomial && form.degree <= 1) {
    double worst = 0.0;
    for (double v : g_star) worst = std::max(worst, std::abs(v));
    if (worst > 1e-10) {
      std::ostringstream os;
      os << "g* declared polynomial of degree " << form.degree
         << " must vanish identically, but max |g*| at the nodes is " << worst;
      throw BandwidthViolation(os.str());
    }
    out.kind = AdvectionStiffness::Kind::kZero;
    return out;
  }

  const auto tabs = tables_on(gauss, N, 1);
  Eigen::MatrixXd m(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int j = 0; j <= N; ++j) {
      double sum = 0.0;
      for (std::size_t l = 0; l < tabs.size(); ++l) {
        sum += gauss.weights[l] * g_star[l] * tabs[l](1, k) * tabs[l](0, j);
      }
      m(k, j) = s * sum;
    }
  }
  if (form.kind == DeclaredForm::Kind::kPolynomial) {
    out.kind = AdvectionStiffness::Kind::kBanded;
    out.banded = BandedMatrix::from_dense(m, form.degree, form.degree, kBandTolerance,
                                          "stiffness matrix S^a");
  } else {
    out.kind = AdvectionStiffness::Kind::kDense;
    out.dense = std::move(m);
  }
  return out;
}

TransitionMatrices transition_matrices(const pg::BasisCoeffs& basis,
                                       const QuadratureRule& dispersive,
                                       const QuadratureRule& gauss) {
  require_dispersive(basis, dispersive);
  const int N = basis.N;
  const int n = basis.size();
  if (static_cast<int>(gauss.nodes.size()) != N + 1) {
    throw std::invalid_argument("transition_matrices: Gauss rule does not match N");
  }

  const NodalBasis phi = trial_on_rule(basis, gauss);
  const auto gtabs = tables_on(gauss, N, 0);
  Eigen::MatrixXd da(n, N + 1);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= N; ++j) {
      double sum = 0.0;
      for (std::size_t l = 0; l < gtabs.size(); ++l) {
        sum += gauss.weights[l] * phi.values[k][l] * gtabs[l](0, j);
      }
      da(k, j) = sum;
    }
  }

  const NodalBasis psi = dual_on_rule(basis, dispersive);
  const auto dtabs = tables_on(dispersive, N, 0);
  Eigen::MatrixXd ad(N + 1, n);
  std::vector<double> lk(dispersive.nodes.size());
  for (int k = 0; k <= N; ++k) {
    for (std::size_t l = 0; l < dtabs.size(); ++l) lk[l] = dtabs[l](0, k);
    const double dlk = orthopoly::legendre_endpoint(k, 1, 1);
    for (int j = 0; j < n; ++j) {
      ad(k, j) = ip(dispersive, lk, dlk, psi.values[j], psi.right_derivative[j]);
    }
  }

  TransitionMatrices out;
  out.da = BandedMatrix::from_dense(da, 0, 3, kBandTolerance, "transition matrix M^da");
  // deg L_N + deg psi_{N-4} = 2N - 1 exceeds the dispersive rule's exactness,
  // so (N, N-4) is the one entry allowed off the 4-diagonal band.
  Eigen::MatrixXd ad_band = ad;
  ad_band(N, N - 4) = 0.0;
  (void)BandedMatrix::from_dense(ad_band, 3, 0, kBandTolerance, "transition matrix M^ad");
  out.ad = BandedMatrix::from_dense(ad, 4, 0, kBandTolerance, "transition matrix M^ad");
  for (int k = 4; k < N; ++k) out.ad.at(k, k - 4) = 0.0;
  return out;
}

DifferentiationPair differentiation_pair(const QuadratureRule& gauss) {
  const int N = static_cast<int>(gauss.nodes.size()) - 1;
  const auto tabs = tables_on(gauss, N + 2, 1);
  Eigen::MatrixXd f(N + 1, N + 1), g(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int j = 0; j <= N; ++j) {
      double sf = 0.0, sg = 0.0;
      for (std::size_t l = 0; l < tabs.size(); ++l) {
        const double test = tabs[l](0, j) - tabs[l](0, j + 2);
        sf += gauss.weights[l] * tabs[l](1, k) * test;
        sg += gauss.weights[l] * tabs[l](0, k) * test;
      }
      f(k, j) = sf;
      g(k, j) = sg;
    }
  }
  DifferentiationPair out;
  out.F = BandedMatrix::from_dense(f, 1, 0, kBandTolerance, "differentiation matrix F");
  out.G = BandedMatrix::from_dense(g, 2, 0, kBandTolerance, "differentiation matrix G");
  out.gt = std::make_shared<const BandedLU>(out.G.transposed());
  return out;
}

std::vector<double> DifferentiationPair::derivative(std::span<const double> coeffs) const {
  const std::vector<double> rhs = F.multiply_transpose(coeffs);
  return gt->solve(rhs);
}

}  // namespace kdvsplit::assembly
