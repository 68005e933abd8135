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

#include "kdvsplit/harness/functions.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "kdvsplit/errors.hpp"

namespace kdvsplit::harness {
namespace {

using AdvectionFactory = std::function<Advection(const std::vector<double>&)>;
using InitialFactory = std::function<InitialValue(const std::vector<double>&)>;

void require_count(const std::vector<double>& p, std::size_t lo, std::size_t hi,
                   const std::string& field) {
  if (p.size() < lo || p.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo)
                                : std::to_string(lo) + ".." + std::to_string(hi);
    throw ConfigError(0, field,
                      "expected " + want + " parameters, got " + std::to_string(p.size()));
  }
}

Advection constant(const std::vector<double>& p) {
  require_count(p, 1, 1, "g.params");
  const double c = p[0];
  return {[c](double, int d) { return d == 0 ? c : 0.0; },
          assembly::DeclaredForm::polynomial(0), c};
}

Advection polynomial(const std::vector<double>& p) {
  require_count(p, 1, 64, "g.params");
  std::vector<double> c = p;
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  const int degree = static_cast<int>(c.size()) - 1;
  auto g = [c](double x, int d) {
    double v = 0.0;
    if (d == 0) {
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    } else {
      for (std::size_t i = c.size() - 1; i >= 1; --i) v = v * x + static_cast<double>(i) * c[i];
    }
    return v;
  };
  Advection out{g, assembly::DeclaredForm::polynomial(degree), std::nullopt};
  if (degree == 0) out.constant = c[0];
  return out;
}

Advection gauss3(const std::vector<double>& p) {
  require_count(p, 0, 0, "g.params");
  auto g = [](double x, int d) {
    double v = 0.0;
    for (double c : {-6.0, 0.0, 6.0}) {
      const double e = std::exp(-(x - c) * (x - c));
      v += d == 0 ? e : -2.0 * (x - c) * e;
    }
    return d == 0 ? v - 0.5 : v;
  };
  return {g, assembly::DeclaredForm::general(), std::nullopt};
}

InitialValue gaussian(const std::vector<double>& p) {
  require_count(p, 2, 2, "ic.params");
  const double center = p[0];
  const double width = p[1];
  if (!(width > 0.0) || !std::isfinite(center)) {
    throw ConfigError(0, "ic.params", "gaussian needs a finite center and width > 0");
  }
  InitialValue out;
  out.u0 = [center, width](double x, int d) {
    const double z = (x - center) / width;
    const double e = std::exp(-z * z);
    return d == 0 ? e : -2.0 * z / width * e;
  };
  out.fourier = [center, width](double k) {
    const double mag = width * std::sqrt(std::numbers::pi) * std::exp(-0.25 * width * width * k * k);
    return std::polar(mag, -k * center);
  };
  // e^{-w^2 k^2 / 4} < 1e-18
  out.bandwidth = 2.0 * std::sqrt(18.0 * std::log(10.0)) / width;
  return out;
}

const std::map<std::string, AdvectionFactory>& advection_registry() {
  static const std::map<std::string, AdvectionFactory> r{
      {"constant", constant}, {"polynomial", polynomial}, {"gauss3", gauss3}};
  return r;
}

const std::map<std::string, InitialFactory>& initial_registry() {
  static const std::map<std::string, InitialFactory> r{{"gaussian", gaussian}};
  return r;
}

template <class Map>
std::vector<std::string> keys(const Map& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

}  // namespace

Advection make_advection(const FunctionSpec& spec) {
  const auto& r = advection_registry();
  const auto it = r.find(spec.kind);
  if (it == r.end()) throw ConfigError(0, "g.kind", "unknown advection '" + spec.kind + "'");
  return it->second(spec.params);
}

InitialValue make_initial(const FunctionSpec& spec) {
  const auto& r = initial_registry();
  const auto it = r.find(spec.kind);
  if (it == r.end()) {
    throw ConfigError(0, "ic.kind", "unknown initial value '" + spec.kind + "'");
  }
  return it->second(spec.params);
}

std::vector<std::string> advection_kinds() { return keys(advection_registry()); }
std::vector<std::string> initial_kinds() { return keys(initial_registry()); }

}  // namespace kdvsplit::harness
