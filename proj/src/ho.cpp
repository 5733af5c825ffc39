// Copyright 2026 The qtm-ep Authors
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

#include "qtm/ho.hpp"

#include <cmath>

namespace qtm {

void HOParams::validate() const {
  if (!(m > 0) || !(k > 0)) throw ConfigError("HO needs m > 0 and k > 0");
  if (gamma < 0) throw ConfigError("HO damping must be >= 0");
}

Eigen::Matrix2d ho_matrix(const HOParams& params) {
  params.validate();
  Eigen::Matrix2d M;
  M << -2.0 * params.gamma / params.m, -params.k, 1.0 / params.m, 0.0;
  return M;
}

std::vector<HOState> ho_propagate(const HOParams& params, const HOState& f0,
                                  const std::vector<double>& t) {
  const Eigen::Matrix2d M = ho_matrix(params);
  const Eigen::Vector2d v0(f0.p, f0.x);
  std::vector<HOState> out;
  out.reserve(t.size());
  if (std::abs(params.discriminant()) < 1e-12 * params.m * params.k) {
    // Jordan path: (M - lambda) v2 = ((gamma^2+1)/m) v1 with v1 = (-gamma, 1)
    // and v2 = (1, gamma), so e^{Mt} v2 = e^{lambda t}(v2 + c t v1).
    const double lam = -params.gamma / params.m;
    const Eigen::Vector2d v1(-params.gamma, 1.0);
    const Eigen::Vector2d v2(1.0, params.gamma);
    Eigen::Matrix2d S;
    S << v1, v2;
    const Eigen::Vector2d a = S.partialPivLu().solve(v0);
    const double c = (params.gamma * params.gamma + 1.0) / params.m;
    for (double tk : t) {
      const Eigen::Vector2d f =
          std::exp(lam * tk) * (a(0) * v1 + a(1) * (v2 + c * tk * v1));
      out.push_back({f(0), f(1)});
    }
    return out;
  }
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(M.cast<Complex>());
  const Eigen::Vector2cd a =
      es.eigenvectors().partialPivLu().solve(v0.cast<Complex>());
  for (double tk : t) {
    Eigen::Vector2cd f = Eigen::Vector2cd::Zero();
    for (int i = 0; i < 2; ++i)
      f += a(i) * std::exp(es.eigenvalues()(i) * tk) * es.eigenvectors().col(i);
    out.push_back({f(0).real(), f(1).real()});
  }
  return out;
}

std::vector<HOState> ho_propagate_rk4(const HOParams& params, const HOState& f0,
                                      const std::vector<double>& t) {
  const Eigen::Matrix2d M = ho_matrix(params);
  const double scale =
      std::max({std::abs(M(0, 0)), std::abs(M(0, 1)), 1.0 / params.m, 1.0});
  const double h_max = 0.005 / scale;
  Eigen::Vector2d v(f0.p, f0.x);
  std::vector<HOState> out;
  out.reserve(t.size());
  double tcur = 0.0;
  bool first = true;
  for (double tk : t) {
    if (first && tk == 0.0) {
      out.push_back({v(0), v(1)});
      first = false;
      continue;
    }
    const double dt = tk - tcur;
    const long n = std::max(1L, static_cast<long>(std::ceil(dt / h_max)));
    const double h = dt / double(n);
    for (long s = 0; s < n; ++s) {
      const Eigen::Vector2d k1 = M * v;
      const Eigen::Vector2d k2 = M * (v + (h / 2) * k1);
      const Eigen::Vector2d k3 = M * (v + (h / 2) * k2);
      const Eigen::Vector2d k4 = M * (v + h * k3);
      v += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    tcur = tk;
    out.push_back({v(0), v(1)});
    first = false;
  }
  return out;
}

RatioSeries ho_ratio(const HOParams& params_ep, const HOParams& params_nonep,
                     const HOState& f0, const std::vector<double>& t) {
  HOParams pe = params_ep;
  pe.gamma = std::sqrt(pe.m * pe.k);  // pin the EP exactly
  if (params_nonep.m != pe.m || params_nonep.k != pe.k)
    throw ConfigError("ho_ratio: comparator must share m and k");
  const auto fe = ho_propagate(pe, f0, t);
  const auto fn = ho_propagate(params_nonep, f0, t);
  RatioSeries out;
  for (size_t i = 0; i < t.size(); ++i) {
    const double dn = std::hypot(fn[i].p, fn[i].x);
    if (dn < 1e-300) {
      out.truncated = true;
      break;
    }
    out.t.push_back(t[i]);
    out.R.push_back(std::hypot(fe[i].p, fe[i].x) / dn);
  }
  return out;
}

DampingRegime ho_regime(const HOParams& params, HOConvention convention) {
  params.validate();
  double disc = params.discriminant();
  if (convention == HOConvention::MainTextForm) {
    const double zeta = params.gamma / (2.0 * std::sqrt(params.k * params.m));
    disc = (zeta - 1.0) * std::abs(params.m * params.k);
  }
  if (std::abs(disc) < 1e-12 * params.m * params.k) return DampingRegime::Critical;
  return disc > 0 ? DampingRegime::Overdamped : DampingRegime::Underdamped;
}

}  // namespace qtm
