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

#include "qtm/observables.hpp"

#include <algorithm>
#include <cmath>

namespace qtm {

namespace {

Mat4 dissipate(const Mat4& A, const Mat4& rho) {
  const Mat4 AdA = A.adjoint() * A;
  return A * rho * A.adjoint() - 0.5 * (AdA * rho + rho * AdA);
}

}  // namespace

double heat_current(const Mat4& rho, const MachineParams& p, int bath_index) {
  if (bath_index != 1 && bath_index != 2)
    throw ConfigError("heat_current: bath_index must be 1 or 2");
  const Mat4 H = ops::hamiltonian(p.epsilon, p.g);
  Mat4 drho = Mat4::Zero();
  if (p.regime == Regime::Local) {
    const BathRates r = derived_rates(p);
    const int k = bath_index - 1;
    drho = r.gamma_plus[k] * dissipate(ops::sigma_plus(bath_index), rho) +
           r.gamma_minus[k] * dissipate(ops::sigma_minus(bath_index), rho);
  } else {
    const GlobalRates r = global_rates(p);
    const int j = bath_index - 1;
    for (int a = 0; a < 2; ++a) {
      const Mat4 A = global_jump_operator(p, j, a);
      drho += r.rate[j][a].second * dissipate(A, rho);
      drho += r.rate[j][a].first * dissipate(A.adjoint().eval(), rho);
    }
  }
  return (H * drho).trace().real();
}

double concurrence(const Mat4& rho) {
  Mat2 sy = Mat2::Zero();
  sy(0, 1) = Complex(0, -1);
  sy(1, 0) = Complex(0, 1);
  Mat4 yy = Mat4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          yy(2 * i + k, 2 * j + l) = sy(i, j) * sy(k, l);
  const Mat4 rt = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat4> es(rt, false);
  std::array<double, 4> mu{};
  for (int i = 0; i < 4; ++i)
    mu[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

ObservableSeries ObservableSeries::normalized_by_steady() const {
  if (steady_value == 0.0)
    throw NumericError("cannot normalize " + name + ": zero steady value");
  ObservableSeries out = *this;
  for (double& v : out.values) v /= steady_value;
  out.steady_value = 1.0;
  out.normalized = true;
  return out;
}

std::vector<ObservableSeries> trajectory_observables(
    const Trajectory& traj, const MachineParams& p, const Mat4& steady,
    const std::vector<std::string>& which) {
  std::vector<ObservableSeries> out;
  for (const std::string& name : which) {
    std::function<double(const Mat4&)> f;
    if (name == "J1") f = [&](const Mat4& r) { return heat_current(r, p, 1); };
    else if (name == "J2") f = [&](const Mat4& r) { return heat_current(r, p, 2); };
    else if (name == "concurrence") f = [](const Mat4& r) { return concurrence(r); };
    else if (name == "p11") f = [](const Mat4& r) { return r(0, 0).real(); };
    else if (name == "p22") f = [](const Mat4& r) { return r(1, 1).real(); };
    else if (name == "p33") f = [](const Mat4& r) { return r(2, 2).real(); };
    else if (name == "p44") f = [](const Mat4& r) { return r(3, 3).real(); };
    else if (name == "abs_rho23") f = [](const Mat4& r) { return std::abs(r(1, 2)); };
    else if (name == "trace_distance")
      f = [&](const Mat4& r) { return trace_distance(r, steady); };
    else
      throw ConfigError("unknown observable: " + name);
    ObservableSeries s;
    s.name = name;
    s.t = traj.t;
    s.values.reserve(traj.states.size());
    for (const Mat4& rho : traj.states) s.values.push_back(f(rho));
    s.steady_value = f(steady);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ObservableSeries> trajectory_observables(
    const Trajectory& traj, const MachineParams& p,
    const std::vector<std::string>& which) {
  return trajectory_observables(traj, p, analytic_steady_state(p), which);
}

}  // namespace qtm
