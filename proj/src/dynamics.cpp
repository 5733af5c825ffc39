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

#include "qtm/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace qtm {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Spectral: return "spectral";
    case Provenance::SpectralEP: return "spectral_ep";
    case Provenance::ODE: return "ode";
  }
  return "?";
}

std::string to_string(DampingRegime r) {
  switch (r) {
    case DampingRegime::Overdamped: return "overdamped";
    case DampingRegime::Underdamped: return "underdamped";
    case DampingRegime::Critical: return "critical";
  }
  return "?";
}

std::vector<double> log_grid(double t_min, double t_max, int points) {
  if (!(t_min > 0) || !(t_max > t_min) || points < 2)
    throw ConfigError("log_grid: need 0 < t_min < t_max and points >= 2");
  std::vector<double> t(points);
  for (int i = 0; i < points; ++i)
    t[i] = t_min * std::pow(t_max / t_min, double(i) / (points - 1));
  return t;
}

std::vector<double> linear_grid(double t_min, double t_max, int points) {
  if (!(t_max > t_min) || points < 2)
    throw ConfigError("linear_grid: need t_min < t_max and points >= 2");
  std::vector<double> t(points);
  for (int i = 0; i < points; ++i)
    t[i] = t_min + (t_max - t_min) * double(i) / (points - 1);
  return t;
}

std::vector<double> default_time_grid(const MachineParams& p, int points) {
  const BathRates r = derived_rates(p);
  return log_grid(1e-2 / p.epsilon, 20.0 / r.Gamma, points);
}

namespace {

VecX state_to_rep(const Mat4& rho, int dim) {
  if (dim == 16) return vec(rho);
  if (!in_reduced_subspace(rho, dim))
    throw NumericError(
        "state outside the reduced subspace (coherences beyond the dim-" +
        std::to_string(dim) + " pattern)");
  return pack_reduced(rho, dim);
}

Mat4 rep_to_state(const VecX& v, int dim) {
  if (dim == 16) return devec(v);
  return unpack_reduced(v);
}

}  // namespace

OverlapCoefficients overlap_coefficients(const SpectralData& sd, const Mat4& rho0) {
  if (sd.left.empty())
    throw NumericError("overlap_coefficients: defective basis, use the EP path");
  const VecX v = state_to_rep(rho0, sd.dim);
  OverlapCoefficients oc;
  oc.c.resize(sd.dim);
  for (int i = 0; i < sd.dim; ++i) {
    const VecX s = sd.dim == 16 ? vec(sd.left[i]) : VecX(sd.left[i]);
    oc.c[i] = s.dot(v);  // Tr(sigma^dag rho) = <vec sigma, vec rho>
  }
  return oc;
}

OverlapCoefficients overlap_coefficients(const EPDecomposition& ep, const Mat4& rho0) {
  if (!in_reduced_subspace(rho0, 6))
    throw NumericError("EP path requires a state in the dim-6 subspace");
  OverlapCoefficients oc;
  oc.c = {hs_inner(ep.sigma1, rho0), hs_inner(ep.sigma2, rho0),
          hs_inner(ep.sigma3, rho0), hs_inner(ep.jordan.sigma4, rho0),
          hs_inner(ep.jordan.sigma_prime, rho0),
          hs_inner(ep.jordan.sigma_dprime, rho0)};
  return oc;
}

Trajectory propagate_spectral(const Mat4& rho0, const std::vector<double>& t,
                              const SpectralData& sd) {
  if (sd.defective_flag)
    throw NumericError(
        "propagate_spectral: defective spectral data, use propagate_spectral_ep");
  validate_density_matrix(rho0, "propagate_spectral rho0");
  const OverlapCoefficients oc = overlap_coefficients(sd, rho0);
  Trajectory traj;
  traj.t = t;
  traj.provenance = Provenance::Spectral;
  traj.states.reserve(t.size());
  const int d = sd.dim;
  std::vector<VecX> right(d);
  for (int i = 0; i < d; ++i)
    right[i] = d == 16 ? vec(sd.right[i]) : VecX(sd.right[i]);
  for (double tk : t) {
    VecX acc = VecX::Zero(d);
    for (int i = 0; i < d; ++i)
      acc += oc.c[i] * std::exp(sd.eigenvalues[i] * tk) * right[i];
    traj.states.push_back(rep_to_state(acc, d));
  }
  return traj;
}

Trajectory propagate_spectral_ep(const Mat4& rho0, const std::vector<double>& t,
                                 const EPDecomposition& ep) {
  validate_density_matrix(rho0, "propagate_spectral_ep rho0");
  const OverlapCoefficients oc = overlap_coefficients(ep, rho0);
  const Complex c1 = oc.c[0], c2 = oc.c[1], c3 = oc.c[2], c4 = oc.c[3],
                c5 = oc.c[4], c6 = oc.c[5];
  const Complex a = ep.jordan.alpha, b = ep.jordan.beta;
  const double lam = ep.jordan.lambda_bar;
  Trajectory traj;
  traj.t = t;
  traj.provenance = Provenance::SpectralEP;
  traj.states.reserve(t.size());
  for (double tk : t) {
    const double e1 = std::exp(ep.lambda2 * tk);
    const double e2 = std::exp(lam * tk);
    Mat4 st = c1 * ep.steady + c2 * e1 * ep.rho2 + c3 * e2 * ep.rho3 +
              (c4 + a * c5 * tk + a * b * c6 * tk * tk / 2.0) * e2 * ep.jordan.rho4 +
              (c5 + b * c6 * tk) * e2 * ep.jordan.rho_prime +
              c6 * e2 * ep.jordan.rho_dprime;
    traj.states.push_back(st);
  }
  return traj;
}

namespace {

// Fixed-size RK4 kernels; the 16-dim path is the hot one.
template <int N>
void rk4_run(const MatX& Ld, VecX& state, const std::vector<double>& t,
             double h_max, std::vector<VecX>& out) {
  using VecN = Eigen::Matrix<Complex, N, 1>;
  using MatN = Eigen::Matrix<Complex, N, N>;
  const MatN L = Ld;
  VecN v = state;
  double tcur = 0.0;
  out.push_back(state);
  VecN k1, k2, k3, k4;
  for (size_t idx = 1; idx < t.size(); ++idx) {
    const double dt = t[idx] - tcur;
    const long n = std::max(1L, static_cast<long>(std::ceil(dt / h_max)));
    const double h = dt / double(n);
    for (long s = 0; s < n; ++s) {
      k1.noalias() = L * v;
      k2.noalias() = L * (v + (h / 2) * k1);
      k3.noalias() = L * (v + (h / 2) * k2);
      k4.noalias() = L * (v + h * k3);
      v += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    tcur = t[idx];
    out.push_back(v);
  }
}

}  // namespace

Trajectory propagate_ode(const Liouvillian& L, const MachineParams& p,
                         const Mat4& rho0, const std::vector<double>& t) {
  validate_density_matrix(rho0, "propagate_ode rho0");
  if (t.empty() || t[0] < 0) throw ConfigError("propagate_ode: bad grid");
  const BathRates r = derived_rates(p);
  const double h_max =
      0.005 / std::max({p.epsilon, r.Gamma, p.g});
  if (!(h_max > 0) || !std::isfinite(h_max))
    throw NumericError("propagate_ode: step size underflow");
  VecX v0 = state_to_rep(rho0, L.dim);

  // integrate from 0 to the first grid point too
  std::vector<double> grid;
  grid.reserve(t.size() + 1);
  grid.push_back(0.0);
  for (double x : t) grid.push_back(x);

  std::vector<VecX> states;
  states.reserve(grid.size());
  switch (L.dim) {
    case 16: rk4_run<16>(L.matrix, v0, grid, h_max, states); break;
    case 8: rk4_run<8>(L.matrix, v0, grid, h_max, states); break;
    case 6: rk4_run<6>(L.matrix, v0, grid, h_max, states); break;
    default: throw ConfigError("propagate_ode: unsupported dim");
  }

  Trajectory traj;
  traj.t = t;
  traj.provenance = Provenance::ODE;
  traj.states.reserve(t.size());
  for (size_t i = 1; i < states.size(); ++i) {
    Mat4 rho = rep_to_state(states[i], L.dim);
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (drift > 1e-12) {
      rho /= rho.trace().real();
      ++traj.trace_renormalizations;
    }
    traj.states.push_back(rho);
  }
  return traj;
}

DampingRegime classify_damping(const MachineParams& p) {
  if (!(p.g > 0))
    throw ConfigError("classify_damping: no EP exists for decoupled qubits");
  const BathRates r = derived_rates(p);
  if (std::abs(r.eta) < eta_switch(r.Gamma)) return DampingRegime::Critical;
  if (r.eta.real() > 0) return DampingRegime::Overdamped;
  return DampingRegime::Underdamped;
}

RatioSeries ratio_R(const MachineParams& params_ep,
                    const MachineParams& params_nonep, const Mat4& rho0,
                    const std::vector<double>& t) {
  const EPDecomposition ep = ep_decomposition(params_ep);
  const Liouvillian L6 = build_reduced_liouvillian(params_nonep, 6);
  const BathRates r_nonep = derived_rates(params_nonep);
  const SpectralData sd = numeric_spectral_data(L6, &r_nonep);
  const Trajectory num = propagate_spectral_ep(rho0, t, ep);
  const Trajectory den = propagate_spectral(rho0, t, sd);
  const Mat4 ss_nonep = sd.dim == 16 ? Mat4(devec(VecX(sd.right[0])))
                                     : unpack_reduced(VecX(sd.right[0]));
  RatioSeries out;
  out.t.reserve(t.size());
  out.R.reserve(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    const double Tn = trace_distance(num.states[i], ep.steady);
    const double Td = trace_distance(den.states[i], ss_nonep);
    if (Td < 1e-300) {
      out.truncated = true;
      break;
    }
    out.t.push_back(t[i]);
    out.R.push_back(Tn / Td);
  }
  return out;
}

InitialStateSpec initial_state_spec_from_string(const std::string& s) {
  InitialStateSpec spec;
  if (s == "thermal_product") {
    spec.kind = InitialStateKind::ThermalProduct;
  } else if (s == "ground") {
    spec.kind = InitialStateKind::Ground;
  } else if (s == "singlet") {
    spec.kind = InitialStateKind::Singlet;
  } else if (s.rfind("ep_subspace", 0) == 0) {
    spec.kind = InitialStateKind::EPSubspace;
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
      const std::string rest = s.substr(colon + 1);
      const auto comma = rest.find(',');
      if (comma == std::string::npos)
        throw ConfigError("ep_subspace state needs two weights: " + s);
      try {
        spec.w_prime = std::stod(rest.substr(0, comma));
        spec.w_dprime = std::stod(rest.substr(comma + 1));
      } catch (const std::exception&) {
        throw ConfigError("bad ep_subspace weights: " + s);
      }
    }
  } else {
    throw ConfigError("unknown initial state: " + s);
  }
  return spec;
}

std::string initial_state_label(const InitialStateSpec& s) {
  switch (s.kind) {
    case InitialStateKind::ThermalProduct: return "thermal_product";
    case InitialStateKind::Ground: return "ground";
    case InitialStateKind::Singlet: return "singlet";
    case InitialStateKind::EPSubspace: {
      auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", x);
        std::string v(buf);
        for (char& ch : v)
          if (ch == '.' || ch == '-') ch = ch == '.' ? 'p' : 'm';
        return v;
      };
      return "ep_subspace_" + fmt(s.w_prime) + "_" + fmt(s.w_dprime);
    }
  }
  return "?";
}

Mat4 ep_subspace_state(const EPDecomposition& ep, double w_prime,
                       double w_dprime) {
  const Mat4 dir = w_prime * ep.jordan.rho_prime + w_dprime * ep.jordan.rho_dprime;
  if (hs_norm(dir) == 0.0) return ep.steady;
  auto min_eig = [&](double s) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(ep.steady + s * dir,
                                           Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };
  double hi = 1.0;
  while (min_eig(hi) >= -1e-12 && hi < 1e9) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (min_eig(mid) >= -1e-12 ? lo : hi) = mid;
  }
  return ep.steady + 0.9 * lo * dir;
}

Mat4 initial_state(const InitialStateSpec& spec, const MachineParams& p) {
  switch (spec.kind) {
    case InitialStateKind::Ground: {
      Mat4 rho = Mat4::Zero();
      rho(3, 3) = 1.0;
      return rho;
    }
    case InitialStateKind::Singlet: {
      Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
      v(1) = 1.0 / std::sqrt(2.0);
      v(2) = -1.0 / std::sqrt(2.0);
      return v * v.adjoint();
    }
    case InitialStateKind::ThermalProduct: {
      auto gibbs = [&](double T) {
        Mat2 q = Mat2::Zero();
        if (T == 0.0) {
          q(1, 1) = 1.0;
        } else {
          const double z = std::exp(-p.epsilon / T);
          q(0, 0) = z / (1.0 + z);
          q(1, 1) = 1.0 / (1.0 + z);
        }
        return q;
      };
      Mat4 rho = Mat4::Zero();
      const Mat2 q1 = gibbs(p.T1), q2 = gibbs(p.T2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          rho(2 * i + j, 2 * i + j) = q1(i, i) * q2(j, j);
      return rho;
    }
    case InitialStateKind::EPSubspace:
      return ep_subspace_state(ep_decomposition(p), spec.w_prime, spec.w_dprime);
  }
  throw ConfigError("initial_state: bad kind");
}

namespace {

int first_strict_extremum(const std::vector<double>& v) {
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    const double dl = v[i] - v[i - 1];
    const double dr = v[i + 1] - v[i];
    if ((dl > 0 && dr < 0) || (dl < 0 && dr > 0)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

int count_crossings(const std::vector<double>& values, double steady,
                    double dead_band_rel) {
  const double dead = dead_band_rel * std::abs(steady);
  int flips = 0;
  int prev = 0;
  for (double v : values) {
    const double x = v - steady;
    const int s = std::abs(x) <= dead ? 0 : (x > 0 ? 1 : -1);
    if (s != 0) {
      if (prev != 0 && s != prev) ++flips;
      prev = s;
    }
  }
  return flips;
}

int count_crossings_after_first_extremum(const std::vector<double>& values,
                                         double steady, double dead_band_rel) {
  const int k = first_strict_extremum(values);
  if (k < 0) return 0;
  std::vector<double> tail(values.begin() + k, values.end());
  return count_crossings(tail, steady, dead_band_rel);
}

}  // namespace qtm
