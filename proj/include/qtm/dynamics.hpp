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

#pragma once

#include <vector>

#include "qtm/jordan.hpp"
#include "qtm/spectral.hpp"

namespace qtm {

enum class Provenance { Spectral, SpectralEP, ODE };
std::string to_string(Provenance p);

struct Trajectory {
  std::vector<double> t;
  std::vector<Mat4> states;
  Provenance provenance{};
  int trace_renormalizations = 0;  // ODE path only
};

/// Log-spaced default grid on [1e-2/eps, 20/Gamma], 400 points.
std::vector<double> default_time_grid(const MachineParams& p, int points = 400);
std::vector<double> log_grid(double t_min, double t_max, int points);
std::vector<double> linear_grid(double t_min, double t_max, int points);

struct OverlapCoefficients {
  std::vector<Complex> c;  // c_1..c_d against the (generalized) left basis
};

/// c_i = Tr(sigma_i^dag rho0). The reduced paths require rho0 inside the
/// corresponding coherence subspace (throws NumericError otherwise).
OverlapCoefficients overlap_coefficients(const SpectralData& sd, const Mat4& rho0);
OverlapCoefficients overlap_coefficients(const EPDecomposition& ep, const Mat4& rho0);

/// Non-EP propagation: rho(t) = rho_ss + sum_i c_i e^{lambda_i t} rho_i.
/// Refuses defective spectral data (must use the EP path).
Trajectory propagate_spectral(const Mat4& rho0, const std::vector<double>& t,
                              const SpectralData& sd);

/// EP propagation with the degree-2 polynomial factors in the Jordan sector.
Trajectory propagate_spectral_ep(const Mat4& rho0, const std::vector<double>& t,
                                 const EPDecomposition& ep);

/// Fixed-step classical RK4 on the vectorized equation; step
/// h <= 0.005 / max(eps, Gamma, g). Trace is renormalized (and counted) only
/// if the drift exceeds 1e-12.
Trajectory propagate_ode(const Liouvillian& L, const MachineParams& p,
                         const Mat4& rho0, const std::vector<double>& t);

enum class DampingRegime { Overdamped, Underdamped, Critical };
std::string to_string(DampingRegime r);

/// zeta_tilde = DeltaGamma/(2g): > 1 overdamped, < 1 underdamped,
/// |eta| < eta_switch critical. g = 0 has no EP and throws.
DampingRegime classify_damping(const MachineParams& p);

struct RatioSeries {
  std::vector<double> t;
  std::vector<double> R;
  bool truncated = false;  // denominator underflow before the end of the grid
};

/// R(t) = T(rho_EP(t), rho_ss_EP) / T(rho(t), rho_ss); numerator through the
/// Jordan path at params_ep, denominator through the spectral path.
RatioSeries ratio_R(const MachineParams& params_ep,
                    const MachineParams& params_nonep, const Mat4& rho0,
                    const std::vector<double>& t);

enum class InitialStateKind { ThermalProduct, Ground, Singlet, EPSubspace };

struct InitialStateSpec {
  InitialStateKind kind = InitialStateKind::ThermalProduct;
  double w_prime = 1.0;   // EPSubspace direction weights
  double w_dprime = 1.0;
};

InitialStateSpec initial_state_spec_from_string(const std::string& s);
std::string initial_state_label(const InitialStateSpec& s);

/// The paper's initial states. EPSubspace builds
/// rho_ss + s (w' rho' + w'' rho'') with s = 0.9 x the largest
/// positivity-preserving scale (binary search on the smallest eigenvalue).
Mat4 initial_state(const InitialStateSpec& spec, const MachineParams& p);
Mat4 ep_subspace_state(const EPDecomposition& ep, double w_prime, double w_dprime);

/// Steady-value crossing count with a relative dead band, and the same count
/// restricted to after the first strict extremum of the series.
int count_crossings(const std::vector<double>& values, double steady,
                    double dead_band_rel = 1e-12);
int count_crossings_after_first_extremum(const std::vector<double>& values,
                                         double steady,
                                         double dead_band_rel = 1e-12);

}  // namespace qtm
