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

#include "qtm/liouvillian.hpp"

namespace qtm {

/// Auxiliary quantities entering the closed-form local spectrum. alpha_s and
/// beta_s are named with a suffix to keep them apart from the Jordan-chain
/// coefficients.
struct SpectralAux {
  Complex eta;
  double alpha_s = 0.0;    // -g^2 + (Gamma1^2 + Gamma2^2)/8
  Complex beta_s;          // sqrt(4 (DeltaGamma Gamma)^2 - 16 g^2 delta)/8
  double delta = 0.0;
  double beta_radicand = 0.0;  // 4 (DeltaGamma Gamma)^2 - 16 g^2 delta
};

SpectralAux spectral_aux(const BathRates& r);

/// Analogous quantities for the global equation, built from the
/// transition-resolved rates at eps -+ g.
struct GlobalSpectralAux {
  double X = 0.0;  // from the eps - g rates
  double Y = 0.0;  // from the eps + g rates
  double eps_minus = 0.0;
  double eps_plus = 0.0;
  double Gamma_total = 0.0;
};

GlobalSpectralAux global_spectral_aux(const MachineParams& p);

/// Closed-form spectra. Order is fixed: the reduced list is
/// (0, -Gamma, -Gamma/2, -Gamma/2, -Gamma/2 - eta, -Gamma/2 + eta); the local
/// 16-list continues with -+2i eps - Gamma/2 and the sqrt(alpha -+ beta)
/// quartet pairs; principal branches throughout.
std::vector<Complex> analytic_spectrum_reduced(const BathRates& r);
std::vector<Complex> analytic_spectrum_reduced(const MachineParams& p);
std::vector<Complex> analytic_spectrum_local(const MachineParams& p);
std::vector<Complex> analytic_spectrum_local(const BathRates& r, double epsilon);
/// Global closed forms; valid for g > 0 (at g = 0 the builder merges the
/// degenerate-frequency jump operators and these forms do not apply).
std::vector<Complex> analytic_spectrum_global(const MachineParams& p);

/// The closed-form steady state (unit trace, Hermitian, PSD).
Mat4 analytic_steady_state(const MachineParams& p);
Mat4 analytic_steady_state(const BathRates& r);

/// Closed-form right eigenmatrices of the reduced Liouvillian,
/// Hilbert-Schmidt normalized, indices 1..6 (1 = steady state). Indices 5, 6
/// require |eta| >= eta_switch; below that the formulas are singular and an
/// EP-singularity error is thrown.
std::vector<Mat4> analytic_eigenmatrices_reduced(const MachineParams& p);

/// Sort key used everywhere: descending real part, then ascending imaginary.
void sort_spectrum(std::vector<Complex>& v);

/// Greedy nearest-neighbour matching of two equal-size spectra after sorting;
/// returns the largest pairwise distance.
double match_spectra(std::vector<Complex> a, std::vector<Complex> b);

struct CoalescenceDiagnostics {
  double min_eigenvalue_gap = 0.0;
  double min_eigenmatrix_distance = 0.0;  // after phase alignment
  double basis_condition = 0.0;           // condition number of the eigenbasis
};

/// Bi-orthonormal spectral decomposition of a Liouvillian.
struct SpectralData {
  std::vector<Complex> eigenvalues;  // sorted, lambda_1 = 0 first
  std::vector<MatX> right;           // rho_i as matrices (4x4 or reduced-packed)
  std::vector<MatX> left;            // sigma_i, Tr(sigma_i^dag rho_j) = delta_ij
  int dim = 0;
  LiouvillianKind kind{};
  bool defective_flag = false;
  CoalescenceDiagnostics diagnostics;
};

/// Eigendecomposition with Hermitian right eigenmatrices for real eigenvalues
/// (complex pairs are stored adjoint-conjugate), unit Hilbert-Schmidt norms
/// except the steady state (unit trace), and left duals constructed
/// bi-orthonormal. Sets defective_flag (and leaves the basis unreliable) when
/// the eigenbasis condition number exceeds 1e8 or |eta| < eta_switch for the
/// local kinds; propagation must then go through the Jordan path.
SpectralData numeric_spectral_data(const Liouvillian& L,
                                   const BathRates* rates = nullptr);

/// Diagnostics for a cluster of eigenvalue indices of L (certifies an EP
/// numerically: gap, eigenvector coalescence, basis conditioning).
CoalescenceDiagnostics coalescence_diagnostics(const Liouvillian& L,
                                               const std::vector<int>& cluster);

}  // namespace qtm
