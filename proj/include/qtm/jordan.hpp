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

#include "qtm/spectral.hpp"

namespace qtm {

/// Jordan chain of the third-order EP of the reduced Liouvillian at eta = 0:
/// (L - lambda_bar) rho4  = 0
/// (L - lambda_bar) rho'  = alpha rho4
/// (L - lambda_bar) rho'' = beta  rho'
/// with the left chain running the opposite way. rho', rho'' are Hermitian
/// with unit Hilbert-Schmidt norm; alpha and beta absorb the scales.
struct JordanBlockData {
  double lambda_bar = 0.0;  // -Gamma/2
  Mat4 rho4, rho_prime, rho_dprime;
  Mat4 sigma4, sigma_prime, sigma_dprime;  // duals within the full basis
  Complex alpha{}, beta{};
  int geometric_multiplicity = 0;  // dim ker(L - lambda_bar)
  int algebraic_multiplicity = 0;  // dim ker(L - lambda_bar)^3
};

/// Constructs the chain at the eta = 0 EP. Requires |eta| < eta_switch
/// (throws NumericError "not an EP" otherwise); g is snapped to
/// |DeltaGamma|/2 internally so the defect is exact to round-off.
JordanBlockData jordan_chain(const MachineParams& p);

/// Complete generalized eigenbasis at the EP: steady state, rho2, rho3 and
/// the Jordan chain, with bi-orthonormal duals. This is what the EP
/// propagation path consumes.
struct EPDecomposition {
  MachineParams params;       // with g snapped to the critical value
  BathRates rates;
  JordanBlockData jordan;
  Mat4 steady;                // unit trace
  Mat4 rho2, rho3;            // eigenmatrices of -Gamma and -Gamma/2
  Mat4 sigma1, sigma2, sigma3;
  double lambda2 = 0.0;       // -Gamma
};

EPDecomposition ep_decomposition(const MachineParams& p);

}  // namespace qtm
