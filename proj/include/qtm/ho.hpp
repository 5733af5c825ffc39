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

#include <Eigen/Dense>

#include "qtm/dynamics.hpp"

namespace qtm {

/// Damped oscillator m x'' + 2 gamma x' + k x = 0; the discriminant
/// gamma^2 - m k classifies the regime and the EP sits at its zero. The
/// main-text convention (m x'' + gamma x' + k x = 0, zeta = gamma/(2 sqrt(km)))
/// is available behind the convention flag.
struct HOParams {
  double m = 1.0;
  double gamma = 1.0;
  double k = 1.0;

  void validate() const;
  double discriminant() const { return gamma * gamma - m * k; }
};

enum class HOConvention { AppendixForm, MainTextForm };

/// Phase-space state (p, x) with p = m x'.
struct HOState {
  double p = 0.0;
  double x = 0.0;
};

/// The non-Hermitian evolution matrix, rows (-2 gamma/m, -k; 1/m, 0).
Eigen::Matrix2d ho_matrix(const HOParams& params);

/// Eigendecomposition off the EP; at |gamma^2 - mk| < 1e-12 mk the Jordan
/// form with generalized eigenvector (1, gamma) is used.
std::vector<HOState> ho_propagate(const HOParams& params, const HOState& f0,
                                  const std::vector<double>& t);

/// RK4 on the phase-space equation; the ho_propagate oracle.
std::vector<HOState> ho_propagate_rk4(const HOParams& params, const HOState& f0,
                                      const std::vector<double>& t);

/// R_HO(t) = |f_EP(t)| / |f(t)| (Euclidean distance to the origin); the EP
/// run replaces gamma by sqrt(m k).
RatioSeries ho_ratio(const HOParams& params_ep, const HOParams& params_nonep,
                     const HOState& f0, const std::vector<double>& t);

DampingRegime ho_regime(const HOParams& params,
                        HOConvention convention = HOConvention::AppendixForm);

}  // namespace qtm
