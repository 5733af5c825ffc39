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

#include "qtm/jordan.hpp"

#include <cmath>

namespace qtm {

namespace {

// Orthonormal kernel basis of a real matrix, singular values below
// rtol * s_max counted as zero.
Eigen::MatrixXd kernel_basis(const Mat6r& A, double rtol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = rtol * std::max(s(0), 1e-300);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return svd.matrixV().rightCols(s.size() - rank);
}

}  // namespace

JordanBlockData jordan_chain(const MachineParams& p) {
  BathRates r = derived_rates(p);
  if (std::abs(r.eta) >= eta_switch(r.Gamma))
    throw NumericError("jordan_chain: not an EP (|eta| >= eta_switch)");
  // Snap g onto the closed-form critical coupling so the defect is exact to
  // round-off; within the switch this changes g by O(eta^2 / g).
  const double gbar = std::abs(r.DeltaGamma) / 2.0;
  MachineParams pc = p.with_g(gbar);
  r = derived_rates(pc);

  const double lam = -r.Gamma / 2.0;
  const Mat6r K = reduced_generator_real(r) - lam * Mat6r::Identity();
  const Mat6r K2 = K * K;
  const Mat6r K3 = K2 * K;
  const Eigen::MatrixXd n1 = kernel_basis(K, 1e-8);
  const Eigen::MatrixXd n2 = kernel_basis(K2, 1e-8);
  const Eigen::MatrixXd n3 = kernel_basis(K3, 1e-8);
  if (n1.cols() != 2 || n2.cols() != 3 || n3.cols() != 4)
    throw NumericError("jordan_chain: unexpected kernel structure (" +
                       std::to_string(n1.cols()) + "," +
                       std::to_string(n2.cols()) + "," +
                       std::to_string(n3.cols()) + ")");

  // rho'' spans ker K^3 modulo ker K^2 (one dimension).
  Eigen::MatrixXd proj = n3 - n2 * (n2.transpose() * n3);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeFullU);
  Vec6r x_dpp = svd.matrixU().col(0);
  fix_sign(x_dpp);

  Vec6r x_p_raw = K * x_dpp;
  double beta = x_p_raw.norm();
  Vec6r x_p = x_p_raw / beta;
  beta *= fix_sign(x_p);

  Vec6r x4_raw = K * x_p;
  double alpha = x4_raw.norm();
  Vec6r x4 = x4_raw / alpha;
  alpha *= fix_sign(x4);

  JordanBlockData jb;
  jb.lambda_bar = lam;
  jb.rho4 = from_real_coords(x4);
  jb.rho_prime = from_real_coords(x_p);
  jb.rho_dprime = from_real_coords(x_dpp);
  jb.alpha = alpha;
  jb.beta = beta;
  jb.geometric_multiplicity = static_cast<int>(n1.cols());
  jb.algebraic_multiplicity = static_cast<int>(n3.cols());
  return jb;
}

EPDecomposition ep_decomposition(const MachineParams& p) {
  EPDecomposition ep;
  ep.jordan = jordan_chain(p);
  ep.params = p.with_g(std::abs(derived_rates(p).DeltaGamma) / 2.0);
  ep.rates = derived_rates(ep.params);
  ep.lambda2 = -ep.rates.Gamma;
  ep.steady = analytic_steady_state(ep.rates);
  ep.rho2 = Mat4::Zero();
  ep.rho2.diagonal() << 0.5, -0.5, -0.5, 0.5;
  ep.rho3 = Mat4::Zero();
  ep.rho3(1, 2) = ep.rho3(2, 1) = 1.0 / std::sqrt(2.0);

  // Duals of the full generalized basis via inversion in the real
  // coordinates; the Euclidean pairing there is the Hilbert-Schmidt one.
  Mat6r R;
  R.col(0) = real_coords(ep.steady);
  R.col(1) = real_coords(ep.rho2);
  R.col(2) = real_coords(ep.rho3);
  R.col(3) = real_coords(ep.jordan.rho4);
  R.col(4) = real_coords(ep.jordan.rho_prime);
  R.col(5) = real_coords(ep.jordan.rho_dprime);
  const Mat6r Rinv = R.partialPivLu().solve(Mat6r::Identity());
  ep.sigma1 = from_real_coords(Rinv.row(0).transpose());
  ep.sigma2 = from_real_coords(Rinv.row(1).transpose());
  ep.sigma3 = from_real_coords(Rinv.row(2).transpose());
  ep.jordan.sigma4 = from_real_coords(Rinv.row(3).transpose());
  ep.jordan.sigma_prime = from_real_coords(Rinv.row(4).transpose());
  ep.jordan.sigma_dprime = from_real_coords(Rinv.row(5).transpose());
  return ep;
}

}  // namespace qtm
