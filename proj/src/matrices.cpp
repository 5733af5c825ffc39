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

#include "qtm/matrices.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace qtm {

namespace ops {

Mat2 sigma_plus() {
  Mat2 m = Mat2::Zero();
  m(0, 1) = 1.0;  // |1><0| in the {|1>, |0>} ordering
  return m;
}

Mat2 sigma_minus() { return sigma_plus().adjoint(); }

Mat4 sigma_plus(int qubit) {
  const Mat2 I = Mat2::Identity();
  return qubit == 1 ? Eigen::kroneckerProduct(sigma_plus(), I).eval()
                    : Eigen::kroneckerProduct(I, sigma_plus()).eval();
}

Mat4 sigma_minus(int qubit) { return sigma_plus(qubit).adjoint(); }

Mat4 hamiltonian(double epsilon, double g) {
  Mat4 H = Mat4::Zero();
  for (int k = 1; k <= 2; ++k)
    H += epsilon * (sigma_plus(k) * sigma_minus(k));
  H += g * (sigma_plus(1) * sigma_minus(2) + sigma_minus(1) * sigma_plus(2));
  return H;
}

}  // namespace ops

VecX vec(const MatX& rho) {
  const Eigen::Index d = rho.rows();
  VecX p(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) p(d * i + j) = rho(i, j);
  return p;
}

MatX devec(const VecX& p) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(p.size()))));
  MatX rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = p(d * i + j);
  return rho;
}

MatX superop_left_right(const MatX& A, const MatX& B) {
  return Eigen::kroneckerProduct(A, B.transpose());
}

MatX dissipator_superop(const MatX& A) {
  const Eigen::Index d = A.rows();
  const MatX I = MatX::Identity(d, d);
  const MatX AdA = A.adjoint() * A;
  return Eigen::kroneckerProduct(A, A.conjugate()).eval() -
         0.5 * Eigen::kroneckerProduct(AdA, I).eval() -
         0.5 * Eigen::kroneckerProduct(I, AdA.transpose()).eval();
}

MatX hamiltonian_superop(const MatX& H) {
  const Eigen::Index d = H.rows();
  const MatX I = MatX::Identity(d, d);
  return Complex(0, -1) * (Eigen::kroneckerProduct(H, I).eval() -
                           Eigen::kroneckerProduct(I, H.transpose()).eval());
}

Complex hs_inner(const MatX& A, const MatX& B) {
  return (A.adjoint() * B).trace();
}

double hs_norm(const MatX& A) { return A.norm(); }

double trace_distance(const Mat4& rho, const Mat4& sigma) {
  Mat4 d = rho - sigma;
  d = 0.5 * (d + d.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Mat4> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

void validate_density_matrix(const Mat4& rho, const char* context) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw NumericError(std::string(context) + ": not Hermitian, max dev " +
                       std::to_string(herm));
  const double tr = std::abs(rho.trace() - Complex(1.0));
  if (tr > 1e-12)
    throw NumericError(std::string(context) + ": trace deviates by " +
                       std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (rho + rho.adjoint()),
                                         Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw NumericError(std::string(context) + ": negative eigenvalue " +
                       std::to_string(es.eigenvalues().minCoeff()));
}

bool is_valid_density_matrix(const Mat4& rho) {
  try {
    validate_density_matrix(rho, "check");
    return true;
  } catch (const NumericError&) {
    return false;
  }
}

bool in_reduced_subspace(const Mat4& rho, int dim, double tol) {
  double off = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const bool x6 = (i == 1 && j == 2) || (i == 2 && j == 1);
      const bool x8 = (i == 0 && j == 3) || (i == 3 && j == 0);
      if (x6 || (dim == 8 && x8)) continue;
      off = std::max(off, std::abs(rho(i, j)));
    }
  return off <= tol;
}

VecX pack_reduced(const Mat4& rho, int dim) {
  if (dim != 6 && dim != 8) throw ConfigError("reduced dim must be 6 or 8");
  VecX v(dim);
  v(0) = rho(0, 0);
  v(1) = rho(1, 1);
  v(2) = rho(2, 2);
  v(3) = rho(3, 3);
  v(4) = rho(1, 2);
  v(5) = rho(2, 1);
  if (dim == 8) {
    v(6) = rho(0, 3);
    v(7) = rho(3, 0);
  }
  return v;
}

Mat4 unpack_reduced(const VecX& v) {
  Mat4 rho = Mat4::Zero();
  rho(0, 0) = v(0);
  rho(1, 1) = v(1);
  rho(2, 2) = v(2);
  rho(3, 3) = v(3);
  rho(1, 2) = v(4);
  rho(2, 1) = v(5);
  if (v.size() == 8) {
    rho(0, 3) = v(6);
    rho(3, 0) = v(7);
  }
  return rho;
}

Vec6r real_coords(const Mat4& rho) {
  const double s2 = std::sqrt(2.0);
  Vec6r x;
  x << rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(),
      s2 * rho(1, 2).real(), s2 * rho(1, 2).imag();
  return x;
}

Mat4 from_real_coords(const Vec6r& x) {
  const double s2 = std::sqrt(2.0);
  Mat4 rho = Mat4::Zero();
  rho(0, 0) = x(0);
  rho(1, 1) = x(1);
  rho(2, 2) = x(2);
  rho(3, 3) = x(3);
  rho(1, 2) = Complex(x(4) / s2, x(5) / s2);
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

double fix_sign(Vec6r& x) {
  // Largest-modulus matrix entry of the corresponding Hermitian matrix; the
  // coherence magnitude is sqrt(x5^2 + x6^2)/sqrt2.
  const Mat4 m = from_real_coords(x);
  Complex top(0, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(m(i, j)) > std::abs(top)) top = m(i, j);
  double s = 1.0;
  if (std::abs(top.real()) > 1e-14 * std::abs(top))
    s = top.real() >= 0 ? 1.0 : -1.0;
  else
    s = top.imag() >= 0 ? 1.0 : -1.0;
  x *= s;
  return s;
}

Complex fix_phase(MatX& rho) {
  Eigen::Index r = 0, c = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      if (std::abs(rho(i, j)) > best) {
        best = std::abs(rho(i, j));
        r = i;
        c = j;
      }
  if (best <= 0.0) return Complex(1, 0);
  Complex ph = rho(r, c) / best;
  rho *= std::conj(ph);
  return std::conj(ph);
}

}  // namespace qtm
