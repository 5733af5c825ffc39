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

#include <Eigen/Dense>

#include "qtm/params.hpp"

namespace qtm {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;
using Vec6r = Eigen::Matrix<double, 6, 1>;
using Mat6r = Eigen::Matrix<double, 6, 6>;

// Two-qubit basis ordered {|11>, |10>, |01>, |00>} with the excited
// single-qubit state first; qubit 1 is the left tensor factor. This ordering
// together with row-major vectorization p_{4(i-1)+j} = rho_{ij} is what the
// whole library assumes.
inline constexpr const char* kBasisConvention = "11,10,01,00|row-major";

namespace ops {
Mat2 sigma_plus();
Mat2 sigma_minus();
Mat4 sigma_plus(int qubit);   // qubit in {1, 2}
Mat4 sigma_minus(int qubit);
Mat4 hamiltonian(double epsilon, double g);  // H_S + H_int
}  // namespace ops

/// Row-major vectorization and its inverse.
VecX vec(const MatX& rho);
MatX devec(const VecX& p);

/// vec(A X B) = (A (x) B^T) vec(X) for row-major vec.
MatX superop_left_right(const MatX& A, const MatX& B);
/// Superoperator of the dissipator D[A]. = A.A^dag - {A^dag A, .}/2.
MatX dissipator_superop(const MatX& A);
/// Superoperator of -i[H, .].
MatX hamiltonian_superop(const MatX& H);

/// Hilbert-Schmidt inner product Tr(A^dag B) and norm.
Complex hs_inner(const MatX& A, const MatX& B);
double hs_norm(const MatX& A);

/// Trace distance ||rho - sigma||_1 / 2 of Hermitian matrices.
double trace_distance(const Mat4& rho, const Mat4& sigma);

/// Density-matrix invariants: Hermitian to 1e-12, unit trace to 1e-12,
/// positive semi-definite to -1e-10. Throws NumericError on violation.
void validate_density_matrix(const Mat4& rho, const char* context);
bool is_valid_density_matrix(const Mat4& rho);

// The steady-state subspace keeps populations plus the |10><01| coherences
// (dim 6); X-states add the |11><00| coherences (dim 8).
bool in_reduced_subspace(const Mat4& rho, int dim, double tol = 1e-12);

/// Pack a 4x4 matrix into the reduced coordinate vector
/// (rho11, rho22, rho33, rho44, rho23, rho32[, rho14, rho41]).
VecX pack_reduced(const Mat4& rho, int dim);
Mat4 unpack_reduced(const VecX& v);

// Real coordinates for Hermitian matrices in the dim-6 subspace:
// (p1, p2, p3, p4, sqrt2 Re rho23, sqrt2 Im rho23). The Euclidean inner
// product in these coordinates equals the Hilbert-Schmidt one.
Vec6r real_coords(const Mat4& rho);
Mat4 from_real_coords(const Vec6r& x);

/// Multiply by +-1 so the largest-modulus entry has positive real part
/// (positive imaginary part when the real part vanishes). Returns the sign.
double fix_sign(Vec6r& x);
Complex fix_phase(MatX& rho);
}  // namespace qtm
