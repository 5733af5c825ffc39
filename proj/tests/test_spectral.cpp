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

#include <doctest.h>

#include "qtm/spectral.hpp"
#include "test_support.hpp"

using namespace qtm;

TEST_CASE("reduced spectrum: triple degeneracy at eta = 0") {
  const BathRates r = BathRates::from_rates(0.02, 0.04, 0.006, 0.01, 0.011);
  const auto lam = analytic_spectrum_reduced(r);
  CHECK(lam[0] == Complex(0));
  CHECK(lam[1].real() == doctest::Approx(-0.076).epsilon(1e-14));
  for (int i : {3, 4, 5})
    CHECK(lam[i] == Complex(-0.038));
}

TEST_CASE("reduced spectrum: decoupled qubits relax at their own rates") {
  MachineParams p = test::fig3_params(0.0);  // Gamma1 > Gamma2
  const BathRates r = derived_rates(p);
  const auto lam = analytic_spectrum_reduced(p);
  CHECK(lam[4].real() == doctest::Approx(-r.Gamma_k[0]).epsilon(1e-13));
  CHECK(lam[5].real() == doctest::Approx(-r.Gamma_k[1]).epsilon(1e-13));
  CHECK(lam[0] == Complex(0));
}

TEST_CASE("local spectrum: lambda_7 - lambda_8 = 4 i eps") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 20; ++i) {
    const MachineParams p = test::random_params(rng);
    const auto lam = analytic_spectrum_local(p);
    CHECK(std::abs(lam[6] - lam[7] - Complex(0, 4 * p.epsilon)) < 1e-14);
  }
}

TEST_CASE("local spectrum: closed under conjugation") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const auto lam = analytic_spectrum_local(test::random_params(rng));
    std::vector<Complex> conj;
    for (const Complex& z : lam) conj.push_back(std::conj(z));
    CHECK(match_spectra(lam, conj) < 1e-14);
  }
}

TEST_CASE("local spectrum: matches the eigensolver on random draws") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    const MachineParams p = test::random_params(rng);
    Eigen::ComplexEigenSolver<MatX> es(build_local_liouvillian(p).matrix, false);
    std::vector<Complex> numeric(es.eigenvalues().data(),
                                 es.eigenvalues().data() + 16);
    CHECK(match_spectra(analytic_spectrum_local(p), numeric) < 1e-10);
  }
}

TEST_CASE("global spectrum: lambda_1 = 0 and lambda_5 - lambda_6 = 4 i g") {
  MachineParams p = test::fig3_params(0.02);
  p.regime = Regime::Global;
  const auto lam = analytic_spectrum_global(p);
  CHECK(lam[0] == Complex(0));
  CHECK(std::abs(lam[4] - lam[5] - Complex(0, 4 * p.g)) < 1e-14);
}

TEST_CASE("analytic steady state: nullspace residual and structure") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 20; ++i) {
    const MachineParams p = test::random_params(rng);
    const Mat4 rho = analytic_steady_state(p);
    validate_density_matrix(rho, "steady");
    const Liouvillian L = build_local_liouvillian(p);
    CHECK((L.matrix * vec(rho)).cwiseAbs().maxCoeff() < 1e-12);
    // coherence purely imaginary, rho32 = conj(rho23)
    CHECK(std::abs(rho(1, 2).real()) < 1e-15);
    CHECK(std::abs(rho(2, 1) - std::conj(rho(1, 2))) < 1e-15);
  }
}

TEST_CASE("analytic steady state: decoupled thermal product") {
  MachineParams p = test::fig3_params(0.0);
  const BathRates r = derived_rates(p);
  const Mat4 rho = analytic_steady_state(p);
  CHECK(rho(0, 0).real() ==
        doctest::Approx(r.gamma_plus[0] * r.gamma_plus[1] /
                        (r.Gamma_k[0] * r.Gamma_k[1]))
            .epsilon(1e-13));
  CHECK(std::abs(rho(1, 2)) < 1e-16);
}

TEST_CASE("analytic eigenmatrices: printed rho2 and rho3") {
  const MachineParams p = test::fig3_params(0.005);
  const auto rho = analytic_eigenmatrices_reduced(p);
  Mat4 expected2 = Mat4::Zero();
  expected2.diagonal() << 0.5, -0.5, -0.5, 0.5;
  CHECK((rho[1] - expected2).cwiseAbs().maxCoeff() < 1e-15);
  Mat4 expected3 = Mat4::Zero();
  expected3(1, 2) = expected3(2, 1) = 1.0 / std::sqrt(2.0);
  CHECK((rho[2] - expected3).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("analytic eigenmatrices: eigenvector residuals for rho4..rho6") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 15; ++i) {
    const MachineParams p = test::random_params(rng, true, true);
    const BathRates r = derived_rates(p);
    if (std::abs(r.eta) < 1e-3 * r.Gamma) continue;  // away from the EP
    const auto rho = analytic_eigenmatrices_reduced(p);
    const auto lam = analytic_spectrum_reduced(p);
    const MatX& L = build_reduced_liouvillian(p, 6).matrix;
    for (int k = 3; k < 6; ++k) {
      const VecX v = pack_reduced(rho[k], 6);
      CHECK((L * v - lam[k] * v).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("analytic eigenmatrices match the numeric basis at Fig. 3, g = 0.005") {
  const MachineParams p = test::fig3_params(0.005);
  const BathRates r = derived_rates(p);
  const auto analytic = analytic_eigenmatrices_reduced(p);
  const SpectralData sd = numeric_spectral_data(build_reduced_liouvillian(p, 6), &r);
  REQUIRE_FALSE(sd.defective_flag);
  const auto lam = analytic_spectrum_reduced(p);
  // match indices 4, 5 (lam5 = -G/2 - eta, lam6 = -G/2 + eta) by eigenvalue
  for (int k : {4, 5}) {
    int match = -1;
    for (int j = 0; j < 6; ++j)
      if (std::abs(sd.eigenvalues[j] - lam[k]) < 1e-10) match = j;
    REQUIRE(match >= 0);
    const Mat4 num = unpack_reduced(VecX(sd.right[match]));
    const double d_plus = (num - analytic[k]).cwiseAbs().maxCoeff();
    const double d_minus = (num + analytic[k]).cwiseAbs().maxCoeff();
    CHECK(std::min(d_plus, d_minus) < 1e-8);
  }
}

TEST_CASE("rho4, rho5, rho6 coalesce as eta approaches zero") {
  const MachineParams p0 = test::fig3_params(0.0);
  const double gbar = critical_g(p0);
  const auto near = analytic_eigenmatrices_reduced(test::fig3_params(gbar * (1 - 1e-7)));
  for (int a : {3, 4}) {
    for (int b = a + 1; b < 6; ++b) {
      const double d = std::min(hs_norm(near[a] - near[b]), hs_norm(near[a] + near[b]));
      CHECK(d < 2e-3);
    }
  }
  // rho3 does not participate
  CHECK(hs_norm(near[2] - near[3]) > 0.1);
  CHECK(hs_norm(near[2] + near[3]) > 0.1);
}

TEST_CASE("analytic eigenmatrices: EP singularity routes to the Jordan path") {
  const MachineParams p0 = test::fig3_params(0.0);
  CHECK_THROWS_AS(analytic_eigenmatrices_reduced(test::fig3_params(critical_g(p0))),
                  NumericError);
}

TEST_CASE("numeric_spectral_data: bi-orthonormality and residuals") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 8; ++i) {
    const MachineParams p = test::random_params(rng);
    const BathRates r = derived_rates(p);
    if (std::abs(r.eta) < 1e-3 * r.Gamma) continue;
    const Liouvillian L = build_local_liouvillian(p);
    const SpectralData sd = numeric_spectral_data(L, &r);
    REQUIRE_FALSE(sd.defective_flag);
    // sigma_1 = identity
    CHECK((MatX(sd.left[0]) - MatX(Mat4::Identity())).cwiseAbs().maxCoeff() < 1e-10);
    // Gram matrix = identity
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b) {
        const Complex ip = hs_inner(sd.left[a], sd.right[b]);
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-10);
      }
    // eigen residuals on both sides
    for (int a = 0; a < 16; ++a) {
      const VecX v = vec(sd.right[a]);
      CHECK((L.matrix * v - sd.eigenvalues[a] * v).cwiseAbs().maxCoeff() <
            1e-10 * std::max(1.0, v.cwiseAbs().maxCoeff()));
      const VecX s = vec(sd.left[a]);
      CHECK((s.adjoint() * L.matrix - sd.eigenvalues[a] * s.adjoint())
                .cwiseAbs()
                .maxCoeff() < 1e-8 * std::max(1.0, s.cwiseAbs().maxCoeff()));
    }
    // Hermiticity for real eigenvalues, unit norms for i >= 2
    for (int a = 0; a < 16; ++a) {
      if (std::abs(sd.eigenvalues[a].imag()) < 1e-11) {
        const MatX m = sd.right[a];
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      }
      if (a > 0) CHECK(hs_norm(sd.right[a]) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(std::abs(MatX(sd.right[0]).trace() - Complex(1)) < 1e-12);
  }
}

TEST_CASE("numeric_spectral_data: completeness reconstructs random matrices") {
  std::mt19937_64 rng(61);
  const MachineParams p = test::fig3_params(0.004);
  const BathRates r = derived_rates(p);
  const SpectralData sd = numeric_spectral_data(build_local_liouvillian(p), &r);
  REQUIRE_FALSE(sd.defective_flag);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Mat4 A;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) A(i, j) = Complex(n(rng), n(rng));
    Mat4 H = 0.5 * (A + A.adjoint());
    Mat4 back = Mat4::Zero();
    for (int k = 0; k < 16; ++k)
      back += hs_inner(sd.left[k], H) * Mat4(sd.right[k]);
    CHECK((back - H).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("square-root splitting near the eta = 0 EP") {
  const MachineParams p0 = test::fig3_params(0.0);
  const double gbar = critical_g(p0);
  for (double dg : {1e-4, 1e-6, 1e-8}) {
    const double g = gbar - dg;
    const BathRates r = derived_rates(test::fig3_params(g));
    const auto lam = analytic_spectrum_reduced(r);
    // |lambda5 - lambda6| = 2 |eta| exactly
    CHECK(std::abs(lam[5] - lam[4]) ==
          doctest::Approx(2 * std::abs(r.eta)).epsilon(1e-12));
    // first-order scaling sqrt(8 gbar) sqrt(gbar - g)
    const double predicted = std::sqrt(8 * gbar) * std::sqrt(dg);
    CHECK(std::abs(r.eta) == doctest::Approx(predicted).epsilon(2e-4 + dg / gbar));
  }
}

TEST_CASE("coalescence diagnostics: condition number diverges at the EP") {
  const MachineParams p0 = test::fig3_params(0.0);
  const double gbar = critical_g(p0);
  double prev = 0;
  for (double dg : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const Liouvillian L = build_reduced_liouvillian(test::fig3_params(gbar - dg), 6);
    const auto diag = coalescence_diagnostics(L, {2, 3, 4});
    CHECK(diag.basis_condition > prev);
    prev = diag.basis_condition;
  }
  CHECK(prev > 1e6);
  // generic point: modest conditioning
  const Liouvillian L = build_reduced_liouvillian(test::fig3_params(0.04), 6);
  CHECK(coalescence_diagnostics(L, {2, 3, 4}).basis_condition < 1e3);
  CHECK_THROWS_AS(coalescence_diagnostics(L, {}), ConfigError);
}

TEST_CASE("defective flag set exactly at the EP") {
  const MachineParams p0 = test::fig3_params(0.0);
  const MachineParams p = test::fig3_params(critical_g(p0));
  const BathRates r = derived_rates(p);
  const SpectralData sd = numeric_spectral_data(build_reduced_liouvillian(p, 6), &r);
  CHECK(sd.defective_flag);
}

TEST_CASE("global reduced block is EP-free across a strong-coupling scan") {
  // the lambda_1..lambda_4 analogue of the steady-state subspace never
  // coalesces: pairwise gaps stay positive for all scanned g
  MachineParams p = test::fig3_params(0.0);
  p.regime = Regime::Global;
  p.T1 = 1.5;
  p.T2 = 0.1;
  p.gamma1 = p.gamma2 = 0.02;
  for (double g = 0.01; g < 0.5; g += 0.01) {
    const auto lam = analytic_spectrum_global(p.with_g(g));
    double min_gap = 1e9;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        min_gap = std::min(min_gap, std::abs(lam[a] - lam[b]));
    CHECK(min_gap > 1e-6);
  }
}
