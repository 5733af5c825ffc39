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

#include "qtm/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace qtm {

SpectralAux spectral_aux(const BathRates& r) {
  SpectralAux a;
  a.eta = r.eta;
  const double G1 = r.Gamma_k[0], G2 = r.Gamma_k[1];
  a.alpha_s = -r.g * r.g + (G1 * G1 + G2 * G2) / 8.0;
  a.delta = G1 * G1 + G2 * G2 +
            2.0 * r.gamma_minus[0] * (r.gamma_minus[1] - 3.0 * r.gamma_plus[1]) +
            2.0 * r.gamma_plus[0] * (r.gamma_plus[1] - 3.0 * r.gamma_minus[1]);
  const double dGG = r.DeltaGamma * r.Gamma;
  a.beta_radicand = 4.0 * dGG * dGG - 16.0 * r.g * r.g * a.delta;
  a.beta_s = std::sqrt(Complex(a.beta_radicand, 0.0)) / 8.0;
  return a;
}

GlobalSpectralAux global_spectral_aux(const MachineParams& p) {
  const GlobalRates r = global_rates(p);
  GlobalSpectralAux a;
  a.eps_minus = p.epsilon - p.g;
  a.eps_plus = p.epsilon + p.g;
  a.Gamma_total = r.Gamma_total;
  for (int t = 0; t < 2; ++t) {
    const double G1 = r.Gamma_ja[0][t], G2 = r.Gamma_ja[1][t];
    const double g1p = r.rate[0][t].first, g1m = r.rate[0][t].second;
    const double g2p = r.rate[1][t].first, g2m = r.rate[1][t].second;
    const double val = G1 * G1 + G2 * G2 + 2.0 * g1m * (g2m - 3.0 * g2p) +
                       2.0 * g1p * (g2p - 3.0 * g2m);
    (t == 0 ? a.X : a.Y) = val;
  }
  return a;
}

std::vector<Complex> analytic_spectrum_reduced(const BathRates& r) {
  const double G = r.Gamma;
  return {Complex(0), Complex(-G), Complex(-G / 2), Complex(-G / 2),
          -G / 2 - r.eta, -G / 2 + r.eta};
}

std::vector<Complex> analytic_spectrum_reduced(const MachineParams& p) {
  return analytic_spectrum_reduced(derived_rates(p));
}

std::vector<Complex> analytic_spectrum_local(const BathRates& r, double eps) {
  const SpectralAux a = spectral_aux(r);
  const double G = r.Gamma;
  const Complex i(0, 1);
  const Complex sm = std::sqrt(Complex(a.alpha_s) - a.beta_s);
  const Complex sp = std::sqrt(Complex(a.alpha_s) + a.beta_s);
  std::vector<Complex> lam = analytic_spectrum_reduced(r);
  lam.insert(lam.end(),
             {2.0 * i * eps - G / 2, -2.0 * i * eps - G / 2,
              i * eps - G / 2 - sm, -i * eps - G / 2 - sm,
              i * eps - G / 2 + sm, -i * eps - G / 2 + sm,
              i * eps - G / 2 - sp, -i * eps - G / 2 - sp,
              i * eps - G / 2 + sp, -i * eps - G / 2 + sp});
  return lam;
}

std::vector<Complex> analytic_spectrum_local(const MachineParams& p) {
  return analytic_spectrum_local(derived_rates(p), p.epsilon);
}

std::vector<Complex> analytic_spectrum_global(const MachineParams& p) {
  if (p.statistics != BathStatistics::Bosonic)
    throw ConfigError("global spectrum is defined for bosonic baths");
  const GlobalRates r = global_rates(p);
  const GlobalSpectralAux a = global_spectral_aux(p);
  const double G = r.Gamma_total;
  const Complex i(0, 1);
  const Complex sX = std::sqrt(Complex(a.X, 0.0));
  const Complex sY = std::sqrt(Complex(a.Y, 0.0));
  const double eps = p.epsilon, g = p.g;
  return {Complex(0),
          Complex(-0.5 * (r.Gamma_ja[0][0] + r.Gamma_ja[1][0])),
          Complex(-0.5 * (r.Gamma_ja[0][1] + r.Gamma_ja[1][1])),
          Complex(-G / 2),
          2.0 * i * g - G / 4, -2.0 * i * g - G / 4,
          2.0 * i * eps - G / 4, -2.0 * i * eps - G / 4,
          i * (g + eps) - 0.25 * (G + sX), -i * (g + eps) - 0.25 * (G + sX),
          i * (g + eps) - 0.25 * (G - sX), -i * (g + eps) - 0.25 * (G - sX),
          i * (g - eps) - 0.25 * (G + sY), -i * (g - eps) - 0.25 * (G + sY),
          i * (g - eps) - 0.25 * (G - sY), -i * (g - eps) - 0.25 * (G - sY)};
}

Mat4 analytic_steady_state(const BathRates& r) {
  const double gp1 = r.gamma_plus[0], gm1 = r.gamma_minus[0];
  const double gp2 = r.gamma_plus[1], gm2 = r.gamma_minus[1];
  const double G = r.Gamma, g = r.g;
  const double pre = 1.0 / (G * G * (4.0 * g * g + r.Gamma_k[0] * r.Gamma_k[1]));
  Mat4 rho = Mat4::Zero();
  rho(0, 0) = 4 * g * g * (gp1 + gp2) * (gp1 + gp2) + gp1 * gp2 * G * G;
  rho(1, 1) = 4 * (gm1 + gm2) * (gp1 + gp2) * g * g + gp1 * gm2 * G * G;
  rho(2, 2) = 4 * (gm1 + gm2) * (gp1 + gp2) * g * g + gm1 * gp2 * G * G;
  rho(3, 3) = 4 * g * g * (gm1 + gm2) * (gm1 + gm2) + gm1 * gm2 * G * G;
  const Complex c = Complex(0, 2.0) * g * G * (gp1 * gm2 - gm1 * gp2);
  rho(1, 2) = c;
  rho(2, 1) = std::conj(c);
  return pre * rho;
}

Mat4 analytic_steady_state(const MachineParams& p) {
  if (p.regime != Regime::Local)
    throw ConfigError("analytic_steady_state covers the local regime");
  return analytic_steady_state(derived_rates(p));
}

namespace {

// Right eigenmatrix for lambda = -Gamma/2 + mu with mu = -+eta, before
// normalization. The printed closed forms carry the sign of mu in both the
// linear-in-eta terms and the (Gamma + 2 mu) denominator; with that pairing
// the two matrices are adjoints of each other when eta is imaginary.
Mat4 eig56_raw(const BathRates& r, Complex mu) {
  const double gp1 = r.gamma_plus[0], gm1 = r.gamma_minus[0];
  const double gp2 = r.gamma_plus[1], gm2 = r.gamma_minus[1];
  const double dG = r.DeltaGamma, G = r.Gamma;
  const double D = gm1 - gp1 + gm2 - gp2;
  const Complex den = (G + 2.0 * mu) * (2.0 * r.g);
  Mat4 m = Mat4::Zero();
  m(0, 0) = (2.0 * dG * (gp1 + gp2) + 2.0 * (gp1 - gp2) * mu) / den;
  m(1, 1) = (D * dG - 2.0 * mu * mu - 2.0 * (gp1 + gm2) * mu) / den;
  m(2, 2) = (D * dG + 2.0 * mu * mu + 2.0 * (gm1 + gp2) * mu) / den;
  m(3, 3) = (-2.0 * dG * (gm1 + gm2) + 2.0 * (gm2 - gm1) * mu) / den;
  m(1, 2) = Complex(0, -1);
  m(2, 1) = Complex(0, 1);
  return m;
}

}  // namespace

std::vector<Mat4> analytic_eigenmatrices_reduced(const MachineParams& p) {
  const BathRates r = derived_rates(p);
  const double gp1 = r.gamma_plus[0], gm1 = r.gamma_minus[0];
  const double gp2 = r.gamma_plus[1], gm2 = r.gamma_minus[1];
  std::vector<Mat4> out(6, Mat4::Zero());
  out[0] = analytic_steady_state(r);
  out[1].diagonal() << 0.5, -0.5, -0.5, 0.5;
  out[2](1, 2) = out[2](2, 1) = 1.0 / std::sqrt(2.0);
  {
    Mat4 m = Mat4::Zero();
    const double c = 2.0 * r.g / (r.Gamma * r.DeltaGamma);
    m(0, 0) = 2.0 * (gp1 + gp2) * c;
    m(1, 1) = m(2, 2) = (gm1 - gp1 + gm2 - gp2) * c;
    m(3, 3) = -2.0 * (gm1 + gm2) * c;
    m(1, 2) = Complex(0, -1);
    m(2, 1) = Complex(0, 1);
    out[3] = m;
  }
  if (std::abs(r.eta) < eta_switch(r.Gamma))
    throw NumericError(
        "analytic_eigenmatrices_reduced: eta ~ 0, rho5/rho6 are singular at "
        "the EP; use jordan_chain");
  out[4] = eig56_raw(r, -r.eta);
  out[5] = eig56_raw(r, r.eta);
  for (int i = 3; i < 6; ++i) {
    MatX m = out[i];
    fix_phase(m);
    if (std::abs(r.eta.imag()) < 1e-14) m = 0.5 * (m + m.adjoint()).eval();
    out[i] = m / hs_norm(m);
  }
  return out;
}

void sort_spectrum(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
}

double match_spectra(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size())
    throw NumericError("match_spectra: size mismatch");
  sort_spectrum(a);
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    int jbest = -1;
    double dbest = 0.0;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (jbest < 0 || d < dbest) {
        jbest = static_cast<int>(j);
        dbest = d;
      }
    }
    used[jbest] = true;
    worst = std::max(worst, dbest);
  }
  return worst;
}

namespace {

// Hermitization in the representation the Liouvillian acts on: devec'd 4x4
// for dim 16, packed coordinates for dims 6 and 8.
VecX hermitize_rep(const VecX& v, int dim) {
  if (dim == 16) {
    MatX m = devec(v);
    m = 0.5 * (m + m.adjoint()).eval();
    return vec(m);
  }
  VecX w = v;
  for (int i = 0; i < 4; ++i) w(i) = Complex(v(i).real(), 0.0);
  w(4) = 0.5 * (v(4) + std::conj(v(5)));
  w(5) = std::conj(w(4));
  if (dim == 8) {
    w(6) = 0.5 * (v(6) + std::conj(v(7)));
    w(7) = std::conj(w(6));
  }
  return w;
}

VecX adjoint_rep(const VecX& v, int dim) {
  if (dim == 16) {
    MatX m = devec(v);
    return vec(m.adjoint().eval());
  }
  VecX w = v;
  for (int i = 0; i < 4; ++i) w(i) = std::conj(v(i));
  w(4) = std::conj(v(5));
  w(5) = std::conj(v(4));
  if (dim == 8) {
    w(6) = std::conj(v(7));
    w(7) = std::conj(v(6));
  }
  return w;
}

Complex trace_rep(const VecX& v, int dim) {
  if (dim == 16) return v(0) + v(5) + v(10) + v(15);
  return v(0) + v(1) + v(2) + v(3);
}

void phase_fix_rep(VecX& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const Complex t = v(k);
  if (std::abs(t) == 0.0) return;
  Complex ph = t / std::abs(t);
  if (std::abs(t.real()) > 1e-14 * std::abs(t) && t.real() < 0) ph = -ph;
  else if (std::abs(t.real()) <= 1e-14 * std::abs(t) && t.imag() < 0) ph = -ph;
  v *= std::conj(ph);
  // make the chosen entry's real part positive (or imaginary part when the
  // real part vanishes)
  if (v(k).real() < -1e-14 * std::abs(v(k))) v = -v;
}

}  // namespace

SpectralData numeric_spectral_data(const Liouvillian& L, const BathRates* rates) {
  const int d = L.dim;
  Eigen::ComplexEigenSolver<MatX> es(L.matrix);
  if (es.info() != Eigen::Success)
    throw NumericError("eigensolver failed to converge");
  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  const VecX w = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (w(a).real() != w(b).real()) return w(a).real() > w(b).real();
    return w(a).imag() < w(b).imag();
  });

  SpectralData out;
  out.dim = d;
  out.kind = L.kind;
  out.eigenvalues.resize(d);
  std::vector<VecX> cols(d);
  for (int i = 0; i < d; ++i) {
    out.eigenvalues[i] = w(order[i]);
    cols[i] = es.eigenvectors().col(order[i]);
  }
  double scale = 0.0;
  for (const Complex& z : out.eigenvalues) scale = std::max(scale, std::abs(z));
  scale = std::max(scale, 1e-300);
  if (std::abs(out.eigenvalues[0]) > 1e-10 * L.matrix.norm())
    throw NumericError("no zero eigenvalue found: steady state missing");

  const double tol_cluster = 1e-8 * scale;
  const double tol_real = 1e-9 * scale;

  // group sorted eigenvalues into clusters of nearly equal values
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < d; ++i) {
    if (!clusters.empty() &&
        std::abs(out.eigenvalues[i] -
                 out.eigenvalues[clusters.back().front()]) <= tol_cluster)
      clusters.back().push_back(i);
    else
      clusters.push_back({i});
  }

  std::vector<VecX> basis(d);
  std::vector<bool> done(d, false);
  bool herm_fail = false;

  auto cluster_mean = [&](const std::vector<int>& c) {
    Complex s = 0;
    for (int i : c) s += out.eigenvalues[i];
    return s / double(c.size());
  };

  for (const auto& c : clusters) {
    const Complex lam = cluster_mean(c);
    if (std::abs(lam.imag()) <= tol_real) {
      // Real eigenvalue: build a Hermitian orthonormal basis of the cluster
      // eigenspace from the Hermitian parts of v and i v.
      std::vector<VecX> cand;
      for (int i : c) {
        cand.push_back(hermitize_rep(cols[i], d));
        cand.push_back(hermitize_rep(Complex(0, 1) * cols[i], d));
      }
      std::vector<VecX> picked;
      for (VecX& v : cand) {
        for (const VecX& u : picked) v -= u * u.dot(v);
        const double n = v.norm();
        if (n > 1e-6) picked.push_back(v / n);
        if (picked.size() == c.size()) break;
      }
      if (picked.size() != c.size()) {
        herm_fail = true;
        picked.clear();
        for (int i : c) picked.push_back(cols[i].normalized());
      }
      for (size_t k = 0; k < c.size(); ++k) {
        VecX v = picked[k];
        phase_fix_rep(v);
        basis[c[k]] = v;
        done[c[k]] = true;
      }
    } else if (lam.imag() > 0.0) {
      for (int i : c) {
        VecX v = cols[i].normalized();
        phase_fix_rep(v);
        basis[i] = v;
        done[i] = true;
      }
    }
  }
  // fill Im < 0 modes as adjoints of their conjugate partners
  for (int i = 0; i < d; ++i) {
    if (done[i]) continue;
    const Complex target = std::conj(out.eigenvalues[i]);
    int jbest = -1;
    double dbest = 0.0;
    for (int j = 0; j < d; ++j) {
      if (!done[j] || out.eigenvalues[j].imag() <= tol_real) continue;
      const double dist = std::abs(out.eigenvalues[j] - target);
      if (jbest < 0 || dist < dbest) {
        jbest = j;
        dbest = dist;
      }
    }
    if (jbest >= 0 && dbest <= 10 * tol_cluster) {
      basis[i] = adjoint_rep(basis[jbest], d);
    } else {
      VecX v = cols[i].normalized();
      phase_fix_rep(v);
      basis[i] = v;
    }
    done[i] = true;
  }

  // steady state: unit trace instead of unit norm
  {
    const Complex tr = trace_rep(basis[0], d);
    if (std::abs(tr) < 1e-8)
      throw NumericError("steady-state candidate has vanishing trace");
    basis[0] /= tr;
  }

  MatX R(d, d);
  for (int i = 0; i < d; ++i) R.col(i) = basis[i];
  Eigen::JacobiSVD<MatX> svd(R);
  const double smin = svd.singularValues()(d - 1);
  const double kappa =
      smin > 0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();

  out.diagnostics.basis_condition = kappa;
  double min_gap = std::numeric_limits<double>::infinity();
  double min_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      min_gap = std::min(min_gap,
                         std::abs(out.eigenvalues[i] - out.eigenvalues[j]));
      const double ni = basis[i].norm(), nj = basis[j].norm();
      const double ip = std::abs(basis[i].dot(basis[j])) / (ni * nj);
      min_dist = std::min(min_dist, std::sqrt(std::max(0.0, 2.0 - 2.0 * ip)));
    }
  out.diagnostics.min_eigenvalue_gap = min_gap;
  out.diagnostics.min_eigenmatrix_distance = min_dist;

  out.defective_flag = herm_fail || kappa > 1e8;
  if (rates && L.kind != LiouvillianKind::GlobalFull &&
      std::abs(rates->eta) < eta_switch(rates->Gamma))
    out.defective_flag = true;

  auto to_mat = [&](const VecX& v) -> MatX {
    if (d == 16) return devec(v);
    return v;  // reduced representations stay packed
  };
  out.right.resize(d);
  for (int i = 0; i < d; ++i) out.right[i] = to_mat(basis[i]);

  if (!out.defective_flag) {
    const MatX Rinv = R.partialPivLu().solve(MatX::Identity(d, d));
    out.left.resize(d);
    for (int i = 0; i < d; ++i) {
      VecX s = Rinv.row(i).conjugate();
      out.left[i] = to_mat(s);
    }
  }
  return out;
}

CoalescenceDiagnostics coalescence_diagnostics(const Liouvillian& L,
                                               const std::vector<int>& cluster) {
  if (cluster.empty()) throw ConfigError("coalescence_diagnostics: empty cluster");
  const int d = L.dim;
  Eigen::ComplexEigenSolver<MatX> es(L.matrix);
  if (es.info() != Eigen::Success)
    throw NumericError("eigensolver failed to converge");
  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  const VecX w = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (w(a).real() != w(b).real()) return w(a).real() > w(b).real();
    return w(a).imag() < w(b).imag();
  });
  CoalescenceDiagnostics diag;
  diag.min_eigenvalue_gap = std::numeric_limits<double>::infinity();
  diag.min_eigenmatrix_distance = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < cluster.size(); ++a)
    for (size_t b = a + 1; b < cluster.size(); ++b) {
      const int i = order[cluster[a]], j = order[cluster[b]];
      diag.min_eigenvalue_gap =
          std::min(diag.min_eigenvalue_gap, std::abs(w(i) - w(j)));
      const VecX vi = es.eigenvectors().col(i).normalized();
      const VecX vj = es.eigenvectors().col(j).normalized();
      const double ip = std::abs(vi.dot(vj));
      diag.min_eigenmatrix_distance =
          std::min(diag.min_eigenmatrix_distance,
                   std::sqrt(std::max(0.0, 2.0 - 2.0 * ip)));
    }
  if (cluster.size() == 1) {
    diag.min_eigenvalue_gap = 0.0;
    diag.min_eigenmatrix_distance = 0.0;
  }
  Eigen::JacobiSVD<MatX> svd(es.eigenvectors());
  const double smin = svd.singularValues()(d - 1);
  diag.basis_condition =
      smin > 0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();
  return diag;
}

}  // namespace qtm
