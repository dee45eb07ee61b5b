#pragma once

// Brute-force references for the unit and acceptance tests. Nothing here
// calls into the library: Hamiltonians come from Kronecker products of Pauli
// matrices, spectra from Eigen's own solver, and long-time averages from
// explicit time grids.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Pauli matrices in the {|up>, |down>} ordering used by bit = 1 -> up.
inline Eigen::Matrix2cd pauli(char axis) {
  Eigen::Matrix2cd m;
  const Cplx i(0.0, 1.0);
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -i, i, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

// Operator acting with `op` on `site` in a chain of n sites. The full index
// is the bit pattern (bit i = site i up), so site i is the i-th least
// significant tensor factor.
inline CMat site_operator(const Eigen::Matrix2cd& op, int site, int n) {
  const std::size_t dim = std::size_t{1} << n;
  CMat out = CMat::Zero(dim, dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      if ((a ^ b) & ~(std::size_t{1} << site)) continue;
      const int ra = ((a >> site) & 1) ? 0 : 1;  // row 0 of op is |up>
      const int rb = ((b >> site) & 1) ? 0 : 1;
      out(a, b) = op(ra, rb);
    }
  return out;
}

inline CMat dot_product(int a, int b, int n) {
  CMat out = CMat::Zero(std::size_t{1} << n, std::size_t{1} << n);
  for (char axis : {'x', 'y', 'z'})
    out += site_operator(pauli(axis), a, n) * site_operator(pauli(axis), b, n);
  return out;
}

inline Eigen::MatrixXd nn_xxx_full(int n, double bz, double j, double jp) {
  CMat h = bz * site_operator(pauli('z'), 0, n);
  for (int s = 0; s + 1 < n; ++s) h += j * dot_product(s, s + 1, n);
  for (int s = 0; s + 2 < n; ++s) h += jp * dot_product(s, s + 2, n);
  return h.real();
}

inline Eigen::MatrixXd total_sz_full(int n) {
  CMat m = CMat::Zero(std::size_t{1} << n, std::size_t{1} << n);
  for (int s = 0; s < n; ++s) m += site_operator(pauli('z'), s, n);
  return m.real();
}

// Indices of the full space with k up spins, ascending.
inline std::vector<std::size_t> sector_indices(int n, int k) {
  std::vector<std::size_t> idx;
  for (std::size_t a = 0; a < (std::size_t{1} << n); ++a)
    if (std::popcount(a) == k) idx.push_back(a);
  return idx;
}

inline Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

struct Spectrum {
  Eigen::VectorXd e;
  Eigen::MatrixXd v;
};

inline Spectrum eigh(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// |psi(t)> in the product basis.
inline CVec evolve(const Spectrum& s, const Eigen::VectorXd& psi0, double t) {
  const Eigen::VectorXd c = s.v.transpose() * psi0;
  CVec ct(c.size());
  for (Eigen::Index m = 0; m < c.size(); ++m) ct[m] = c[m] * std::exp(Cplx(0.0, -s.e[m] * t));
  return s.v.cast<Cplx>() * ct;
}

inline CVec evolve(const Spectrum& s, const CVec& psi0, double t) {
  const CVec c = s.v.transpose().cast<Cplx>() * psi0;
  CVec ct(c.size());
  for (Eigen::Index m = 0; m < c.size(); ++m) ct[m] = c[m] * std::exp(Cplx(0.0, -s.e[m] * t));
  return s.v.cast<Cplx>() * ct;
}

inline std::vector<double> uniform_grid(double t_max, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

struct LongTime {
  double mean_obs = 0.0;      // mean of <O(t)>
  double var_obs = 0.0;       // variance of <O(t)>
  double mean_two_time = 0.0; // mean of Re <psi0| O(t) O |psi0>
  double mean_p0 = 0.0;       // mean of |<psi0|psi(t)>|^2
};

// Direct time-grid statistics for a product-basis diagonal observable.
inline LongTime long_time(const Spectrum& s, const Eigen::VectorXd& psi0,
                          const Eigen::VectorXd& obs_diag, double t_max, std::size_t n) {
  const CVec phi0 = (obs_diag.array() * psi0.array()).matrix().cast<Cplx>();
  const CVec psi0c = psi0.cast<Cplx>();
  LongTime out;
  double sum = 0.0, sum_sq = 0.0, two = 0.0, p0 = 0.0;
  for (double t : uniform_grid(t_max, n)) {
    const CVec psi = evolve(s, psi0c, t);
    const CVec phi = evolve(s, phi0, t);
    const double o = (psi.conjugate().array() * obs_diag.array().cast<Cplx>() * psi.array()).sum().real();
    sum += o;
    sum_sq += o * o;
    // <psi0|U^dag O U O|psi0> = <psi(t)| O |phi(t)>
    two += (psi.conjugate().array() * obs_diag.array().cast<Cplx>() * phi.array()).sum().real();
    p0 += std::norm(psi0c.dot(psi));
  }
  const auto nd = static_cast<double>(n);
  out.mean_obs = sum / nd;
  out.var_obs = sum_sq / nd - out.mean_obs * out.mean_obs;
  out.mean_two_time = two / nd;
  out.mean_p0 = p0 / nd;
  return out;
}

// F(t) = <psi| W(t) V W(t) V |psi> with W(t) = U^dag W U, U = exp(-iHt),
// built as dense matrices.
inline Cplx otoc_dense(const Spectrum& s, const Eigen::VectorXd& w_diag,
                       const Eigen::VectorXd& v_diag, const Eigen::VectorXd& psi, double t) {
  const auto d = s.e.size();
  CVec phase(d);
  for (Eigen::Index m = 0; m < d; ++m) phase[m] = std::exp(Cplx(0.0, -s.e[m] * t));
  const CMat vc = s.v.cast<Cplx>();
  const CMat u = vc * phase.asDiagonal() * vc.adjoint();
  const CMat wt = u.adjoint() * w_diag.cast<Cplx>().asDiagonal() * u;
  const CMat v = v_diag.cast<Cplx>().asDiagonal();
  const CVec p = psi.cast<Cplx>();
  return p.dot(wt * v * wt * v * p);
}

// Same as otoc_dense but cheap per time point: applies U and U^dag as
// vector products in the eigenbasis.
inline Cplx otoc_vector(const Spectrum& s, const Eigen::VectorXd& w_diag,
                        const Eigen::VectorXd& v_diag, const Eigen::VectorXd& psi, double t) {
  auto wt = [&](const CVec& x) {
    const CVec y = evolve(s, x, t);
    const CVec wy = (w_diag.cast<Cplx>().array() * y.array()).matrix();
    return evolve(s, wy, -t);
  };
  const CVec vc = v_diag.cast<Cplx>();
  const CVec p = psi.cast<Cplx>();
  CVec x = (vc.array() * p.array()).matrix();
  x = wt(x);
  x = (vc.array() * x.array()).matrix();
  x = wt(x);
  return p.dot(x);
}

inline double otoc_long_time(const Spectrum& s, const Eigen::VectorXd& w_diag,
                             const Eigen::VectorXd& v_diag, const Eigen::VectorXd& psi,
                             double t_max, std::size_t n) {
  double sum = 0.0;
  for (double t : uniform_grid(t_max, n)) sum += otoc_vector(s, w_diag, v_diag, psi, t).real();
  return sum / static_cast<double>(n);
}

// Dephased OTOC average written as the literal triple sum over eigenbasis
// indices, O(D^3).
inline double otoc_dephased_literal(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                                    const Eigen::MatrixXd& v) {
  const auto d = c.size();
  double total = 0.0;
  for (Eigen::Index m0 = 0; m0 < d; ++m0)
    for (Eigen::Index n0 = 0; n0 < d; ++n0) {
      double f = -w(m0, m0) * w(m0, m0) * v(m0, m0) * v(m0, n0);
      for (Eigen::Index m = 0; m < d; ++m)
        f += w(m0, m0) * v(m0, m) * w(m, m) * v(m, n0) + w(m0, m) * v(m, m) * w(m, m0) * v(m0, n0);
      total += c[m0] * c[n0] * f;
    }
  return total;
}

}  // namespace oracle
