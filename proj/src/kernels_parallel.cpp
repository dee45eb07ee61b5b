#include <cmath>
#include <numeric>

#include "qtherm/kernels.hpp"

namespace qtherm::kernels::parallel {
namespace {

using Index = Eigen::Index;

double ordered_sum(const std::vector<double>& partial) {
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

// (m x)_mu as column dots; m symmetric, so column mu equals row mu.
Eigen::VectorXd symmetric_apply(const Eigen::MatrixXd& m, const Eigen::VectorXd& x) {
  Eigen::VectorXd out(x.size());
#pragma omp parallel for schedule(static)
  for (Index mu = 0; mu < x.size(); ++mu) out[mu] = m.col(mu).dot(x);
  return out;
}

}  // namespace

Eigen::MatrixXd rotate(const Eigen::MatrixXd& c, const Eigen::VectorXd& d) {
  const Eigen::MatrixXd scaled = d.asDiagonal() * c;
  Eigen::MatrixXd out = c.transpose() * scaled;
  const Index m = out.rows();
#pragma omp parallel for schedule(static)
  for (Index nu = 0; nu < m; ++nu)
    for (Index mu = nu + 1; mu < m; ++mu) out(mu, nu) = out(nu, mu);
  return out;
}

std::vector<double> survival(const Eigen::VectorXd& p, const Eigen::VectorXd& e,
                             std::span<const double> times) {
  std::vector<double> out(times.size());
  const auto n_times = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n_times; ++k) {
    const double t = times[k];
    double re = 0.0;
    double im = 0.0;
    for (Index mu = 0; mu < p.size(); ++mu) {
      re += p[mu] * std::cos(e[mu] * t);
      im -= p[mu] * std::sin(e[mu] * t);
    }
    out[k] = re * re + im * im;
  }
  return out;
}

std::vector<double> expectation(const Eigen::VectorXd& c, const Eigen::MatrixXd& o,
                                const Eigen::VectorXd& e, std::span<const double> times) {
  std::vector<double> out(times.size());
  const auto n_times = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n_times; ++k) {
    const Eigen::ArrayXd phase = e.array() * times[k];
    const Eigen::VectorXd re = (c.array() * phase.cos()).matrix();
    const Eigen::VectorXd im = (c.array() * phase.sin()).matrix();
    // v = re - i im; v^dagger O v = re.O.re + im.O.im for symmetric O
    out[k] = re.dot(o * re) + im.dot(o * im);
  }
  return out;
}

std::vector<Complex> otoc(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                          const Eigen::MatrixXd& v, const Eigen::VectorXd& e,
                          std::span<const double> times) {
  const Eigen::VectorXd v_psi = symmetric_apply(v, c);
  std::vector<Complex> out(times.size());
  const auto n_times = static_cast<std::ptrdiff_t>(times.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n_times; ++k) {
    const Eigen::ArrayXd angle = e.array() * times[k];
    const Eigen::ArrayXd cs = angle.cos();
    const Eigen::ArrayXd sn = angle.sin();

    // W(t) x = conj(p) .* (W (p .* x)), p = cos - i sin
    auto heisenberg = [&](const Eigen::ArrayXd& xr, const Eigen::ArrayXd& xi,
                          Eigen::ArrayXd& yr, Eigen::ArrayXd& yi) {
      const Eigen::VectorXd pr = (cs * xr + sn * xi).matrix();
      const Eigen::VectorXd pi = (cs * xi - sn * xr).matrix();
      const Eigen::ArrayXd qr = (w * pr).array();
      const Eigen::ArrayXd qi = (w * pi).array();
      yr = cs * qr - sn * qi;
      yi = cs * qi + sn * qr;
    };

    Eigen::ArrayXd yr, yi, ur, ui;
    heisenberg(v_psi.array(), Eigen::ArrayXd::Zero(c.size()), yr, yi);
    const Eigen::ArrayXd zr = (v * yr.matrix()).array();
    const Eigen::ArrayXd zi = (v * yi.matrix()).array();
    heisenberg(zr, zi, ur, ui);
    out[k] = Complex{(c.array() * ur).sum(), (c.array() * ui).sum()};
  }
  return out;
}

double off_diagonal_weight(const Eigen::VectorXd& c, const Eigen::MatrixXd& o) {
  const Eigen::VectorXd p = c.array().square().matrix();
  std::vector<double> partial(static_cast<std::size_t>(c.size()));
#pragma omp parallel for schedule(static)
  for (Index mu = 0; mu < c.size(); ++mu) {
    const double row = (p.array() * o.col(mu).array().square()).sum() - p[mu] * o(mu, mu) * o(mu, mu);
    partial[mu] = p[mu] * row;
  }
  return ordered_sum(partial);
}

double two_time(const Eigen::VectorXd& c, const Eigen::MatrixXd& o) {
  std::vector<double> partial(static_cast<std::size_t>(c.size()));
#pragma omp parallel for schedule(static)
  for (Index mu = 0; mu < c.size(); ++mu) partial[mu] = c[mu] * o(mu, mu) * o.col(mu).dot(c);
  return ordered_sum(partial);
}

double otoc_dephased(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                     const Eigen::MatrixXd& v) {
  const Index n = c.size();
  const Eigen::VectorXd vc = symmetric_apply(v, c);
  const Eigen::VectorXd wd = w.diagonal();
  const Eigen::VectorXd vd = v.diagonal();
  const Eigen::VectorXd wvc = (wd.array() * vc.array()).matrix();

  std::vector<double> partial(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (Index m0 = 0; m0 < n; ++m0) {
    const double f1 = c[m0] * wd[m0] * v.col(m0).dot(wvc);
    const double f2 = c[m0] * vc[m0] * (w.col(m0).array().square() * vd.array()).sum();
    const double f3 = c[m0] * vc[m0] * wd[m0] * wd[m0] * vd[m0];
    partial[m0] = f1 + f2 - f3;
  }
  return ordered_sum(partial);
}

}  // namespace qtherm::kernels::parallel
