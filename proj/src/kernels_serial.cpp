#include <cmath>

#include "qtherm/kernels.hpp"

namespace qtherm::kernels::serial {

Eigen::MatrixXd rotate(const Eigen::MatrixXd& c, const Eigen::VectorXd& d) {
  const Eigen::Index n = c.rows();
  const Eigen::Index m = c.cols();
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index mu = 0; mu < m; ++mu) {
    for (Eigen::Index nu = mu; nu < m; ++nu) {
      double sum = 0.0;
      for (Eigen::Index a = 0; a < n; ++a) sum += c(a, mu) * d[a] * c(a, nu);
      out(mu, nu) = sum;
      out(nu, mu) = sum;
    }
  }
  return out;
}

std::vector<double> survival(const Eigen::VectorXd& p, const Eigen::VectorXd& e,
                             std::span<const double> times) {
  std::vector<double> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    Complex amp{0.0, 0.0};
    for (Eigen::Index mu = 0; mu < p.size(); ++mu)
      amp += p[mu] * std::exp(Complex{0.0, -e[mu] * times[k]});
    out[k] = std::norm(amp);
  }
  return out;
}

std::vector<double> expectation(const Eigen::VectorXd& c, const Eigen::MatrixXd& o,
                                const Eigen::VectorXd& e, std::span<const double> times) {
  std::vector<double> out(times.size());
  const Eigen::Index n = c.size();
  for (std::size_t k = 0; k < times.size(); ++k) {
    double sum = 0.0;
    for (Eigen::Index mu = 0; mu < n; ++mu)
      for (Eigen::Index nu = 0; nu < n; ++nu)
        sum += c[mu] * c[nu] * std::cos((e[mu] - e[nu]) * times[k]) * o(mu, nu);
    out[k] = sum;
  }
  return out;
}

namespace {

// conj(p) .* (m * (p .* x))
std::vector<Complex> heisenberg_apply(const Eigen::MatrixXd& m, const std::vector<Complex>& phase,
                                      const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    Complex sum{0.0, 0.0};
    for (std::size_t nu = 0; nu < n; ++nu) sum += m(mu, nu) * phase[nu] * x[nu];
    out[mu] = std::conj(phase[mu]) * sum;
  }
  return out;
}

std::vector<Complex> apply_matrix(const Eigen::MatrixXd& m, const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    Complex sum{0.0, 0.0};
    for (std::size_t nu = 0; nu < n; ++nu) sum += m(mu, nu) * x[nu];
    out[mu] = sum;
  }
  return out;
}

}  // namespace

std::vector<Complex> otoc(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                          const Eigen::MatrixXd& v, const Eigen::VectorXd& e,
                          std::span<const double> times) {
  const auto n = static_cast<std::size_t>(c.size());
  std::vector<Complex> psi(n);
  for (std::size_t mu = 0; mu < n; ++mu) psi[mu] = c[mu];
  const auto v_psi = apply_matrix(v, psi);

  std::vector<Complex> out(times.size());
  std::vector<Complex> phase(n);
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t mu = 0; mu < n; ++mu) phase[mu] = std::exp(Complex{0.0, -e[mu] * times[k]});
    const auto u = heisenberg_apply(w, phase, apply_matrix(v, heisenberg_apply(w, phase, v_psi)));
    Complex sum{0.0, 0.0};
    for (std::size_t mu = 0; mu < n; ++mu) sum += c[mu] * u[mu];
    out[k] = sum;
  }
  return out;
}

double off_diagonal_weight(const Eigen::VectorXd& c, const Eigen::MatrixXd& o) {
  double sum = 0.0;
  for (Eigen::Index mu = 0; mu < c.size(); ++mu)
    for (Eigen::Index nu = 0; nu < c.size(); ++nu)
      if (mu != nu) sum += c[mu] * c[mu] * c[nu] * c[nu] * o(mu, nu) * o(mu, nu);
  return sum;
}

double two_time(const Eigen::VectorXd& c, const Eigen::MatrixXd& o) {
  double sum = 0.0;
  for (Eigen::Index mu = 0; mu < c.size(); ++mu)
    for (Eigen::Index nu = 0; nu < c.size(); ++nu) sum += c[mu] * c[nu] * o(mu, mu) * o(mu, nu);
  return sum;
}

// Literal three-index form of the dephased OTOC.
double otoc_dephased(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                     const Eigen::MatrixXd& v) {
  const Eigen::Index n = c.size();
  double total = 0.0;
  for (Eigen::Index m0 = 0; m0 < n; ++m0) {
    for (Eigen::Index n0 = 0; n0 < n; ++n0) {
      double f = 0.0;
      for (Eigen::Index mu = 0; mu < n; ++mu) {
        f += w(m0, m0) * v(m0, mu) * w(mu, mu) * v(mu, n0);
        f += w(m0, mu) * v(mu, mu) * w(mu, m0) * v(m0, n0);
      }
      f -= w(m0, m0) * w(m0, m0) * v(m0, m0) * v(m0, n0);
      total += c[m0] * c[n0] * f;
    }
  }
  return total;
}

}  // namespace qtherm::kernels::serial
