#include "qtherm/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qtherm/basis.hpp"
#include "qtherm/errors.hpp"

namespace qtherm {
namespace {

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = m.row(rows[r]);
  return out;
}

}  // namespace

double eta_overlap(const EigenSystem& es, std::span<const std::size_t> up_block, std::size_t mu,
                   std::size_t nu) {
  if (mu >= es.dim() || nu >= es.dim()) throw ParameterError("eigenstate index out of range");
  double eta = 0.0;
  for (std::size_t k : up_block) eta += es.vectors(k, mu) * es.vectors(k, nu);
  return eta;
}

double completeness_residual(const EigenSystem& es, std::size_t n_pairs, std::uint64_t seed) {
  const auto up = system_up_block(*es.basis);
  std::vector<std::size_t> down;
  for (std::size_t i = 0; i < es.dim(); ++i)
    if (!system_up(*es.basis, i)) down.push_back(i);

  auto check = [&](std::size_t mu, std::size_t nu) {
    double s = eta_overlap(es, up, mu, nu);
    for (std::size_t k : down) s += es.vectors(k, mu) * es.vectors(k, nu);
    return std::abs(s - (mu == nu ? 1.0 : 0.0));
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, es.dim() - 1);
  double worst = 0.0;
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const std::size_t mu = pick(rng);
    const std::size_t nu = pick(rng);
    worst = std::max({worst, check(mu, nu), check(mu, mu)});
  }
  return worst;
}

AnsatzReport ansatz_residual(const ObservableMatrix& obs, const EigenSystem& es,
                             const QuenchState& state, double delta_o, double o_down) {
  const auto n = static_cast<Eigen::Index>(es.dim());
  if (obs.eigen.rows() != n || state.coeffs.size() != n)
    throw ParameterError("observable, state and eigensystem dimensions disagree");

  const double scale = std::max({1.0, std::abs(o_down), std::abs(o_down + delta_o)});
  for (Eigen::Index a = 0; a < n; ++a) {
    const double expected = system_up(*es.basis, a) ? o_down + delta_o : o_down;
    if (std::abs(obs.diag_product_basis[a] - expected) > 1e-12 * scale)
      throw ParameterError("observable is not diagonal in the system spin with values (" +
                           std::to_string(o_down + delta_o) + ", " + std::to_string(o_down) +
                           "); mismatch at basis state " + std::to_string(a));
  }

  const Eigen::VectorXd& c = state.coeffs;
  Eigen::MatrixXd residual = obs.eigen - delta_o * c * c.transpose();
  residual.diagonal().array() -= o_down;

  AnsatzReport report;
  const double norm = obs.eigen.norm();
  report.residual_fro = norm > 0.0 ? residual.norm() / norm : residual.norm();
  report.max_abs_residual = residual.cwiseAbs().maxCoeff();

  const Eigen::MatrixXd up_rows = rows_of(es.vectors, system_up_block(*es.basis));
  Eigen::MatrixXd eta = up_rows.transpose() * up_rows;
  eta -= c * c.transpose();
  report.eta_max_offblock = eta.cwiseAbs().maxCoeff();
  report.completeness_residual = completeness_residual(es);
  return report;
}

std::pair<double, double> default_profile_shell(const QuenchState& state, const EigenSystem& es) {
  const Eigen::ArrayXd p = state.coeffs.array().square();
  const double mean = (p * es.energies.array()).sum();
  const double var = (p * (es.energies.array() - mean).square()).sum();
  const double sd = std::sqrt(std::max(var, 0.0));
  return {mean - sd, mean + sd};
}

OffDiagonalProfile offdiagonal_profile(const ObservableMatrix& obs, const EigenSystem& es,
                                       double shell_lo, double shell_hi, std::size_t n_omega_bins,
                                       std::size_t n_energy_bins) {
  if (n_omega_bins < 1 || n_energy_bins < 1) throw ParameterError("profile needs at least one bin");
  const auto n = static_cast<Eigen::Index>(es.dim());
  const Eigen::VectorXd& e = es.energies;

  Eigen::Index in_shell = 0;
  for (Eigen::Index mu = 0; mu < n; ++mu)
    if (e[mu] >= shell_lo && e[mu] <= shell_hi) ++in_shell;
  if (in_shell < 2)
    throw DomainError("energy shell [" + std::to_string(shell_lo) + ", " +
                      std::to_string(shell_hi) + "] holds fewer than two levels");

  struct Pair {
    double omega, value;
  };
  std::vector<Pair> pairs;
  double omega_max = 0.0;
  for (Eigen::Index mu = 0; mu < n; ++mu)
    for (Eigen::Index nu = mu + 1; nu < n; ++nu) {
      const double mean = 0.5 * (e[mu] + e[nu]);
      if (mean < shell_lo || mean > shell_hi) continue;
      const double omega = std::abs(e[nu] - e[mu]);
      pairs.push_back({omega, obs.eigen(mu, nu) * obs.eigen(mu, nu)});
      omega_max = std::max(omega_max, omega);
    }

  OffDiagonalProfile prof;
  const double dw = omega_max > 0.0 ? omega_max / static_cast<double>(n_omega_bins) : 1.0;
  prof.omega_bins.resize(n_omega_bins);
  prof.mean_sq.assign(n_omega_bins, 0.0);
  prof.counts.assign(n_omega_bins, 0);
  for (std::size_t b = 0; b < n_omega_bins; ++b) prof.omega_bins[b] = (b + 0.5) * dw;
  for (const auto& [omega, value] : pairs) {
    const auto b = std::min(static_cast<std::size_t>(omega / dw), n_omega_bins - 1);
    prof.mean_sq[b] += value;
    prof.counts[b] += 1;
  }
  for (std::size_t b = 0; b < n_omega_bins; ++b)
    if (prof.counts[b]) prof.mean_sq[b] /= static_cast<double>(prof.counts[b]);

  const double lo = e[0];
  const double width = es.width() > 0.0 ? es.width() : 1.0;
  const double de = width / static_cast<double>(n_energy_bins);
  prof.energy_bins.resize(n_energy_bins);
  prof.diag_running_mean.assign(n_energy_bins, 0.0);
  prof.diag_counts.assign(n_energy_bins, 0);
  for (std::size_t b = 0; b < n_energy_bins; ++b) prof.energy_bins[b] = lo + (b + 0.5) * de;
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    const auto b = std::min(static_cast<std::size_t>((e[mu] - lo) / de), n_energy_bins - 1);
    prof.diag_running_mean[b] += obs.eigen(mu, mu);
    prof.diag_counts[b] += 1;
  }
  for (std::size_t b = 0; b < n_energy_bins; ++b)
    if (prof.diag_counts[b]) prof.diag_running_mean[b] /= static_cast<double>(prof.diag_counts[b]);
  return prof;
}

}  // namespace qtherm
