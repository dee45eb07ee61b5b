#include "qtherm/wigner_weisskopf.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qtherm/errors.hpp"

namespace qtherm {

WwParams WwParams::from_coupling(double g, double omega_0) {
  if (!(omega_0 > 0.0)) throw ParameterError("omega_0 must be positive");
  return {g, 2.0 * std::numbers::pi * g * g / omega_0, omega_0};
}

WwParams WwParams::from_decay_rate(double gamma, double omega_0) {
  if (!(omega_0 > 0.0) || !(gamma > 0.0)) throw ParameterError("gamma and omega_0 must be positive");
  return {std::sqrt(gamma * omega_0 / (2.0 * std::numbers::pi)), gamma, omega_0};
}

void WwParams::validate() const {
  if (!(omega_0 > 0.0)) throw ParameterError("omega_0 must be positive");
  const double expected = 2.0 * std::numbers::pi * g * g / omega_0;
  if (std::abs(gamma - expected) > 1e-12 * std::abs(expected))
    throw ParameterError("gamma " + std::to_string(gamma) + " inconsistent with 2 pi g^2 / omega_0 = " +
                         std::to_string(expected));
}

WwCoefficients ww_coefficients(const WwParams& p, std::span<const double> energies,
                               std::span<const double> detunings) {
  p.validate();
  const auto n_levels = static_cast<Eigen::Index>(energies.size());
  const auto n_modes = static_cast<Eigen::Index>(detunings.size());
  WwCoefficients out{Eigen::VectorXd(n_levels), Eigen::MatrixXd(n_levels, n_modes)};
  const double g2 = p.g * p.g;
  const double quarter_gamma2 = 0.25 * p.gamma * p.gamma;
  for (Eigen::Index mu = 0; mu < n_levels; ++mu) {
    const double e = energies[mu];
    const double norm = std::sqrt(g2 + quarter_gamma2 + e * e);
    out.up[mu] = p.g / norm;
    for (Eigen::Index n = 0; n < n_modes; ++n) {
      const double gap = e - detunings[n];
      if (std::abs(gap) < 1e-12 * p.omega_0)
        throw DomainError("level " + std::to_string(mu) + " sits on the pole at mode " +
                          std::to_string(n));
      out.modes(mu, n) = g2 / gap / norm;
    }
  }
  return out;
}

double ww_ipr(double omega_0, double gamma) {
  if (!(omega_0 > 0.0) || !(gamma > 0.0)) throw ParameterError("omega_0 and gamma must be positive");
  return omega_0 / (std::numbers::pi * gamma);
}

double ww_fluctuations(double omega_0, double gamma) {
  const double x = ww_ipr(omega_0, gamma);
  return 4.0 * x * x - 10.0 * x * x * x;
}

}  // namespace qtherm
