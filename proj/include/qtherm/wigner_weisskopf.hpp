#pragma once

// Closed-form Wigner-Weisskopf solution of the constant-coupling spin-boson
// model in the rotating-wave approximation. Energies are measured from the
// |up,0> level; mode energies enter as detunings from it.

#include <Eigen/Dense>
#include <span>

namespace qtherm {

struct WwParams {
  double g = 0.0;
  double gamma = 0.0;  ///< 2 pi g^2 / omega_0
  double omega_0 = 0.0;

  static WwParams from_coupling(double g, double omega_0);
  static WwParams from_decay_rate(double gamma, double omega_0);
  /// Throws ParameterError when gamma != 2 pi g^2 / omega_0 (1e-12 relative).
  void validate() const;
};

/// up(mu) = <up,0|psi_mu>, modes(mu, n) = <down,1_n|psi_mu>.
struct WwCoefficients {
  Eigen::VectorXd up;
  Eigen::MatrixXd modes;
};

/// Throws DomainError when some E_mu sits on a mode detuning (|E - w_n| < 1e-12 omega_0).
WwCoefficients ww_coefficients(const WwParams& params, std::span<const double> energies,
                               std::span<const double> detunings);

/// Continuum-limit IPR of |up,0>: omega_0 / (pi gamma).
double ww_ipr(double omega_0, double gamma);

/// Continuum-limit sigma_z fluctuations: 4 (w0/pi gamma)^2 - 10 (w0/pi gamma)^3.
double ww_fluctuations(double omega_0, double gamma);

}  // namespace qtherm
