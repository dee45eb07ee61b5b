#pragma once

// How closely system-local observables follow the correlated-quench form
//   O_{mu nu} = dO c_mu(alpha0) c_nu(alpha0) + O_down delta_{mu nu}
// rather than a random off-diagonal structure.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qtherm/quench.hpp"
#include "qtherm/spectral.hpp"

namespace qtherm {

struct AnsatzReport {
  double residual_fro = 0.0;      ///< ||O - ansatz||_F / ||O||_F
  double max_abs_residual = 0.0;
  double eta_max_offblock = 0.0;  ///< max |eta_{mu nu} - c_mu c_nu|
  double completeness_residual = 0.0;
};

struct OffDiagonalProfile {
  std::vector<double> omega_bins;  ///< bin centers in |E_mu - E_nu|
  std::vector<double> mean_sq;     ///< mean |O_{mu nu}|^2 per bin
  std::vector<std::size_t> counts;
  std::vector<double> energy_bins;
  std::vector<double> diag_running_mean;
  std::vector<std::size_t> diag_counts;
};

/// eta = sum over system-up configurations k of c_mu(k) c_nu(k).
double eta_overlap(const EigenSystem& es, std::span<const std::size_t> up_block, std::size_t mu,
                   std::size_t nu);

/// max |sum_down c_mu c_nu + sum_up c_mu c_nu - delta_{mu nu}| over `n_pairs`
/// random eigenpairs (plus the diagonal of each sampled index).
double completeness_residual(const EigenSystem& es, std::size_t n_pairs = 1000,
                             std::uint64_t seed = 0);

/// Throws ParameterError unless the observable's product-basis diagonal equals
/// o_down + delta_o on system-up states and o_down elsewhere.
AnsatzReport ansatz_residual(const ObservableMatrix& obs, const EigenSystem& es,
                             const QuenchState& state, double delta_o, double o_down);

/// Mean energy +/- one standard deviation of the state's energy distribution.
std::pair<double, double> default_profile_shell(const QuenchState& state, const EigenSystem& es);

OffDiagonalProfile offdiagonal_profile(const ObservableMatrix& obs, const EigenSystem& es,
                                       double shell_lo, double shell_hi,
                                       std::size_t n_omega_bins = 50,
                                       std::size_t n_energy_bins = 20);

}  // namespace qtherm
