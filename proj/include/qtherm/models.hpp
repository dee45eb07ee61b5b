#pragma once

// Dense real-symmetric Hamiltonians for the three models studied here:
//   * NN-XXX: Heisenberg chain with nearest (J) and next-nearest (J') couplings
//     and a bias field on the system spin (site 0);
//   * mixed-field chain: system spin flip-flop coupled to one site of an
//     Ising + XX bath in transverse and longitudinal fields;
//   * spin-boson model in the rotating-wave approximation.
//
// Pauli convention: sigma_z|up> = +|up>. Open boundary conditions.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qtherm/basis.hpp"

namespace qtherm {

struct NnXxxParams {
  int n_sites = 0;
  double b_z_system = 0.05;
  double j = 1.0;
  double j_prime = 0.8;
};

struct MixedFieldChainParams {
  int n_sites = 0;
  double b_z_system = 0.8;
  double b_x_bath = 0.3;
  double b_z_bath = 0.0;
  double j_x = 1.0;
  double j_z = 0.1;
  double j_x_sb = 0.8;
  /// 1-based site of the bath spin the system couples to (system is site 1).
  int attach_site = 5;
};

enum class CouplingKind { constant, random };

struct SpinBosonParams {
  int n_modes = 0;
  double omega_z = 0.6;
  double omega_0 = 0.0;  ///< mode spacing, omega_n = n * omega_0
  CouplingKind coupling = CouplingKind::constant;
  double g = 0.0;  ///< constant coupling, or standard deviation when random
  std::uint64_t seed = 0;

  /// Parameters on the grid omega_n = n / N with g fixed by the decay rate
  /// gamma = 2 pi g^2 / omega_0.
  static SpinBosonParams from_decay_rate(int n_modes, double gamma, double omega_z,
                                         CouplingKind coupling, std::uint64_t seed = 0);
};

struct HamiltonianMatrix {
  Eigen::MatrixXd entries;
  BasisPtr basis;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

HamiltonianMatrix build_nn_xxx(const NnXxxParams& params, const SectorBasis& sector);

/// Full 2^N space; B_x on the bath breaks magnetization conservation.
HamiltonianMatrix build_mixed_field_chain(const MixedFieldChainParams& params);

/// Bath part H_B alone, on the N-1 bath sites (bath site b <-> chain site b+1).
HamiltonianMatrix build_mixed_field_bath(const MixedFieldChainParams& params);

HamiltonianMatrix build_spin_boson(const SpinBosonParams& params);

/// Coupling constants g_1..g_N used by build_spin_boson.
std::vector<double> spin_boson_couplings(const SpinBosonParams& params);

/// Dense total-S_z (sum of sigma_z over sites) on a full-space basis.
Eigen::VectorXd total_sigma_z(const SectorBasis& basis);

/// max |[H, M]| for M = diag(total sigma_z).
double magnetization_commutator(const HamiltonianMatrix& h);

}  // namespace qtherm
