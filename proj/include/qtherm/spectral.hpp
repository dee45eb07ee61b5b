#pragma once

// Dense symmetric eigendecomposition and eigenbasis bookkeeping.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "qtherm/basis.hpp"
#include "qtherm/models.hpp"

namespace qtherm {

/// Ascending energies and eigenvectors; vectors(alpha, mu) = <phi_alpha|psi_mu>.
/// Each eigenvector is signed so that its largest-magnitude component is positive.
struct EigenSystem {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  BasisPtr basis;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(energies.size()); }
  double width() const noexcept {
    return energies.size() ? energies[energies.size() - 1] - energies[0] : 0.0;
  }
};

/// Observable diagonal in the product basis together with its eigenbasis
/// matrix O_{mu nu} = <psi_mu|O|psi_nu>.
struct ObservableMatrix {
  Eigen::VectorXd diag_product_basis;
  Eigen::MatrixXd eigen;
};

struct DegeneracyReport {
  std::vector<std::vector<std::size_t>> groups;  ///< non-singleton only
  std::size_t gap_collisions = 0;

  std::size_t degenerate_levels() const noexcept {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
  }
};

struct SpectralDensity {
  std::vector<double> bin_centers;
  std::vector<std::size_t> counts;
  std::vector<double> density;  ///< counts / bin width
  double bin_width = 0.0;
};

struct MicrocanonicalResult {
  double value = 0.0;
  double window = 0.0;
  std::size_t n_levels = 0;
};

inline constexpr double kDefaultDegeneracyTolerance = 1e-10;
inline constexpr double kDefaultMicrocanonicalFraction = 0.02;

EigenSystem diagonalize(const HamiltonianMatrix& h);
EigenSystem diagonalize(const Eigen::MatrixXd& h, BasisPtr basis);

ObservableMatrix rotate_observable(std::span<const double> diag, const EigenSystem& es);
ObservableMatrix rotate_observable(const Eigen::VectorXd& diag, const EigenSystem& es);

DegeneracyReport detect_degeneracies(const Eigen::VectorXd& energies,
                                     double tol_rel = kDefaultDegeneracyTolerance);

/// Unweighted mean of O_{mu mu} over levels in [center - window/2, center + window/2].
/// Throws DomainError when the window holds no level.
double microcanonical_average(const ObservableMatrix& obs, const EigenSystem& es,
                              double e_center, double window);

/// Starts from `fraction` of the spectral width and doubles the window until
/// it contains at least one level.
MicrocanonicalResult microcanonical_average_auto(const ObservableMatrix& obs,
                                                 const EigenSystem& es, double e_center,
                                                 double fraction = kDefaultMicrocanonicalFraction);

SpectralDensity density_of_states(const Eigen::VectorXd& energies, std::size_t n_bins);

/// max |C^T C - 1|
double orthonormality_residual(const EigenSystem& es);
/// max |C^T H C - diag(E)|
double reconstruction_residual(const EigenSystem& es, const Eigen::MatrixXd& h);

}  // namespace qtherm
