#pragma once

// Quench initial states and their diagonal-ensemble diagnostics.

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qtherm/basis.hpp"
#include "qtherm/models.hpp"
#include "qtherm/spectral.hpp"

namespace qtherm {

/// A product-basis configuration of a spin-chain basis, or ordinal of a
/// spin-boson basis state.
struct ConfigurationOrigin {
  Bits bits = 0;
};

struct BasisStateOrigin {
  std::size_t index = 0;
};

/// Arbitrary normalized amplitudes over the product basis.
struct VectorOrigin {
  Eigen::VectorXd amplitudes;
  std::string label = "vector";
};

struct EigenstateOrigin {
  std::size_t index = 0;
};

using Origin = std::variant<ConfigurationOrigin, BasisStateOrigin, VectorOrigin, EigenstateOrigin>;

/// c_mu = <psi_mu|psi(0)>
struct QuenchState {
  Eigen::VectorXd coeffs;
  std::string origin;
  double mean_energy = 0.0;
  /// Basis ordinal alpha_0 when the state is a single product configuration.
  std::optional<std::size_t> basis_index;
};

struct MomentVector {
  double i2 = 0.0;
  double i3 = 0.0;
  double i4 = 0.0;
  double i6 = 0.0;
  double i8 = 0.0;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// System spin up, bath all down.
Bits correlated_configuration(int n_sites);
/// System spin up, bath alternating starting down: |up; down up down ...>.
Bits neel_configuration(int n_sites);

/// |up>_S (x) ground state of the mixed-field bath, over the full 2^N basis.
Eigen::VectorXd bath_ground_state(const MixedFieldChainParams& params);

QuenchState prepare_quench(const EigenSystem& es, const Origin& origin);

double ipr(const QuenchState& state);
MomentVector moments(const QuenchState& state);

std::vector<double> linear_grid(double t_max, std::size_t n_points);
/// Logarithmic grid from t_min to t_max (both > 0).
std::vector<double> log_grid(double t_min, double t_max, std::size_t n_points);

TimeSeries survival_probability_series(const QuenchState& state, const Eigen::VectorXd& energies,
                                       std::span<const double> times);
TimeSeries expectation_series(const QuenchState& state, const ObservableMatrix& obs,
                              const Eigen::VectorXd& energies, std::span<const double> times);

/// sum_mu c_mu^2 O_{mu mu}
double de_average(const QuenchState& state, const ObservableMatrix& obs);
/// sum_{mu != nu} c_mu^2 c_nu^2 |O_{mu nu}|^2; assumes non-degenerate gaps.
double de_fluctuations(const QuenchState& state, const ObservableMatrix& obs);
/// Time average of <O(t) O>: sum_{mu nu} c_mu c_nu O_{mu mu} O_{mu nu}.
double two_time_average(const QuenchState& state, const ObservableMatrix& obs);

/// Projector onto the initial state, (P0)_{mu nu} = c_mu c_nu.
ObservableMatrix survival_probability_observable(const QuenchState& state, const EigenSystem& es);

}  // namespace qtherm
