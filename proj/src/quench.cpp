#include "qtherm/quench.hpp"

#include <cmath>
#include <string>
#include <type_traits>

#include "qtherm/errors.hpp"
#include "qtherm/kernels.hpp"

namespace qtherm {
namespace {

void check_dims(const QuenchState& state, const ObservableMatrix& obs) {
  if (state.coeffs.size() != obs.eigen.rows())
    throw ParameterError("state has " + std::to_string(state.coeffs.size()) +
                         " coefficients, observable dimension is " +
                         std::to_string(obs.eigen.rows()));
}

std::size_t resolve_configuration(const AnyBasis& basis, Bits bits) {
  if (const auto* sector = std::get_if<SectorBasis>(&basis)) {
    if (auto i = sector->find(bits)) return *i;
    throw ParameterError("initial configuration " + std::to_string(bits) +
                         " lies outside the basis sector");
  }
  if (bits >= basis_size(basis))
    throw ParameterError("initial state " + std::to_string(bits) + " outside the spin-boson basis");
  return bits;
}

QuenchState from_basis_index(const EigenSystem& es, std::size_t index, std::string label) {
  if (index >= es.dim()) throw ParameterError("basis index " + std::to_string(index) + " out of range");
  QuenchState s;
  s.coeffs = es.vectors.row(static_cast<Eigen::Index>(index)).transpose();
  s.origin = std::move(label);
  s.basis_index = index;
  return s;
}

}  // namespace

Bits correlated_configuration(int n_sites) {
  if (n_sites < 1) throw ParameterError("n_sites must be positive");
  return 1u;
}

Bits neel_configuration(int n_sites) {
  if (n_sites < 1) throw ParameterError("n_sites must be positive");
  Bits bits = 1u;
  for (int i = 2; i < n_sites; i += 2) bits |= Bits{1} << i;
  return bits;
}

Eigen::VectorXd bath_ground_state(const MixedFieldChainParams& params) {
  const EigenSystem bath = diagonalize(build_mixed_field_bath(params));
  const Eigen::VectorXd ground = bath.vectors.col(0);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(Eigen::Index{1} << params.n_sites);
  for (Eigen::Index b = 0; b < ground.size(); ++b) full[(b << 1) | 1] = ground[b];
  return full;
}

QuenchState prepare_quench(const EigenSystem& es, const Origin& origin) {
  if (!es.basis) throw ParameterError("eigensystem carries no basis");
  QuenchState s = std::visit(
      [&](const auto& o) -> QuenchState {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ConfigurationOrigin>) {
          return from_basis_index(es, resolve_configuration(*es.basis, o.bits),
                                  "configuration:" + std::to_string(o.bits));
        } else if constexpr (std::is_same_v<T, BasisStateOrigin>) {
          return from_basis_index(es, o.index, "basis:" + std::to_string(o.index));
        } else if constexpr (std::is_same_v<T, VectorOrigin>) {
          if (static_cast<std::size_t>(o.amplitudes.size()) != es.dim())
            throw ParameterError("initial vector has " + std::to_string(o.amplitudes.size()) +
                                 " amplitudes, basis dimension is " + std::to_string(es.dim()));
          const double norm = o.amplitudes.norm();
          if (!(norm > 0.0)) throw ParameterError("initial vector is zero");
          QuenchState q;
          q.coeffs = es.vectors.transpose() * (o.amplitudes / norm);
          q.origin = o.label;
          return q;
        } else {
          if (o.index >= es.dim())
            throw ParameterError("eigenstate index " + std::to_string(o.index) + " out of range");
          QuenchState q;
          q.coeffs = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(es.dim()),
                                           static_cast<Eigen::Index>(o.index));
          q.origin = "eigenstate:" + std::to_string(o.index);
          return q;
        }
      },
      origin);
  s.mean_energy = s.coeffs.array().square().matrix().dot(es.energies);
  return s;
}

double ipr(const QuenchState& state) { return state.coeffs.array().pow(4).sum(); }

MomentVector moments(const QuenchState& state) {
  const Eigen::ArrayXd c = state.coeffs.array();
  const Eigen::ArrayXd c2 = c.square();
  const Eigen::ArrayXd c4 = c2.square();
  return MomentVector{c2.sum(), (c2 * c).sum(), c4.sum(), (c4 * c2).sum(), c4.square().sum()};
}

std::vector<double> linear_grid(double t_max, std::size_t n_points) {
  if (!(t_max > 0.0) || n_points < 2) throw ParameterError("time grid needs t_max > 0 and >= 2 points");
  std::vector<double> t(n_points);
  for (std::size_t k = 0; k < n_points; ++k)
    t[k] = t_max * static_cast<double>(k) / static_cast<double>(n_points - 1);
  return t;
}

std::vector<double> log_grid(double t_min, double t_max, std::size_t n_points) {
  if (!(t_min > 0.0) || !(t_max > t_min) || n_points < 2)
    throw ParameterError("log grid needs 0 < t_min < t_max and >= 2 points");
  std::vector<double> t(n_points);
  const double ratio = std::log(t_max / t_min);
  for (std::size_t k = 0; k < n_points; ++k)
    t[k] = t_min * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n_points - 1));
  return t;
}

TimeSeries survival_probability_series(const QuenchState& state, const Eigen::VectorXd& energies,
                                       std::span<const double> times) {
  const Eigen::VectorXd weights = state.coeffs.array().square().matrix();
  return {{times.begin(), times.end()}, kernels::parallel::survival(weights, energies, times)};
}

TimeSeries expectation_series(const QuenchState& state, const ObservableMatrix& obs,
                              const Eigen::VectorXd& energies, std::span<const double> times) {
  check_dims(state, obs);
  return {{times.begin(), times.end()},
          kernels::parallel::expectation(state.coeffs, obs.eigen, energies, times)};
}

double de_average(const QuenchState& state, const ObservableMatrix& obs) {
  check_dims(state, obs);
  return state.coeffs.array().square().matrix().dot(obs.eigen.diagonal());
}

double de_fluctuations(const QuenchState& state, const ObservableMatrix& obs) {
  check_dims(state, obs);
  return kernels::parallel::off_diagonal_weight(state.coeffs, obs.eigen);
}

double two_time_average(const QuenchState& state, const ObservableMatrix& obs) {
  check_dims(state, obs);
  return kernels::parallel::two_time(state.coeffs, obs.eigen);
}

ObservableMatrix survival_probability_observable(const QuenchState& state, const EigenSystem& es) {
  const Eigen::VectorXd psi = es.vectors * state.coeffs;
  return ObservableMatrix{psi.array().square().matrix(), state.coeffs * state.coeffs.transpose()};
}

}  // namespace qtherm
