#include "qtherm/models.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "qtherm/errors.hpp"

namespace qtherm {
namespace {

struct Bond {
  int a, b;
  double coupling;
};

// sigma_a . sigma_b: +c on parallel pairs, -c on antiparallel pairs plus a
// 2c flip-flop to the exchanged configuration.
void add_heisenberg_bonds(Eigen::MatrixXd& h, const SectorBasis& basis,
                          const std::vector<Bond>& bonds) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Bits s = basis[i];
    for (const auto& [a, b, c] : bonds) {
      const bool up_a = (s >> a) & 1u;
      const bool up_b = (s >> b) & 1u;
      if (up_a == up_b) {
        h(i, i) += c;
        continue;
      }
      h(i, i) -= c;
      const std::size_t j = basis.locate(s ^ ((Bits{1} << a) | (Bits{1} << b)));
      if (j > i) {
        h(i, j) += 2.0 * c;
        h(j, i) += 2.0 * c;
      }
    }
  }
}

// (sigma+_a sigma-_b + h.c.) * c: amplitude c between antiparallel pairs.
void add_flip_flop(Eigen::MatrixXd& h, const SectorBasis& basis, int a, int b, double c) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Bits s = basis[i];
    if (((s >> a) & 1u) == ((s >> b) & 1u)) continue;
    const std::size_t j = basis.locate(s ^ ((Bits{1} << a) | (Bits{1} << b)));
    if (j > i) {
      h(i, j) += c;
      h(j, i) += c;
    }
  }
}

void add_field_z(Eigen::MatrixXd& h, const SectorBasis& basis, int site, double b) {
  for (std::size_t i = 0; i < basis.size(); ++i) h(i, i) += ((basis[i] >> site) & 1u) ? b : -b;
}

void add_ising_zz(Eigen::MatrixXd& h, const SectorBasis& basis, int a, int b, double c) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Bits s = basis[i];
    h(i, i) += (((s >> a) & 1u) == ((s >> b) & 1u)) ? c : -c;
  }
}

// Requires the full space.
void add_field_x(Eigen::MatrixXd& h, const SectorBasis& basis, int site, double b) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::size_t j = basis.locate(basis[i] ^ (Bits{1} << site));
    if (j > i) {
      h(i, j) += b;
      h(j, i) += b;
    }
  }
}

HamiltonianMatrix wrap(Eigen::MatrixXd entries, AnyBasis basis) {
  return HamiltonianMatrix{std::move(entries), std::make_shared<const AnyBasis>(std::move(basis))};
}

void validate(const MixedFieldChainParams& p) {
  if (p.n_sites < 2) throw ParameterError("mixed-field chain needs at least 2 sites");
  if (p.attach_site < 2 || p.attach_site > p.n_sites)
    throw ParameterError("attach_site " + std::to_string(p.attach_site) + " outside [2, " +
                         std::to_string(p.n_sites) + "]");
}

// Bath terms on chain sites [first, first + n_bath) of `basis`.
void add_mixed_bath(Eigen::MatrixXd& h, const SectorBasis& basis, const MixedFieldChainParams& p,
                    int first, int n_bath) {
  for (int s = first; s < first + n_bath; ++s) {
    if (p.b_z_bath != 0.0) add_field_z(h, basis, s, p.b_z_bath);
    if (p.b_x_bath != 0.0) add_field_x(h, basis, s, p.b_x_bath);
  }
  for (int s = first; s + 1 < first + n_bath; ++s) {
    if (p.j_z != 0.0) add_ising_zz(h, basis, s, s + 1, p.j_z);
    if (p.j_x != 0.0) add_flip_flop(h, basis, s, s + 1, p.j_x);
  }
}

}  // namespace

SpinBosonParams SpinBosonParams::from_decay_rate(int n_modes, double gamma, double omega_z,
                                                 CouplingKind coupling, std::uint64_t seed) {
  if (n_modes < 1) throw ParameterError("n_modes must be positive");
  if (!(gamma > 0.0)) throw ParameterError("decay rate must be positive");
  SpinBosonParams p;
  p.n_modes = n_modes;
  p.omega_z = omega_z;
  p.omega_0 = 1.0 / n_modes;
  p.coupling = coupling;
  p.g = std::sqrt(gamma * p.omega_0 / (2.0 * std::numbers::pi));
  p.seed = seed;
  return p;
}

HamiltonianMatrix build_nn_xxx(const NnXxxParams& p, const SectorBasis& sector) {
  if (p.n_sites < 2) throw ParameterError("NN-XXX chain needs at least 2 sites");
  if (p.j == 0.0) throw ParameterError("NN-XXX coupling J must be non-zero");
  if (sector.n_sites() != p.n_sites)
    throw ParameterError("sector has " + std::to_string(sector.n_sites()) + " sites, model has " +
                         std::to_string(p.n_sites));

  std::vector<Bond> bonds;
  for (int i = 0; i + 1 < p.n_sites; ++i) bonds.push_back({i, i + 1, p.j});
  if (p.j_prime != 0.0)
    for (int i = 0; i + 2 < p.n_sites; ++i) bonds.push_back({i, i + 2, p.j_prime});

  const auto dim = static_cast<Eigen::Index>(sector.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  add_field_z(h, sector, 0, p.b_z_system);
  add_heisenberg_bonds(h, sector, bonds);
  return wrap(std::move(h), sector);
}

HamiltonianMatrix build_mixed_field_chain(const MixedFieldChainParams& p) {
  validate(p);
  SectorBasis basis = enumerate_sector(p.n_sites, std::nullopt);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  add_field_z(h, basis, 0, p.b_z_system);
  add_mixed_bath(h, basis, p, 1, p.n_sites - 1);
  add_flip_flop(h, basis, 0, p.attach_site - 1, p.j_x_sb);
  return wrap(std::move(h), std::move(basis));
}

HamiltonianMatrix build_mixed_field_bath(const MixedFieldChainParams& p) {
  validate(p);
  const int n_bath = p.n_sites - 1;
  SectorBasis basis = enumerate_sector(n_bath, std::nullopt);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  add_mixed_bath(h, basis, p, 0, n_bath);
  return wrap(std::move(h), std::move(basis));
}

std::vector<double> spin_boson_couplings(const SpinBosonParams& p) {
  std::vector<double> g(static_cast<std::size_t>(p.n_modes), p.g);
  if (p.coupling == CouplingKind::random) {
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> normal(0.0, p.g);
    for (auto& x : g) x = normal(rng);
  }
  return g;
}

HamiltonianMatrix build_spin_boson(const SpinBosonParams& p) {
  if (p.n_modes < 2) throw ParameterError("spin-boson model needs at least 2 modes");
  if (!(p.omega_0 > 0.0)) throw ParameterError("mode spacing omega_0 must be positive");

  const SpinBosonBasis basis{p.n_modes};
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  h(0, 0) = 0.5 * p.omega_z;
  const auto g = spin_boson_couplings(p);
  for (int n = 1; n <= p.n_modes; ++n) {
    h(n, n) = -0.5 * p.omega_z + n * p.omega_0;
    h(0, n) = g[n - 1];
    h(n, 0) = g[n - 1];
  }
  return wrap(std::move(h), basis);
}

Eigen::VectorXd total_sigma_z(const SectorBasis& basis) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    m[i] = 2.0 * std::popcount(basis[i]) - basis.n_sites();
  return m;
}

double magnetization_commutator(const HamiltonianMatrix& h) {
  const auto* sector = std::get_if<SectorBasis>(h.basis.get());
  if (!sector) throw ParameterError("magnetization is defined for spin-chain bases only");
  const Eigen::VectorXd m = total_sigma_z(*sector);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < h.entries.cols(); ++j)
    for (Eigen::Index i = 0; i < h.entries.rows(); ++i)
      worst = std::max(worst, std::abs(h.entries(i, j) * (m[j] - m[i])));
  return worst;
}

}  // namespace qtherm
