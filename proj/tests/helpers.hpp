#pragma once

#include <Eigen/Dense>
#include <random>

#include "qtherm/models.hpp"
#include "qtherm/quench.hpp"
#include "qtherm/spectral.hpp"

namespace testing {

// NN-XXX chain, default couplings, in a fixed sector.
inline qtherm::EigenSystem nn_xxx_system(int n, std::optional<int> k, double bz = 0.05) {
  qtherm::NnXxxParams p;
  p.n_sites = n;
  p.b_z_system = bz;
  return qtherm::diagonalize(qtherm::build_nn_xxx(p, qtherm::enumerate_sector(n, k)));
}

inline Eigen::VectorXd random_unit(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
  return v.normalized();
}

inline Eigen::MatrixXd random_symmetric(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return normal(rng); });
  return 0.5 * (a + a.transpose());
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
