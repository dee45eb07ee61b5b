#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qtherm/otoc.hpp"

using namespace qtherm;

TEST_SUITE("otoc") {
  TEST_CASE("closed form at the Pauli point") {
    const PauliScalars s;
    CHECK(otoc_theory(s, MomentVector{1.0, 0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
    // term-by-term symbolic expansion: 1 - 8 I4 + 16 I4^2 - 8 I8
    CHECK(otoc_theory(s, MomentVector{1.0, 0.0, 0.1, 0.0, 0.01}) == doctest::Approx(0.28).epsilon(1e-14));
  }

  TEST_CASE("closed form limits") {
    const PauliScalars flat{0.7, 0.0, -1.3, 0.0};
    CHECK(otoc_theory(flat, MomentVector{1.0, 0.0, 0.3, 0.0, 0.05}) ==
          doctest::Approx(0.7 * 0.7 * 1.3 * 1.3));
    const PauliScalars s{-0.4, 1.5, 0.9, -2.2};
    const double large_n = s.w_down * s.w_down * s.v_down * s.v_down +
                           2 * s.w_down * s.w_down * s.delta_v * s.v_down +
                           s.w_down * s.w_down * s.delta_v * s.delta_v;
    CHECK(otoc_theory(s, MomentVector{1.0, 0.0, 0.0, 0.0, 0.0}) == doctest::Approx(large_n));
  }

  TEST_CASE("closed form equals the literal dephasing sum for rank-one observables") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Eigen::Index d = 7 + static_cast<Eigen::Index>(seed) * 3;
      const Eigen::VectorXd c = testing::random_unit(d, seed);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      const PauliScalars s{u(rng), u(rng), u(rng), u(rng)};
      const Eigen::MatrixXd w = s.delta_w * c * c.transpose() + s.w_down * Eigen::MatrixXd::Identity(d, d);
      const Eigen::MatrixXd v = s.delta_v * c * c.transpose() + s.v_down * Eigen::MatrixXd::Identity(d, d);
      const MomentVector m{1.0, c.array().pow(3).sum(), c.array().pow(4).sum(), c.array().pow(6).sum(),
                           c.array().pow(8).sum()};
      CHECK(otoc_theory(s, m) == doctest::Approx(oracle::otoc_dephased_literal(c, w, v)).epsilon(1e-12));
    }
  }

  TEST_CASE("F(0) = <WVWV> and unit value for Pauli pairs") {
    for (auto [n, k] : {std::pair{8, 1}, std::pair{8, 4}, std::pair{9, 3}}) {
      const auto es = testing::nn_xxx_system(n, k);
      const Bits init = k == 1 ? correlated_configuration(n) : (k == 4 ? neel_configuration(n) : Bits{0b100010001});
      const auto state = prepare_quench(es, ConfigurationOrigin{init});
      const auto pair = system_sigma_z_pair(es);
      const std::vector<double> t0{0.0};
      CHECK(otoc_series(state, pair, es, t0).f.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("no dynamics when everything is diagonal") {
    const AnyBasis basis = enumerate_sector(4, 2);
    Eigen::VectorXd diag(6);
    diag << 0.1, 0.5, 0.9, 1.7, 2.3, 3.1;
    const auto es = diagonalize(Eigen::MatrixXd(diag.asDiagonal()), std::make_shared<const AnyBasis>(basis));
    const auto state = prepare_quench(es, VectorOrigin{testing::random_unit(6, 1), "random"});
    const auto pair = system_sigma_z_pair(es);
    const auto series = otoc_series(state, pair, es, linear_grid(10.0, 11));
    for (double f : series.f.values) CHECK(f == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("series matches the dense-matrix oracle") {
    NnXxxParams p;
    p.n_sites = 6;
    const auto h = build_nn_xxx(p, enumerate_sector(6, 3));
    const auto es = diagonalize(h);
    const auto state = prepare_quench(es, ConfigurationOrigin{neel_configuration(6)});
    const auto pair = system_sigma_z_pair(es);
    const auto times = linear_grid(9.5, 20);
    const auto got = otoc_series(state, pair, es, times);
    const auto s = oracle::eigh(h.entries);
    const auto& sz = pair.w.diag_product_basis;
    const Eigen::VectorXd psi = es.vectors * state.coeffs;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto ref = oracle::otoc_dense(s, sz, sz, psi, times[i]);
      CHECK(std::abs(got.f.values[i] - ref.real()) < 1e-10);
      CHECK(std::abs(got.imag[i] - ref.imag()) < 1e-10);
    }
  }

  TEST_CASE("dephased average against long-time integration") {
    NnXxxParams p;
    p.n_sites = 10;
    const auto h = build_nn_xxx(p, enumerate_sector(10, 1));
    const auto es = diagonalize(h);
    REQUIRE(detect_degeneracies(es.energies).gap_collisions == 0);
    const auto state = prepare_quench(es, ConfigurationOrigin{correlated_configuration(10)});
    const auto pair = system_sigma_z_pair(es);
    const Eigen::VectorXd psi = es.vectors * state.coeffs;
    const auto& sz = pair.w.diag_product_basis;
    const double ref = oracle::otoc_long_time(oracle::eigh(h.entries), sz, sz, psi, 1e4, 40000);
    CHECK(std::abs(otoc_time_average_ed(state, pair) - ref) < 2e-2);
  }

  TEST_CASE("dephased average ignores eigenvector signs") {
    const auto es = testing::nn_xxx_system(9, 4);
    const auto state = prepare_quench(es, ConfigurationOrigin{0b100010011});
    const double base = otoc_time_average_ed(state, system_sigma_z_pair(es));

    EigenSystem flipped = es;
    std::mt19937_64 rng(9);
    for (Eigen::Index m = 0; m < flipped.vectors.cols(); ++m)
      if (rng() & 1) flipped.vectors.col(m) *= -1.0;
    const auto state2 = prepare_quench(flipped, ConfigurationOrigin{0b100010011});
    CHECK(otoc_time_average_ed(state2, system_sigma_z_pair(flipped)) == doctest::Approx(base).epsilon(1e-12));
  }

  TEST_CASE("measured average follows the closed form for the correlated quench") {
    for (int n = 8; n <= 13; ++n) {
      const auto es = testing::nn_xxx_system(n, 1);
      const auto state = prepare_quench(es, ConfigurationOrigin{correlated_configuration(n)});
      const auto r = evaluate_otoc(state, system_sigma_z_pair(es), es, std::vector<double>{0.0});
      CHECK(std::abs(r.f_bar_ed - r.f_bar_theory) < 2e-2);
      CHECK(r.otoc_bar == doctest::Approx(2.0 * (1.0 - r.f_bar_ed)));
    }
  }
}
