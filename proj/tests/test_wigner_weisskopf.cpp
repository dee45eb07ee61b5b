#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qtherm/errors.hpp"
#include "qtherm/models.hpp"
#include "qtherm/otoc.hpp"
#include "qtherm/quench.hpp"
#include "qtherm/wigner_weisskopf.hpp"

using namespace qtherm;

namespace {

struct Numeric {
  double ipr;
  double delta2;
  EigenSystem es;
  SpinBosonParams params;
};

// Constant-coupling model with `n_modes` modes at spacing omega_0 and the
// spin level near the middle of the band.
Numeric solve(int n_modes, double omega_0, double gamma) {
  SpinBosonParams p;
  p.n_modes = n_modes;
  p.omega_0 = omega_0;
  p.omega_z = 0.5 * n_modes * omega_0 + 0.5 * omega_0;
  p.g = std::sqrt(gamma * omega_0 / (2.0 * std::numbers::pi));
  auto es = diagonalize(build_spin_boson(p));
  const auto state = prepare_quench(es, BasisStateOrigin{SpinBosonBasis::kExcitedSpin});
  const auto pair = system_sigma_z_pair(es);
  return {ipr(state), de_fluctuations(state, pair.w), std::move(es), p};
}

}  // namespace

TEST_SUITE("wigner_weisskopf") {
  TEST_CASE("closed forms") {
    const double x = 1.0 / (100.0 * std::numbers::pi * 0.2);
    CHECK(ww_ipr(0.01, 0.2) == doctest::Approx(0.015915494309189534).epsilon(1e-14));
    CHECK(ww_ipr(0.005, 0.2) == doctest::Approx(0.5 * ww_ipr(0.01, 0.2)).epsilon(1e-14));
    CHECK(ww_fluctuations(0.01, 0.2) == doctest::Approx(4 * x * x - 10 * x * x * x).epsilon(1e-14));
    CHECK(ww_fluctuations(0.01, 0.2) == doctest::Approx(9.7289e-4).epsilon(1e-4));
  }

  TEST_CASE("fluctuation-to-IPR ratio") {
    for (double w0 : {0.02, 0.01, 1e-3, 1e-5}) {
      const double r = ww_fluctuations(w0, 0.2) / std::pow(ww_ipr(w0, 0.2), 2);
      CHECK(r >= 3.5);
      CHECK(r <= 4.0);
    }
    CHECK(ww_fluctuations(1e-7, 0.2) / std::pow(ww_ipr(1e-7, 0.2), 2) == doctest::Approx(4.0).epsilon(1e-6));
  }

  TEST_CASE("coefficients at resonance") {
    const auto p = WwParams::from_decay_rate(0.2, 0.005);
    const double e[] = {0.0};
    const double det[] = {-0.5, 0.25};
    const auto c = ww_coefficients(p, e, det);
    CHECK(c.up[0] == doctest::Approx(p.g / std::sqrt(p.g * p.g + 0.01)));
    CHECK(c.modes(0, 0) == doctest::Approx(p.g * p.g / 0.5 / std::sqrt(p.g * p.g + 0.01)));
    const double pole[] = {0.25};
    CHECK_THROWS_AS(ww_coefficients(p, pole, det), DomainError);
  }

  TEST_CASE("parameter consistency") {
    const auto p = WwParams::from_coupling(0.01, 0.005);
    CHECK(p.gamma == doctest::Approx(2 * std::numbers::pi * 1e-4 / 0.005));
    CHECK_NOTHROW(p.validate());
    WwParams bad = p;
    bad.gamma *= 1.01;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
  }

  TEST_CASE("wide band reproduces the continuum limit") {
    // band of width 10 around the spin level, spacing 1/200
    const auto r = solve(2000, 1.0 / 200, 0.2);
    CHECK(std::abs(r.ipr / ww_ipr(1.0 / 200, 0.2) - 1.0) < 0.05);
    CHECK(std::abs(r.delta2 / ww_fluctuations(1.0 / 200, 0.2) - 1.0) < 0.10);

    // analytic up-column against the eigenvectors, energies from the |up,0> level
    const auto& p = r.params;
    const double level = 0.5 * p.omega_z;
    std::vector<double> energies, detunings;
    for (Eigen::Index m = 0; m < r.es.energies.size(); ++m) energies.push_back(r.es.energies[m] - level);
    for (int n = 1; n <= p.n_modes; ++n) detunings.push_back(n * p.omega_0 - p.omega_z);
    const auto c = ww_coefficients(WwParams::from_coupling(p.g, p.omega_0), energies, detunings);
    int checked = 0;
    for (std::size_t m = 0; m < energies.size(); ++m) {
      if (std::abs(energies[m]) > 3 * 0.2) continue;
      const auto mi = static_cast<Eigen::Index>(m);
      CHECK(std::abs(std::abs(r.es.vectors(0, mi)) - c.up[mi]) < 0.05 * c.up[mi]);
      const double row = c.up[mi] * c.up[mi] + c.modes.row(mi).squaredNorm();
      // finite band: the pole sum misses the far Lorentzian tails
      CHECK(std::abs(row - 1.0) < 0.04);
      ++checked;
    }
    CHECK(checked > 200);
  }

  TEST_CASE("wide-band IPR error shrinks with the mode density") {
    double last = 1.0;
    for (int n : {50, 100, 200}) {
      const auto r = solve(10 * n, 1.0 / n, 0.2);
      const double err = std::abs(r.ipr / ww_ipr(1.0 / n, 0.2) - 1.0);
      CHECK(err < last);
      last = err;
    }
  }

  TEST_CASE("unit band overestimates the IPR by the truncated Lorentzian tails") {
    // modes at n/N on (0, 1] with the spin at 0.6: the edge sits 2 decay
    // widths from resonance and the discrepancy does not shrink with N
    std::vector<double> err;
    for (int n : {100, 200, 400}) {
      const auto p = SpinBosonParams::from_decay_rate(n, 0.2, 0.6, CouplingKind::constant, 0);
      const auto es = diagonalize(build_spin_boson(p));
      const auto state = prepare_quench(es, BasisStateOrigin{0});
      err.push_back(ipr(state) / ww_ipr(p.omega_0, 0.2) - 1.0);
    }
    for (double e : err) CHECK(e > 0.05);
    CHECK(err.back() >= err.front());
  }
}
