#include "qtherm/otoc.hpp"

#include <cmath>
#include <string>

#include "qtherm/basis.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/kernels.hpp"

namespace qtherm {
namespace {

void check_dims(const QuenchState& state, const PauliObservablePair& pair) {
  const auto n = state.coeffs.size();
  if (pair.w.eigen.rows() != n || pair.v.eigen.rows() != n)
    throw ParameterError("OTOC operands have dimension " + std::to_string(pair.w.eigen.rows()) +
                         "/" + std::to_string(pair.v.eigen.rows()) + ", state has " +
                         std::to_string(n));
}

}  // namespace

PauliObservablePair system_sigma_z_pair(const EigenSystem& es) {
  const auto diag = system_sigma_z(*es.basis);
  ObservableMatrix sz = rotate_observable(diag, es);
  return PauliObservablePair{sz, sz, PauliScalars{}};
}

OtocSeries otoc_series(const QuenchState& state, const PauliObservablePair& pair,
                       const EigenSystem& es, std::span<const double> times) {
  check_dims(state, pair);
  const auto values =
      kernels::parallel::otoc(state.coeffs, pair.w.eigen, pair.v.eigen, es.energies, times);
  OtocSeries out;
  out.f.times.assign(times.begin(), times.end());
  out.f.values.reserve(values.size());
  out.imag.reserve(values.size());
  for (const auto& z : values) {
    out.f.values.push_back(z.real());
    out.imag.push_back(z.imag());
    out.max_imag_residual = std::max(out.max_imag_residual, std::abs(z.imag()));
  }
  return out;
}

double otoc_time_average_ed(const QuenchState& state, const PauliObservablePair& pair) {
  check_dims(state, pair);
  return kernels::parallel::otoc_dephased(state.coeffs, pair.w.eigen, pair.v.eigen);
}

double otoc_theory(const PauliScalars& s, const MomentVector& m) {
  const double wd = s.w_down, dw = s.delta_w, vd = s.v_down, dv = s.delta_v;
  const double constant = wd * wd * vd * vd + 2.0 * wd * wd * dv * vd + wd * wd * dv * dv;
  // The ΔW·W↓·ΔV² coefficient is linear in ΔW; squaring it breaks the |F| <= 1
  // bound for Pauli operators and disagrees with the exact dephased sum.
  const double first = 4.0 * dw * wd * dv * vd + 2.0 * dw * wd * vd * vd + 2.0 * dw * wd * dv * dv +
                       dw * dw * vd * vd + dw * dw * dv * vd;
  const double second = 2.0 * dw * dw * dv * vd + 2.0 * dw * dw * dv * dv;
  const double eighth = dw * dw * dv * dv + dw * dw * dv * vd;
  return constant + m.i4 * first + m.i4 * m.i4 * second - m.i8 * eighth;
}

OtocResult evaluate_otoc(const QuenchState& state, const PauliObservablePair& pair,
                         const EigenSystem& es, std::span<const double> times) {
  OtocResult r;
  if (!times.empty()) r.series = otoc_series(state, pair, es, times);
  r.f_bar_ed = otoc_time_average_ed(state, pair);
  r.f_bar_theory = otoc_theory(pair.scalars, moments(state));
  r.otoc_bar = 2.0 * (1.0 - r.f_bar_ed);
  return r;
}

}  // namespace qtherm
