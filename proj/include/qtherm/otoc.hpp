#pragma once

// Pure-state out-of-time-ordered correlator F(t) = <W(t) V W(t) V> and its
// long-time average.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qtherm/quench.hpp"
#include "qtherm/spectral.hpp"

namespace qtherm {

/// System-local observables with two eigenvalues; `delta` = O_up - O_down.
struct PauliScalars {
  double w_down = -1.0;
  double delta_w = 2.0;
  double v_down = -1.0;
  double delta_v = 2.0;
};

struct PauliObservablePair {
  ObservableMatrix w;
  ObservableMatrix v;
  PauliScalars scalars;
};

struct OtocSeries {
  TimeSeries f;                      ///< real part of F(t)
  std::vector<double> imag;          ///< imaginary part per time point
  double max_imag_residual = 0.0;
};

struct OtocResult {
  OtocSeries series;
  double f_bar_ed = 0.0;
  double f_bar_theory = 0.0;
  double otoc_bar = 0.0;  ///< 2 (1 - f_bar_ed)
};

/// W = V = sigma_z of the system spin.
PauliObservablePair system_sigma_z_pair(const EigenSystem& es);

OtocSeries otoc_series(const QuenchState& state, const PauliObservablePair& pair,
                       const EigenSystem& es, std::span<const double> times);

/// Exact dephasing average, assuming non-degenerate levels and gaps.
double otoc_time_average_ed(const QuenchState& state, const PauliObservablePair& pair);

/// Closed-form long-time average under the correlated-quench matrix-element form,
/// with finite-size corrections in I4 and I8.
double otoc_theory(const PauliScalars& s, const MomentVector& m);

OtocResult evaluate_otoc(const QuenchState& state, const PauliObservablePair& pair,
                         const EigenSystem& es, std::span<const double> times);

}  // namespace qtherm
