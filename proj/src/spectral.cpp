#include "qtherm/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "qtherm/errors.hpp"
#include "qtherm/kernels.hpp"

namespace qtherm {

EigenSystem diagonalize(const HamiltonianMatrix& h) { return diagonalize(h.entries, h.basis); }

EigenSystem diagonalize(const Eigen::MatrixXd& h, BasisPtr basis) {
  const Eigen::Index n = h.rows();
  if (n < 1 || h.cols() != n) throw ParameterError("diagonalize needs a non-empty square matrix");

  EigenSystem es;
  es.vectors = h;
  es.energies.resize(n);
  es.basis = std::move(basis);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                                         es.vectors.data(), static_cast<lapack_int>(n),
                                         es.energies.data());
  if (info != 0)
    throw NumericalError("dsyevd failed with info " + std::to_string(info),
                         static_cast<std::size_t>(n), static_cast<double>(info));

  for (Eigen::Index mu = 0; mu < n; ++mu) {
    Eigen::Index pivot = 0;
    es.vectors.col(mu).cwiseAbs().maxCoeff(&pivot);
    if (es.vectors(pivot, mu) < 0.0) es.vectors.col(mu) *= -1.0;
  }
  return es;
}

ObservableMatrix rotate_observable(std::span<const double> diag, const EigenSystem& es) {
  return rotate_observable(Eigen::Map<const Eigen::VectorXd>(diag.data(),
                                                             static_cast<Eigen::Index>(diag.size())),
                           es);
}

ObservableMatrix rotate_observable(const Eigen::VectorXd& diag, const EigenSystem& es) {
  if (static_cast<std::size_t>(diag.size()) != es.dim())
    throw ParameterError("observable has " + std::to_string(diag.size()) +
                         " entries, basis dimension is " + std::to_string(es.dim()));
  return ObservableMatrix{diag, kernels::parallel::rotate(es.vectors, diag)};
}

DegeneracyReport detect_degeneracies(const Eigen::VectorXd& energies, double tol_rel) {
  DegeneracyReport report;
  const Eigen::Index n = energies.size();
  if (n < 2) return report;
  const double width = energies[n - 1] - energies[0];
  const double tol = tol_rel * (width > 0.0 ? width : 1.0);

  std::vector<std::size_t> group{0};
  auto flush = [&] {
    if (group.size() > 1) report.groups.push_back(group);
  };
  for (Eigen::Index i = 1; i < n; ++i) {
    if (energies[i] - energies[i - 1] < tol) {
      group.push_back(static_cast<std::size_t>(i));
    } else {
      flush();
      group.assign(1, static_cast<std::size_t>(i));
    }
  }
  flush();

  // Gaps between distinct levels; adjacent equal entries after sorting are collisions.
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double gap = energies[j] - energies[i];
      if (gap >= tol) gaps.push_back(gap);
    }
  std::sort(gaps.begin(), gaps.end());
  for (std::size_t k = 1; k < gaps.size(); ++k)
    if (gaps[k] - gaps[k - 1] < tol) ++report.gap_collisions;
  return report;
}

double microcanonical_average(const ObservableMatrix& obs, const EigenSystem& es, double e_center,
                              double window) {
  if (!(window > 0.0)) throw ParameterError("microcanonical window must be positive");
  const double lo = e_center - 0.5 * window;
  const double hi = e_center + 0.5 * window;
  const auto* begin = es.energies.data();
  const auto* end = begin + es.energies.size();
  const auto first = std::lower_bound(begin, end, lo) - begin;
  const auto last = std::upper_bound(begin, end, hi) - begin;
  if (last <= first)
    throw DomainError("no level inside the microcanonical window of width " +
                      std::to_string(window) + "; enlarge the window");
  double sum = 0.0;
  for (auto mu = first; mu < last; ++mu) sum += obs.eigen(mu, mu);
  return sum / static_cast<double>(last - first);
}

MicrocanonicalResult microcanonical_average_auto(const ObservableMatrix& obs,
                                                 const EigenSystem& es, double e_center,
                                                 double fraction) {
  const double width = es.width() > 0.0 ? es.width() : 1.0;
  double window = fraction * width;
  for (;;) {
    try {
      const double value = microcanonical_average(obs, es, e_center, window);
      const auto* begin = es.energies.data();
      const auto* end = begin + es.energies.size();
      const auto n = std::upper_bound(begin, end, e_center + 0.5 * window) -
                     std::lower_bound(begin, end, e_center - 0.5 * window);
      return {value, window, static_cast<std::size_t>(n)};
    } catch (const DomainError&) {
      if (window > 4.0 * width) throw;
      window *= 2.0;
    }
  }
}

SpectralDensity density_of_states(const Eigen::VectorXd& energies, std::size_t n_bins) {
  if (n_bins < 1) throw ParameterError("density_of_states needs at least one bin");
  SpectralDensity dos;
  if (energies.size() == 0) return dos;
  const double lo = energies.minCoeff();
  const double hi = energies.maxCoeff();
  dos.bin_width = hi > lo ? (hi - lo) / static_cast<double>(n_bins) : 1.0;
  dos.counts.assign(n_bins, 0);
  for (double e : energies) {
    auto bin = static_cast<std::size_t>((e - lo) / dos.bin_width);
    dos.counts[std::min(bin, n_bins - 1)] += 1;
  }
  dos.bin_centers.resize(n_bins);
  dos.density.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    dos.bin_centers[b] = lo + (static_cast<double>(b) + 0.5) * dos.bin_width;
    dos.density[b] = static_cast<double>(dos.counts[b]) / dos.bin_width;
  }
  return dos;
}

double orthonormality_residual(const EigenSystem& es) {
  const Eigen::MatrixXd gram = es.vectors.transpose() * es.vectors;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double reconstruction_residual(const EigenSystem& es, const Eigen::MatrixXd& h) {
  Eigen::MatrixXd rotated = es.vectors.transpose() * h * es.vectors;
  rotated.diagonal() -= es.energies;
  return rotated.cwiseAbs().maxCoeff();
}

}  // namespace qtherm
