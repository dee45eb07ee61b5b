#pragma once

// Inner loops shared by the quench and OTOC diagnostics. `parallel` is what
// the library calls; `serial` is the plain reference implementation that the
// tests and the benchmark compare against.
//
// Reductions in `parallel` accumulate per-row partial sums and add them in
// index order, so results do not depend on the OpenMP thread count.
//
//   rotate               C^T diag(d) C, exactly symmetric
//   survival             |sum_mu p_mu exp(-i E_mu t)|^2
//   expectation          sum_{mu nu} c_mu c_nu cos((E_mu - E_nu) t) O_{mu nu}
//   otoc                 <psi| W(t) V W(t) V |psi>, W(t) = e^{iHt} W e^{-iHt}
//   off_diagonal_weight  sum_{mu != nu} c_mu^2 c_nu^2 O_{mu nu}^2
//   two_time             sum_{mu nu} c_mu c_nu O_{mu mu} O_{mu nu}
//   otoc_dephased        sum_{mu0 nu0} c_mu0 c_nu0 (F1 + F2 - F3)_{mu0 nu0}

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace qtherm::kernels {

using Complex = std::complex<double>;

namespace serial {

Eigen::MatrixXd rotate(const Eigen::MatrixXd& c, const Eigen::VectorXd& d);
std::vector<double> survival(const Eigen::VectorXd& p, const Eigen::VectorXd& e,
                             std::span<const double> times);
std::vector<double> expectation(const Eigen::VectorXd& c, const Eigen::MatrixXd& o,
                                const Eigen::VectorXd& e, std::span<const double> times);
std::vector<Complex> otoc(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                          const Eigen::MatrixXd& v, const Eigen::VectorXd& e,
                          std::span<const double> times);
double off_diagonal_weight(const Eigen::VectorXd& c, const Eigen::MatrixXd& o);
double two_time(const Eigen::VectorXd& c, const Eigen::MatrixXd& o);
double otoc_dephased(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                     const Eigen::MatrixXd& v);

}  // namespace serial

namespace parallel {

Eigen::MatrixXd rotate(const Eigen::MatrixXd& c, const Eigen::VectorXd& d);
std::vector<double> survival(const Eigen::VectorXd& p, const Eigen::VectorXd& e,
                             std::span<const double> times);
std::vector<double> expectation(const Eigen::VectorXd& c, const Eigen::MatrixXd& o,
                                const Eigen::VectorXd& e, std::span<const double> times);
std::vector<Complex> otoc(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                          const Eigen::MatrixXd& v, const Eigen::VectorXd& e,
                          std::span<const double> times);
double off_diagonal_weight(const Eigen::VectorXd& c, const Eigen::MatrixXd& o);
double two_time(const Eigen::VectorXd& c, const Eigen::MatrixXd& o);
double otoc_dephased(const Eigen::VectorXd& c, const Eigen::MatrixXd& w,
                     const Eigen::MatrixXd& v);

}  // namespace parallel

}  // namespace qtherm::kernels
