#include "spinergo/readout.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "spinergo/errors.hpp"

namespace spinergo::readout {

namespace {

Eigen::Matrix<double, 5, 4> calibration_matrix(double p_e) {
  Eigen::Matrix<double, 5, 4> a;
  // rows: the five calibration pulse sequences; columns: (l11, l10, l01, l00)
  a << 1 - p_e, p_e, 0, 0,
       p_e, 1 - p_e, 0, 0,
       1 - p_e, 0, 0, p_e,
       p_e, 0, 0, 1 - p_e,
       0, p_e, 1 - p_e, 0;
  return a;
}

}  // namespace

void PLCalibration::validate() const {
  for (double l : as_array())
    if (!(l > 0.0)) throw DomainError("PL rates must be positive");
}

std::array<double, 5> forward_calibration_intensities(const PLCalibration& cal,
                                                      double p_e) {
  if (p_e < 0.0 || p_e > 1.0) throw DomainError("p_e must lie in [0,1]");
  cal.validate();
  const auto a = calibration_matrix(p_e);
  Eigen::Vector4d l(cal.l11, cal.l10, cal.l01, cal.l00);
  Eigen::Matrix<double, 5, 1> i = a * l;
  return {i(0), i(1), i(2), i(3), i(4)};
}

CalibrationFit calibrate_pl_rates(const std::array<double, 5>& intensities,
                                  double p_e) {
  if (p_e < 0.0 || p_e > 1.0) throw DomainError("p_e must lie in [0,1]");
  const auto a = calibration_matrix(p_e);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0
                          ? sv(0) / sv(sv.size() - 1)
                          : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e8))
    throw IllConditioned("calibration system is rank-deficient near p_e = 0.5");

  Eigen::Matrix<double, 5, 1> rhs;
  for (int k = 0; k < 5; ++k) rhs(k) = intensities[static_cast<std::size_t>(k)];
  Eigen::Vector4d l = svd.solve(rhs);
  CalibrationFit fit;
  fit.rates = PLCalibration{l(0), l(1), l(2), l(3)};
  fit.residual = (a * l - rhs).norm();
  fit.condition_number = cond;
  return fit;
}

std::array<double, 4> forward_offdiagonal_intensities(const Matrix& rho_nv,
                                                      const PLCalibration& cal) {
  if (rho_nv.rows() != 4 || rho_nv.cols() != 4)
    throw DimensionMismatch("off-diagonal readout expects the 4-level state");
  cal.validate();
  const double r11 = rho_nv(0, 0).real();
  const double r22 = rho_nv(1, 1).real();
  const double r33 = rho_nv(2, 2).real();
  const double r44 = rho_nv(3, 3).real();
  const double im24 = rho_nv(1, 3).imag();
  const double im13 = rho_nv(0, 2).imag();

  const double m24 = (r22 + r44) / 2.0;
  const double m13 = (r11 + r33) / 2.0;
  std::array<double, 4> out{};
  out[0] = r11 * cal.l11 + (m24 + im24) * cal.l10 + r33 * cal.l01 +
           (m24 - im24) * cal.l00;
  out[1] = r11 * cal.l11 + (m24 - im24) * cal.l10 + r33 * cal.l01 +
           (m24 + im24) * cal.l00;
  out[2] = r22 * cal.l11 + (m13 + im13) * cal.l10 + (m13 - im13) * cal.l01 +
           r44 * cal.l00;
  out[3] = r22 * cal.l11 + (m13 - im13) * cal.l10 + (m13 + im13) * cal.l01 +
           r44 * cal.l00;
  return out;
}

OffDiagonals extract_offdiagonals(const std::array<double, 4>& intensities,
                                  const PLCalibration& cal) {
  cal.validate();
  const double d24 = cal.l10 - cal.l00;
  const double d13 = cal.l10 - cal.l01;
  if (std::abs(d24) <= 1e-9 || std::abs(d13) <= 1e-9)
    throw DegenerateContrast("PL rate difference too small to invert");
  OffDiagonals od;
  od.im_rho24 = (intensities[0] - intensities[1]) / (2.0 * d24);
  od.im_rho13 = (intensities[2] - intensities[3]) / (2.0 * d13);
  return od;
}

}  // namespace spinergo::readout
