#include "biphoton/schmidt.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

#include "biphoton/numerics.hpp"

namespace biphoton {

namespace {

// BDCSVD handles only real scalars in Eigen 3.4, so complex input goes
// through JacobiSVD
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
}

template <typename Matrix>
SchmidtResult decompose_impl(const Matrix& amplitude) {
  if (amplitude.size() == 0 || amplitude.isZero(0.0))
    throw std::invalid_argument("schmidt_decompose: matrix is empty or all zero");
  if (!amplitude.allFinite())
    throw std::runtime_error("schmidt_decompose: matrix has non-finite entries");

  const Eigen::VectorXd sigma = singular_values(amplitude);

  SchmidtResult result;
  const double norm2 = sigma.squaredNorm();
  result.coefficients.resize(sigma.size());
  double quartic = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double c = sigma[i] / std::sqrt(norm2);
    result.coefficients[i] = c;
    quartic += c * c * c * c;
  }
  result.k = 1.0 / quartic;
  const double floor = 1e-14 * sigma[0];
  result.mode_count = static_cast<int>((sigma.array() > floor).count());
  return result;
}

template <typename Matrix>
double k_trace_impl(const Matrix& g) {
  if (g.size() == 0 || g.isZero(0.0))
    throw std::invalid_argument("k_trace: matrix is empty or all zero");
  if (!g.allFinite()) throw std::runtime_error("k_trace: matrix has non-finite entries");

  // Gram matrix on the smaller side; Tr(H^2) = |H|_F^2 for Hermitian H
  const double t1 = g.squaredNorm();
  double t2 = 0.0;
  if (g.rows() <= g.cols()) {
    const Matrix h = g * g.adjoint();
    t2 = h.squaredNorm();
  } else {
    const Matrix h = g.adjoint() * g;
    t2 = h.squaredNorm();
  }
  return t1 * t1 / t2;
}

}  // namespace

SchmidtResult schmidt_decompose(const Eigen::MatrixXcd& amplitude) {
  return decompose_impl(amplitude);
}

SchmidtResult schmidt_decompose(const Eigen::MatrixXd& amplitude) {
  return decompose_impl(amplitude);
}

double k_trace(const Eigen::MatrixXcd& amplitude) { return k_trace_impl(amplitude); }
double k_trace(const Eigen::MatrixXd& amplitude) { return k_trace_impl(amplitude); }

double k_min(const Eigen::MatrixXcd& amplitude) {
  return k_trace_impl(Eigen::MatrixXd(amplitude.cwiseAbs()));
}

double k_min(const AmplitudeMatrix& amplitude) { return k_trace_impl(amplitude.values); }

AmplitudeMatrix measurement_to_amplitude(const MeasurementRecord& rec) {
  rec.validate();
  const Eigen::Index m_count = rec.intensity.rows();
  const Eigen::Index n_count = rec.intensity.cols();

  for (Eigen::Index m = 0; m < m_count; ++m)
    if (!(rec.filter_transmittance[m] > 0.0))
      throw std::runtime_error("measurement_to_amplitude: filter transmittance is zero in column " +
                               std::to_string(m));

  AmplitudeMatrix out;
  out.grid = rec.grid;
  out.values.resize(m_count, n_count);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const Eigen::Index src_m = m_count - 1 - m;
    const double t = rec.filter_transmittance[src_m];
    for (Eigen::Index n = 0; n < n_count; ++n) {
      const double r = std::max(rec.intensity(src_m, n_count - 1 - n), 0.0);
      out.values(m, n) = std::sqrt(r / t);
    }
  }
  return out;
}

Eigen::MatrixXd bin_matrix(const Eigen::MatrixXd& m, int bx, int by) {
  if (bx <= 0 || by <= 0) throw std::invalid_argument("bin_matrix: block sizes must be >= 1");
  if (bx > m.rows() || by > m.cols())
    throw std::invalid_argument("bin_matrix: block larger than matrix");
  const Eigen::Index rows = m.rows() / bx;
  const Eigen::Index cols = m.cols() / by;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      out(i, j) = m.block(i * bx, j * by, bx, by).sum();
  return out;
}

SpectralGrid bin_grid(const SpectralGrid& grid, int bx, int by) {
  SpectralGrid out = grid;
  out.axis1_start = grid.axis1_start + 0.5 * (bx - 1) * grid.axis1_pitch;
  out.axis2_start = grid.axis2_start + 0.5 * (by - 1) * grid.axis2_pitch;
  out.axis1_pitch = bx * grid.axis1_pitch;
  out.axis2_pitch = by * grid.axis2_pitch;
  out.count1 = grid.count1 / bx;
  out.count2 = grid.count2 / by;
  return out;
}

MeasurementRecord bin_record(const MeasurementRecord& rec, int bx, int by) {
  MeasurementRecord out;
  out.grid = bin_grid(rec.grid, bx, by);
  out.intensity = bin_matrix(rec.intensity, bx, by);
  const Eigen::Index rows = out.intensity.rows();
  out.filter_transmittance.resize(rows);
  out.seed_power_ref.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    out.filter_transmittance[i] = rec.filter_transmittance.segment(i * bx, bx).mean();
    out.seed_power_ref[i] = rec.seed_power_ref.segment(i * bx, bx).mean();
  }
  return out;
}

namespace {

int frame_pixels(double frame_width, double pitch) {
  if (frame_width <= 0.0) return 0;
  // keep pixels whose distance to the edge is >= frame_width
  return static_cast<int>(std::ceil(frame_width / pitch - 1e-9));
}

}  // namespace

std::pair<Eigen::MatrixXd, SpectralGrid> crop_frame(const Eigen::MatrixXd& m,
                                                    const SpectralGrid& grid,
                                                    double frame_width) {
  const int cut1 = frame_pixels(frame_width, grid.axis1_pitch);
  const int cut2 = frame_pixels(frame_width, grid.axis2_pitch);
  if (2 * frame_width >= grid.span1() || 2 * frame_width >= grid.span2())
    throw std::invalid_argument("crop_frame: frame wider than half the axis span");

  SpectralGrid out = grid;
  out.axis1_start = grid.axis1_start + cut1 * grid.axis1_pitch;
  out.axis2_start = grid.axis2_start + cut2 * grid.axis2_pitch;
  out.count1 = grid.count1 - 2 * cut1;
  out.count2 = grid.count2 - 2 * cut2;
  return {m.block(cut1, cut2, out.count1, out.count2), out};
}

MeasurementRecord crop_record(const MeasurementRecord& rec, double frame_width) {
  auto [matrix, grid] = crop_frame(rec.intensity, rec.grid, frame_width);
  const int cut1 = static_cast<int>((grid.axis1_start - rec.grid.axis1_start) / rec.grid.axis1_pitch + 0.5);
  MeasurementRecord out;
  out.grid = grid;
  out.intensity = std::move(matrix);
  out.filter_transmittance = rec.filter_transmittance.segment(cut1, grid.count1);
  out.seed_power_ref = rec.seed_power_ref.segment(cut1, grid.count1);
  return out;
}

double total_intensity(const Eigen::MatrixXd& jsd, const SpectralGrid& grid) {
  return pairwise_sum(jsd.data(), static_cast<size_t>(jsd.size())) * grid.domega1() *
         grid.domega2();
}

}  // namespace biphoton
