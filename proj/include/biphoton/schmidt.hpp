#ifndef BIPHOTON_SCHMIDT_HPP
#define BIPHOTON_SCHMIDT_HPP

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "biphoton/measurement_record.hpp"
#include "biphoton/spectral_grid.hpp"

namespace biphoton {

// Discretized modulus amplitude |phi| up to an arbitrary positive scale.
struct AmplitudeMatrix {
  SpectralGrid grid;
  Eigen::MatrixXd values;  // >= 0, frequency-ascending index convention
};

struct SchmidtResult {
  double k = 0.0;
  std::vector<double> coefficients;  // descending, sum of squares = 1
  int mode_count = 0;                // singular values above 1e-14 * sigma_max
};

// Schmidt number via singular values: c_n = sigma_n / sqrt(sum sigma^2),
// K = 1 / sum c_n^4.
SchmidtResult schmidt_decompose(const Eigen::MatrixXcd& amplitude);
SchmidtResult schmidt_decompose(const Eigen::MatrixXd& amplitude);

// Same K through the trace identity 1/K = Tr((G^dag G)^2) / Tr(G^dag G)^2,
// without forming singular values.
double k_trace(const Eigen::MatrixXcd& amplitude);
double k_trace(const Eigen::MatrixXd& amplitude);

// Intensity-only lower bound: k_trace of the elementwise modulus.
double k_min(const Eigen::MatrixXcd& amplitude);
double k_min(const AmplitudeMatrix& amplitude);

// Converts a raw seed-sweep record into the modulus amplitude:
// f_{m,n} = sqrt(R_{M-1-m, N-1-n} / T_{M-1-m}). The index reversal maps
// ascending wavelength onto ascending frequency; negative intensities are
// clamped to zero before the square root.
AmplitudeMatrix measurement_to_amplitude(const MeasurementRecord& rec);

// Block sum with discarded trailing partial blocks; pitch scales by the
// block size and the pixel position moves to the block centroid.
Eigen::MatrixXd bin_matrix(const Eigen::MatrixXd& m, int bx, int by);
SpectralGrid bin_grid(const SpectralGrid& grid, int bx, int by);
MeasurementRecord bin_record(const MeasurementRecord& rec, int bx, int by);

// Removes every pixel within frame_width of any grid edge on both axes.
std::pair<Eigen::MatrixXd, SpectralGrid> crop_frame(const Eigen::MatrixXd& m,
                                                    const SpectralGrid& grid,
                                                    double frame_width);
MeasurementRecord crop_record(const MeasurementRecord& rec, double frame_width);

// Riemann sum of the intensity matrix over the grid window.
double total_intensity(const Eigen::MatrixXd& jsd, const SpectralGrid& grid);

// Coverage warning threshold used by the analysis pipeline.
inline constexpr double coverage_threshold = 0.95;

}  // namespace biphoton

#endif
