#ifndef BIPHOTON_IO_CSV_HPP
#define BIPHOTON_IO_CSV_HPP

#include <Eigen/Core>
#include <map>
#include <string>

#include "biphoton/spectral_grid.hpp"

namespace biphoton {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Free-form provenance recorded in every exported file: config hash, seed,
// tool version and anything else the caller wants to pin.
using MetaMap = std::map<std::string, std::string>;

struct MatrixFile {
  SpectralGrid grid;
  Eigen::MatrixXd values;
  MetaMap meta;
};

// CSV with '#'-prefixed "key: value" header lines carrying grid metadata
// (starts, pitches, counts, units=nm) followed by count1 rows of count2
// comma-separated values, printed with 17 significant digits so a
// write/read round trip is exact.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values,
                      const SpectralGrid& grid, const MetaMap& meta = {});
MatrixFile read_matrix_csv(const std::string& path);

// Per-seed-bin vector data (filter transmittance, seed power reference)
// with the axis-1 grid metadata in the header.
void write_columns_csv(const std::string& path, const Eigen::VectorXd& transmittance,
                       const Eigen::VectorXd& power_ref, const SpectralGrid& grid,
                       const MetaMap& meta = {});
struct ColumnsFile {
  SpectralGrid grid;  // only axis 1 fields are meaningful
  Eigen::VectorXd transmittance;
  Eigen::VectorXd power_ref;
  MetaMap meta;
};
ColumnsFile read_columns_csv(const std::string& path);

// 16-bit binary PGM, max-normalized; image rows run along the idler axis in
// descending wavelength so plots match the usual orientation.
void write_pgm16(const std::string& path, const Eigen::MatrixXd& values, const MetaMap& meta = {});

std::string format_double(double v);  // shortest round-trip-exact decimal

}  // namespace biphoton

#endif
