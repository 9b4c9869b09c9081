#include "biphoton/io_csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "biphoton/version.hpp"

namespace biphoton {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_header(std::ofstream& out, const SpectralGrid& grid, const MetaMap& meta) {
  out << "# " << version_string << "\n";
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
  out << "# units: nm\n";
  out << "# axis1_start_nm: " << format_double(grid.axis1_start / nm) << "\n";
  out << "# axis1_pitch_nm: " << format_double(grid.axis1_pitch / nm) << "\n";
  out << "# axis1_count: " << grid.count1 << "\n";
  out << "# axis2_start_nm: " << format_double(grid.axis2_start / nm) << "\n";
  out << "# axis2_pitch_nm: " << format_double(grid.axis2_pitch / nm) << "\n";
  out << "# axis2_count: " << grid.count2 << "\n";
  // exact meter values so a read reproduces the grid bit for bit
  out << "# axis1_start_m: " << format_double(grid.axis1_start) << "\n";
  out << "# axis1_pitch_m: " << format_double(grid.axis1_pitch) << "\n";
  out << "# axis2_start_m: " << format_double(grid.axis2_start) << "\n";
  out << "# axis2_pitch_m: " << format_double(grid.axis2_pitch) << "\n";
  out << "# linearized: " << (grid.linearized ? 1 : 0) << "\n";
}

struct Header {
  SpectralGrid grid;
  MetaMap meta;
};

double parse_double(const std::string& s, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw ParseError("invalid number in " + context + ": '" + s + "'");
  return v;
}

Header parse_header_lines(const MetaMap& raw, const std::string& path) {
  Header h;
  auto take = [&](const char* key, bool required = true) -> std::string {
    auto it = raw.find(key);
    if (it == raw.end()) {
      if (required) throw ParseError(path + ": missing header field " + key);
      return {};
    }
    return it->second;
  };

  h.grid.count1 = static_cast<int>(parse_double(take("axis1_count"), "axis1_count"));
  h.grid.count2 = static_cast<int>(parse_double(take("axis2_count"), "axis2_count"));
  const std::string exact = take("axis1_start_m", false);
  if (!exact.empty()) {
    h.grid.axis1_start = parse_double(exact, "axis1_start_m");
    h.grid.axis1_pitch = parse_double(take("axis1_pitch_m"), "axis1_pitch_m");
    h.grid.axis2_start = parse_double(take("axis2_start_m"), "axis2_start_m");
    h.grid.axis2_pitch = parse_double(take("axis2_pitch_m"), "axis2_pitch_m");
  } else {
    h.grid.axis1_start = parse_double(take("axis1_start_nm"), "axis1_start_nm") * nm;
    h.grid.axis1_pitch = parse_double(take("axis1_pitch_nm"), "axis1_pitch_nm") * nm;
    h.grid.axis2_start = parse_double(take("axis2_start_nm"), "axis2_start_nm") * nm;
    h.grid.axis2_pitch = parse_double(take("axis2_pitch_nm"), "axis2_pitch_nm") * nm;
  }
  const std::string lin = take("linearized", false);
  h.grid.linearized = lin.empty() || lin != "0";

  static const char* grid_keys[] = {"axis1_start_nm", "axis1_pitch_nm", "axis1_count",
                                    "axis2_start_nm", "axis2_pitch_nm", "axis2_count",
                                    "axis1_start_m",  "axis1_pitch_m",  "axis2_start_m",
                                    "axis2_pitch_m",  "linearized",     "units"};
  for (const auto& [key, value] : raw) {
    bool is_grid = false;
    for (const char* gk : grid_keys) is_grid |= key == gk;
    if (!is_grid) h.meta[key] = value;
  }
  return h;
}

// reads '#' header lines into a raw key/value map, leaves the stream at the
// first payload line (already loaded into `first`)
MetaMap read_raw_header(std::istream& in, std::string& first) {
  MetaMap raw;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      first = line;
      return raw;
    }
    std::string body = line.substr(1);
    const auto colon = body.find(':');
    if (colon == std::string::npos) continue;  // free comment
    std::string key = body.substr(0, colon);
    std::string value = body.substr(colon + 1);
    auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(value);
    raw[key] = value;
  }
  first.clear();
  return raw;
}

std::vector<double> split_row(const std::string& line, const std::string& path) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, path));
  return row;
}

}  // namespace

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values,
                      const SpectralGrid& grid, const MetaMap& meta) {
  if (values.rows() != grid.count1 || values.cols() != grid.count2)
    throw std::invalid_argument("write_matrix_csv: matrix shape does not match grid");
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_header(out, grid, meta);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) out << ',';
      out << format_double(values(i, j));
    }
    out << '\n';
  }
}

MatrixFile read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string first;
  const MetaMap raw = read_raw_header(in, first);
  Header header = parse_header_lines(raw, path);
  if (first.empty()) throw ParseError(path + ": header present but matrix payload missing");

  MatrixFile file;
  file.grid = header.grid;
  file.meta = std::move(header.meta);
  file.values.resize(file.grid.count1, file.grid.count2);

  std::string line = first;
  Eigen::Index row = 0;
  do {
    if (line.empty()) continue;
    if (row >= file.values.rows()) throw ParseError(path + ": more rows than axis1_count");
    const std::vector<double> cells = split_row(line, path);
    if (static_cast<Eigen::Index>(cells.size()) != file.values.cols())
      throw ParseError(path + ": row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(file.values.cols()));
    for (Eigen::Index j = 0; j < file.values.cols(); ++j) file.values(row, j) = cells[j];
    ++row;
  } while (std::getline(in, line));
  if (row != file.values.rows())
    throw ParseError(path + ": matrix payload missing rows (got " + std::to_string(row) +
                     " of " + std::to_string(file.values.rows()) + ")");
  return file;
}

void write_columns_csv(const std::string& path, const Eigen::VectorXd& transmittance,
                       const Eigen::VectorXd& power_ref, const SpectralGrid& grid,
                       const MetaMap& meta) {
  if (transmittance.size() != grid.count1 || power_ref.size() != grid.count1)
    throw std::invalid_argument("write_columns_csv: vector length does not match grid");
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_header(out, grid, meta);
  out << "# columns: lambda1_nm,transmittance,power_ref\n";
  for (int i = 0; i < grid.count1; ++i)
    out << format_double(grid.lambda1(i) / nm) << ',' << format_double(transmittance[i]) << ','
        << format_double(power_ref[i]) << '\n';
}

ColumnsFile read_columns_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string first;
  const MetaMap raw = read_raw_header(in, first);
  Header header = parse_header_lines(raw, path);
  if (first.empty()) throw ParseError(path + ": header present but column payload missing");

  ColumnsFile file;
  file.grid = header.grid;
  file.meta = std::move(header.meta);
  file.transmittance.resize(file.grid.count1);
  file.power_ref.resize(file.grid.count1);

  std::string line = first;
  Eigen::Index row = 0;
  do {
    if (line.empty()) continue;
    if (row >= file.grid.count1) throw ParseError(path + ": more rows than axis1_count");
    const std::vector<double> cells = split_row(line, path);
    if (cells.size() != 3)
      throw ParseError(path + ": expected 3 columns (lambda,T,P_ref), got " +
                       std::to_string(cells.size()));
    file.transmittance[row] = cells[1];
    file.power_ref[row] = cells[2];
    ++row;
  } while (std::getline(in, line));
  if (row != file.grid.count1) throw ParseError(path + ": column payload missing rows");
  return file;
}

void write_pgm16(const std::string& path, const Eigen::MatrixXd& values, const MetaMap& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  const double peak = values.maxCoeff();
  const double scale = peak > 0.0 ? 65535.0 / peak : 0.0;
  out << "P5\n";
  out << "# " << version_string << "\n";
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
  out << values.rows() << ' ' << values.cols() << "\n65535\n";
  // image rows = idler axis, descending wavelength; columns = signal axis;
  // negative values (e.g. a signed amplitude part) render as black
  for (Eigen::Index j = values.cols() - 1; j >= 0; --j) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      const auto v = static_cast<unsigned>(std::max(values(i, j), 0.0) * scale + 0.5);
      const unsigned char hi = static_cast<unsigned char>(v >> 8);
      const unsigned char lo = static_cast<unsigned char>(v & 0xff);
      out.put(static_cast<char>(hi));
      out.put(static_cast<char>(lo));
    }
  }
}

}  // namespace biphoton
