#pragma once

#include <string>
#include <vector>

namespace gma::io {

/// Grid file: one JSON header line, then count little-endian binary64 values in row-major order.
struct GridFile {
  int n = 0;
  std::vector<int> gridShape;
  std::vector<double> values;
};

void write_grid(const std::string& path, const GridFile& grid);
/// Throws DataError on a malformed header, unsupported dtype/byte order, or short payload.
GridFile read_grid(const std::string& path);

/// CSV with columns i0..i{n-1}, x0..x{n-1}, value.
void write_grid_csv(const std::string& path, const GridFile& grid);

}  // namespace gma::io
