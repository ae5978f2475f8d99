#include "gma/io/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "gma/errors.hpp"

namespace gma::io {

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

std::size_t count_of(const std::vector<int>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
}

}  // namespace

void write_grid(const std::string& path, const GridFile& grid) {
  if (static_cast<int>(grid.gridShape.size()) != grid.n || count_of(grid.gridShape) != grid.values.size()) {
    throw DomainError("write_grid: shape does not match value count");
  }
  nlohmann::json h;
  h["format"] = "gma-grid";
  h["version"] = 1;
  h["n"] = grid.n;
  h["gridShape"] = grid.gridShape;
  h["byteOrder"] = "little";
  h["dtype"] = "float64";
  h["count"] = grid.values.size();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << h.dump() << '\n';
  for (double v : grid.values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    bits = to_little(bits);
    out.write(reinterpret_cast<const char*>(&bits), 8);
  }
  if (!out) throw DataError("write failed for " + path);
}

GridFile read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open grid file " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("grid file " + path + " has no header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("grid header is not valid JSON: " + std::string(e.what()));
  }
  GridFile g;
  try {
    if (h.at("format") != "gma-grid") throw DataError("unknown grid format");
    if (h.at("byteOrder") != "little") throw DataError("unsupported byte order");
    if (h.at("dtype") != "float64") throw DataError("unsupported dtype");
    g.n = h.at("n").get<int>();
    g.gridShape = h.at("gridShape").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError("grid header is incomplete: " + std::string(e.what()));
  }
  const std::size_t count = count_of(g.gridShape);
  if (static_cast<int>(g.gridShape.size()) != g.n || h.value("count", std::size_t{0}) != count) {
    throw DataError("grid header shape and count disagree");
  }
  g.values.resize(count);
  for (auto& v : g.values) {
    std::uint64_t bits;
    if (!in.read(reinterpret_cast<char*>(&bits), 8)) throw DataError("grid payload is truncated");
    bits = to_little(bits);
    std::memcpy(&v, &bits, 8);
  }
  return g;
}

void write_grid_csv(const std::string& path, const GridFile& grid) {
  if (count_of(grid.gridShape) != grid.values.size()) throw DomainError("write_grid_csv: shape mismatch");
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  for (int a = 0; a < grid.n; ++a) out << 'i' << a << ',';
  for (int a = 0; a < grid.n; ++a) out << 'x' << a << ',';
  out << "value\n";
  out.precision(17);
  std::vector<int> idx(static_cast<std::size_t>(grid.n), 0);
  for (double v : grid.values) {
    for (int i : idx) out << i << ',';
    for (int a = 0; a < grid.n; ++a) out << static_cast<double>(idx[a]) / grid.gridShape[a] << ',';
    out << v << '\n';
    for (int a = grid.n - 1; a >= 0; --a) {
      if (++idx[a] < grid.gridShape[a]) break;
      idx[a] = 0;
    }
  }
}

}  // namespace gma::io
