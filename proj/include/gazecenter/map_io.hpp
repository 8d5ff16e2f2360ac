#ifndef GAZECENTER_MAP_IO_HPP
#define GAZECENTER_MAP_IO_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "gazecenter/errors.hpp"
#include "gazecenter/grid.hpp"

namespace gazecenter {

enum class MapFormat { float_binary, csv, pgm16 };

namespace detail {

inline void put_u32_le(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

inline std::uint32_t get_u32_le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void put_f64_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline double get_f64_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace detail

/// Writes a grid as "SMAP1": 5-byte magic, u32le width, u32le height,
/// then width*height f64le values row-major. Round-trips bit-exactly.
inline void write_smap(const std::string& path, const DenseGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IO_ERROR, "cannot open for writing: " + path);
  out.write("SMAP1", 5);
  detail::put_u32_le(out, static_cast<std::uint32_t>(grid.width()));
  detail::put_u32_le(out, static_cast<std::uint32_t>(grid.height()));
  for (double v : grid.values()) detail::put_f64_le(out, v);
  if (!out) throw Error(ErrorCode::IO_ERROR, "write failed: " + path);
}

inline DenseGrid read_smap(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open for reading: " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, "SMAP1", 5) != 0)
    throw Error(ErrorCode::MAGIC_MISMATCH, "not an SMAP1 file: " + path);
  const std::uint32_t w = detail::get_u32_le(in);
  const std::uint32_t h = detail::get_u32_le(in);
  DenseGrid grid(static_cast<int>(w), static_cast<int>(h));
  for (double& v : grid.values()) v = detail::get_f64_le(in);
  if (!in) throw Error(ErrorCode::PARSE_ERROR, "truncated SMAP1 file: " + path);
  return grid;
}

inline void write_csv_map(const std::string& path, const DenseGrid& grid) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IO_ERROR, "cannot open for writing: " + path);
  out.precision(17);
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (col) out << ',';
      out << grid.at(col, row);
    }
    out << '\n';
  }
}

inline DenseGrid read_csv_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open for reading: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        vals.push_back(std::stod(cell, &pos));
        if (pos != cell.size() && cell.find_first_not_of(" \t\r", pos) != std::string::npos)
          throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::PARSE_ERROR,
                    path + " line " + std::to_string(lineno) + ": bad value '" + cell + "'");
      }
    }
    if (!rows.empty() && vals.size() != rows.front().size())
      throw Error(ErrorCode::PARSE_ERROR,
                  path + " line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw Error(ErrorCode::PARSE_ERROR, path + ": empty csv map");
  DenseGrid grid(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int r = 0; r < grid.height(); ++r)
    for (int c = 0; c < grid.width(); ++c) grid.at(c, r) = rows[r][c];
  return grid;
}

/// 16-bit binary PGM, linear quantization of [min,max] to [0,65535].
/// A constant grid has zero range and maps everywhere to 0.
inline void write_pgm16(const std::string& path, const DenseGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IO_ERROR, "cannot open for writing: " + path);
  out << "P5\n" << grid.width() << ' ' << grid.height() << "\n65535\n";
  const double lo = grid.min(), hi = grid.max();
  const double range = hi - lo;
  for (double v : grid.values()) {
    const std::uint16_t q =
        range > 0 ? static_cast<std::uint16_t>(std::lround((v - lo) / range * 65535.0)) : 0;
    // big-endian per the PGM standard
    const char b[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
    out.write(b, 2);
  }
}

inline DenseGrid read_pgm16(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open for reading: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw Error(ErrorCode::MAGIC_MISMATCH, "not a P5 PGM: " + path);
  int w = 0, h = 0, maxval = 0;
  in >> w >> h >> maxval;
  if (!in || w <= 0 || h <= 0 || maxval != 65535)
    throw Error(ErrorCode::PARSE_ERROR, "bad PGM header (expect maxval 65535): " + path);
  in.get();  // single whitespace after maxval
  DenseGrid grid(w, h);
  for (double& v : grid.values()) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    v = static_cast<double>((static_cast<unsigned>(b[0]) << 8) | b[1]);
  }
  if (!in) throw Error(ErrorCode::PARSE_ERROR, "truncated PGM: " + path);
  return grid;
}

inline void write_map(const std::string& path, const DenseGrid& grid, MapFormat fmt) {
  switch (fmt) {
    case MapFormat::float_binary: write_smap(path, grid); break;
    case MapFormat::csv: write_csv_map(path, grid); break;
    case MapFormat::pgm16: write_pgm16(path, grid); break;
  }
}

inline DenseGrid read_map(const std::string& path, MapFormat fmt) {
  switch (fmt) {
    case MapFormat::float_binary: return read_smap(path);
    case MapFormat::csv: return read_csv_map(path);
    case MapFormat::pgm16: return read_pgm16(path);
  }
  throw Error(ErrorCode::IO_ERROR, "unknown map format");
}

}  // namespace gazecenter

#endif  // GAZECENTER_MAP_IO_HPP
