#include "glkdv/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace glkdv {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << header[c];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("write_csv: row width mismatch in " + path);
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << fmt17(row[c]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_json_file: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write_json_file: write failed for " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_json_file: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

namespace {
constexpr char kMagic[8] = {'G', 'L', 'K', 'D', 'V', 'F', 'L', 'D'};
}

void write_field_dump(const std::string& path, const SpectralField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field_dump: cannot open " + path);
  out.write(kMagic, 8);
  const std::uint32_t version = 1, dtype = 1;
  const std::uint64_t n = (std::uint64_t)f.grid->n;
  const double L = f.grid->length;
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&dtype), 4);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&L), 8);
  for (const auto& c : f.coef) {
    const double re = c.real(), im = c.imag();
    out.write(reinterpret_cast<const char*>(&re), 8);
    out.write(reinterpret_cast<const char*>(&im), 8);
  }
  if (!out) throw std::runtime_error("write_field_dump: write failed for " + path);
}

SpectralField read_field_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_field_dump: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("read_field_dump: bad magic in " + path);
  std::uint32_t version = 0, dtype = 0;
  std::uint64_t n = 0;
  double L = 0.0;
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&dtype), 4);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&L), 8);
  if (!in || version != 1 || dtype != 1)
    throw std::runtime_error("read_field_dump: unsupported header in " + path);
  auto g = SpectralGrid::make((int)n, L);
  std::vector<cplx> coef(n);
  for (auto& c : coef) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    c = cplx(re, im);
  }
  if (!in) throw std::runtime_error("read_field_dump: truncated file " + path);
  return SpectralField::from_coeffs(g, std::move(coef));
}

}  // namespace glkdv
