#pragma once
#include <string>
#include <vector>

#include "json.hpp"

#include "glkdv/field.hpp"

namespace glkdv {

// Shortest round-trippable decimal form (17 significant digits).
std::string fmt17(double x);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

// Binary field dump, little-endian:
//   bytes 0..7   magic "GLKDVFLD"
//   uint32       version (1)
//   uint32       dtype (1 = float64 re/im interleaved Fourier coefficients)
//   uint64       n (grid size)
//   float64      L (domain length)
//   2n float64   coefficients, Re/Im interleaved, FFT mode order
void write_field_dump(const std::string& path, const SpectralField& f);
SpectralField read_field_dump(const std::string& path);

}  // namespace glkdv
