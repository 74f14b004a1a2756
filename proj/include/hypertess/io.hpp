#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "hypertess/affine.hpp"
#include "hypertess/embedding.hpp"
#include "hypertess/geometry.hpp"
#include "hypertess/random.hpp"

namespace hypertess {

// Binary layouts (all integers and doubles little-endian):
//   HPM1  magic, u32 version=1, u64 m, u64 n, u64 seed, u64 stream, m*n f64 row-major
//   HPC1  magic, u32 version=1, u64 count, u64 m, count * ceil(m/64) u64 words
//   HPA1  magic, u32 version=1, u64 m, u64 n, f64 t, f64 lambda, m * (n normal + 1 offset) f64

inline constexpr std::uint32_t kFormatVersion = 1;

void write_matrix(std::ostream& out, const GaussianMatrix& a);
GaussianMatrix read_matrix(std::istream& in);
void write_matrix(const std::filesystem::path& path, const GaussianMatrix& a);
GaussianMatrix read_matrix(const std::filesystem::path& path);

struct CodeFile {
  std::size_t m = 0;
  std::vector<BitCode> codes;
};

void write_codes(std::ostream& out, std::span<const BitCode> codes, std::size_t m);
CodeFile read_codes(std::istream& in);
void write_codes(const std::filesystem::path& path, std::span<const BitCode> codes, std::size_t m);
CodeFile read_codes(const std::filesystem::path& path);

void write_arrangement(std::ostream& out, const AffineArrangement& arr);
AffineArrangement read_arrangement(std::istream& in);
void write_arrangement(const std::filesystem::path& path, const AffineArrangement& arr);
AffineArrangement read_arrangement(const std::filesystem::path& path);

/// Reads a point set from CSV text or an HPM1 file (one point per row).
std::vector<Vector> read_points(const std::filesystem::path& path);
std::vector<Vector> parse_points_csv(std::istream& in);
/// One point per line, %.17g so values round-trip exactly.
void write_points_csv(std::ostream& out, std::span<const Vector> points);
void write_points_csv(const std::filesystem::path& path, std::span<const Vector> points);

}  // namespace hypertess
