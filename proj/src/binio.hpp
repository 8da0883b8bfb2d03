#pragma once

// Little-endian binary streams for the PMX/PMB/PCM/PNF containers.

#include <nyprox/types.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace nyprox::detail {

class BinaryWriter {
public:
  explicit BinaryWriter(const std::filesystem::path& path);

  void magic(std::string_view four_chars);
  void u8(std::uint8_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void str(const std::string& s);
  /// Row-major payload of `m`.
  void matrix(const Matrix& m);
  void vector(const Vector& v);
  void finish();

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class BinaryReader {
public:
  explicit BinaryReader(const std::filesystem::path& path);

  /// Returns the four magic bytes.
  std::string magic();
  std::uint8_t u8();
  std::uint64_t u64();
  double f64();
  std::string str();
  /// Reads rows*cols row-major doubles; non-finite values throw DataError naming (row, col).
  Matrix matrix(std::uint64_t rows, std::uint64_t cols, bool require_finite = true);
  Vector vector(std::uint64_t n);
  /// Throws DataError when unread bytes remain.
  void expect_end();
  /// Bytes left in the file.
  std::uint64_t remaining();

private:
  void read_raw(char* dst, std::size_t n, const char* what);

  std::filesystem::path path_;
  std::ifstream in_;
};

}  // namespace nyprox::detail
