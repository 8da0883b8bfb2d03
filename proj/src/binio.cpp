#include "binio.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <vector>

namespace nyprox::detail {

namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
}

// Guards against absurd sizes in corrupted headers before allocating.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 36;

}  // namespace

BinaryWriter::BinaryWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw DataError("cannot open '" + path.string() + "' for writing");
}

void BinaryWriter::magic(std::string_view four_chars) { out_.write(four_chars.data(), 4); }

void BinaryWriter::u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }

void BinaryWriter::u64(std::uint64_t v) {
  const std::uint64_t le = to_le(v);
  out_.write(reinterpret_cast<const char*>(&le), 8);
}

void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::str(const std::string& s) {
  u64(s.size());
  out_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinaryWriter::matrix(const Matrix& m) {
  std::vector<std::uint64_t> row(static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = to_le(std::bit_cast<std::uint64_t>(m(i, j)));
    out_.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * 8));
  }
}

void BinaryWriter::vector(const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) f64(v(i));
}

void BinaryWriter::finish() {
  out_.flush();
  if (!out_) throw DataError("write to '" + path_.string() + "' failed");
}

BinaryReader::BinaryReader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw DataError("cannot open '" + path.string() + "'");
}

void BinaryReader::read_raw(char* dst, std::size_t n, const char* what) {
  in_.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in_.gcount()) != n) {
    throw DataError("'" + path_.string() + "': truncated while reading " + what);
  }
}

std::string BinaryReader::magic() {
  std::string m(4, '\0');
  read_raw(m.data(), 4, "magic");
  return m;
}

std::uint8_t BinaryReader::u8() {
  char c = 0;
  read_raw(&c, 1, "header byte");
  return static_cast<std::uint8_t>(c);
}

std::uint64_t BinaryReader::u64() {
  std::uint64_t v = 0;
  read_raw(reinterpret_cast<char*>(&v), 8, "integer");
  return to_le(v);
}

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string BinaryReader::str() {
  const std::uint64_t n = u64();
  if (n > remaining()) throw DataError("'" + path_.string() + "': string length exceeds file size");
  std::string s(n, '\0');
  read_raw(s.data(), n, "string");
  return s;
}

Matrix BinaryReader::matrix(std::uint64_t rows, std::uint64_t cols, bool require_finite) {
  if (rows != 0 && cols > kMaxElements / rows) throw DataError("'" + path_.string() + "': matrix header too large");
  if (rows * cols * 8 > remaining()) {
    throw DataError("'" + path_.string() + "': payload shorter than header dimensions " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  std::vector<std::uint64_t> row(cols);
  for (std::uint64_t i = 0; i < rows; ++i) {
    read_raw(reinterpret_cast<char*>(row.data()), cols * 8, "payload");
    for (std::uint64_t j = 0; j < cols; ++j) {
      const double v = std::bit_cast<double>(to_le(row[j]));
      if (require_finite && !std::isfinite(v)) {
        throw DataError("'" + path_.string() + "': non-finite entry at (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")");
      }
      m(static_cast<Index>(i), static_cast<Index>(j)) = v;
    }
  }
  return m;
}

Vector BinaryReader::vector(std::uint64_t n) {
  Matrix m = matrix(n, 1);
  return m.col(0);
}

std::uint64_t BinaryReader::remaining() {
  const auto pos = in_.tellg();
  in_.seekg(0, std::ios::end);
  const auto end = in_.tellg();
  in_.seekg(pos);
  return static_cast<std::uint64_t>(end - pos);
}

void BinaryReader::expect_end() {
  if (remaining() != 0) throw DataError("'" + path_.string() + "': trailing bytes after payload");
}

}  // namespace nyprox::detail
