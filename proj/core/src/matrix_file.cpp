#include "revive/matrix_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

#include "revive/errors.hpp"

namespace revive {

namespace {

constexpr char kMagic[4] = {'S', 'G', 'M', '1'};

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFFu));
}

std::uint64_t get_u64(std::string_view in, std::size_t offset) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + b])) << (8 * b);
  }
  return v;
}

std::uint32_t get_u32(std::string_view in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + b])) << (8 * b);
  }
  return v;
}

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw FormatError(std::string(source) + ": " + what);
}

}  // namespace

std::string encode_matrix(const Matrix& m, MatrixDtype dtype) {
  const std::size_t width = dtype == MatrixDtype::float64 ? 8 : 4;
  std::string out;
  out.reserve(kMatrixHeaderBytes + width * m.rows() * m.cols());
  out.append(kMagic, 4);
  out.push_back(static_cast<char>(dtype));
  put_u64(out, m.rows());
  put_u64(out, m.cols());
  for (double x : m.to_row_major()) {
    if (dtype == MatrixDtype::float64) {
      put_u64(out, std::bit_cast<std::uint64_t>(x));
    } else {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(x));
      for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
    }
  }
  return out;
}

Matrix decode_matrix(std::string_view bytes, std::string_view source) {
  if (bytes.size() < kMatrixHeaderBytes) fail(source, "truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) fail(source, "bad magic (expected \"SGM1\")");
  const auto dtype = static_cast<unsigned char>(bytes[4]);
  if (dtype != 1 && dtype != 2) fail(source, "unknown dtype " + std::to_string(dtype));
  const std::size_t width = dtype == 2 ? 8 : 4;
  const std::uint64_t rows = get_u64(bytes, 5);
  const std::uint64_t cols = get_u64(bytes, 13);
  if (rows == 0 || cols == 0) fail(source, "empty shape");
  const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() - kMatrixHeaderBytes) / width;
  if (rows > limit / cols) fail(source, "shape overflows");
  const std::uint64_t count = rows * cols;
  if (bytes.size() != kMatrixHeaderBytes + count * width) {
    fail(source, "payload is " + std::to_string(bytes.size() - kMatrixHeaderBytes) + " bytes, header says " +
                     std::to_string(count * width));
  }

  std::vector<double> data(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t at = kMatrixHeaderBytes + i * width;
    data[i] = width == 8 ? std::bit_cast<double>(get_u64(bytes, at))
                         : static_cast<double>(std::bit_cast<float>(get_u32(bytes, at)));
  }
  try {
    return Matrix::from_row_major(rows, cols, data);
  } catch (const ConstructionError& e) {
    fail(source, e.what());
  }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m, MatrixDtype dtype) {
  const std::string bytes = encode_matrix(m, dtype);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(path.string() + ": write failed");
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open for reading");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_matrix(bytes, path.string());
}

}  // namespace revive
