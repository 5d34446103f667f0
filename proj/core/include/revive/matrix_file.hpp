#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "revive/matrix.hpp"

namespace revive {

/// Binary matrix container:
///
///   offset  size  field
///   0       4     magic "SGM1"
///   4       1     dtype (1 = float32, 2 = float64)
///   5       8     rows, uint64 little-endian
///   13      8     cols, uint64 little-endian
///   21      …     rows·cols scalars, row-major, little-endian
///
/// float64 round-trips bit-exactly; float32 payloads widen on read.
enum class MatrixDtype : std::uint8_t {
  float32 = 1,
  float64 = 2,
};

inline constexpr std::size_t kMatrixHeaderBytes = 21;

std::string encode_matrix(const Matrix& m, MatrixDtype dtype = MatrixDtype::float64);
/// `source` names the input in error messages.
Matrix decode_matrix(std::string_view bytes, std::string_view source = "<memory>");

void write_matrix_file(const std::filesystem::path& path, const Matrix& m,
                       MatrixDtype dtype = MatrixDtype::float64);
/// Throws FormatError (naming the file) on malformed content or I/O failure.
Matrix read_matrix_file(const std::filesystem::path& path);

}  // namespace revive
