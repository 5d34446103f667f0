#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "revive/errors.hpp"
#include "revive/matrix_file.hpp"

namespace revive {
namespace {

std::string error_of(std::string_view bytes, std::string_view source) {
  try {
    decode_matrix(bytes, source);
  } catch (const FormatError& e) {
    return e.what();
  }
  return {};
}

TEST(MatrixFile, Float64RoundTripBitExact) {
  std::mt19937_64 gen(71);
  const Matrix m = testing::random_matrix(gen, 13, 5, 1e3);
  const std::string bytes = encode_matrix(m);
  EXPECT_EQ(bytes.size(), kMatrixHeaderBytes + 13 * 5 * 8);
  EXPECT_TRUE(decode_matrix(bytes) == m);
  EXPECT_EQ(encode_matrix(decode_matrix(bytes)), bytes);
}

TEST(MatrixFile, HeaderLayout) {
  const std::vector<double> data{1.0, -2.5};
  const std::string bytes = encode_matrix(Matrix::from_row_major(1, 2, data));
  EXPECT_EQ(bytes.substr(0, 4), "SGM1");
  EXPECT_EQ(bytes[4], '\x02');
  EXPECT_EQ(bytes[5], '\x01');
  EXPECT_EQ(bytes[13], '\x02');
  double second = 0.0;
  std::memcpy(&second, bytes.data() + kMatrixHeaderBytes + 8, 8);
  EXPECT_EQ(second, -2.5);
}

TEST(MatrixFile, Float32Widens) {
  const std::vector<double> data{0.1, 3.0, -1e-3};
  const Matrix m = Matrix::from_row_major(3, 1, data);
  const Matrix back = decode_matrix(encode_matrix(m, MatrixDtype::float32));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back(i, 0), static_cast<double>(static_cast<float>(data[i])));
}

TEST(MatrixFile, ErrorsNameTheSource) {
  const std::string good = encode_matrix(Matrix::identity(2));
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(error_of(bad_magic, "w.sgm"), "w.sgm: bad magic (expected \"SGM1\")");
  EXPECT_EQ(error_of(good.substr(0, 10), "w.sgm"), "w.sgm: truncated header");
  EXPECT_NE(error_of(good.substr(0, good.size() - 1), "w.sgm").find("payload"), std::string::npos);
  std::string bad_dtype = good;
  bad_dtype[4] = '\x07';
  EXPECT_EQ(error_of(bad_dtype, "w.sgm"), "w.sgm: unknown dtype 7");
  std::string empty_shape = good;
  empty_shape[5] = '\x00';
  EXPECT_EQ(error_of(empty_shape, "w.sgm"), "w.sgm: empty shape");
}

TEST(MatrixFile, RejectsNonFinitePayload) {
  std::string bytes = encode_matrix(Matrix::identity(1));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(bytes.data() + kMatrixHeaderBytes, &nan, 8);
  EXPECT_THROW(decode_matrix(bytes, "n.sgm"), FormatError);
}

TEST(MatrixFile, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "revive_test_matrix_file.sgm";
  std::mt19937_64 gen(72);
  const Matrix m = testing::random_matrix(gen, 4, 6);
  write_matrix_file(path, m);
  EXPECT_TRUE(read_matrix_file(path) == m);
  std::filesystem::remove(path);
  EXPECT_THROW(read_matrix_file(path), FormatError);
}

}  // namespace
}  // namespace revive
