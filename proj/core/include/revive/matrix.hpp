#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace revive {

using Vector = Eigen::VectorXd;

/// Dense real matrix with at least one row and one column and only finite
/// entries. Every constructor validates; there is no mutable element access,
/// so a Matrix that exists is always valid.
class Matrix {
 public:
  /// Zero matrix.
  Matrix(std::size_t rows, std::size_t cols);
  explicit Matrix(Eigen::MatrixXd values);

  static Matrix from_row_major(std::size_t rows, std::size_t cols, std::span<const double> data);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  double operator()(std::size_t i, std::size_t j) const { return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  std::vector<double> to_row_major() const;

  double frobenius_norm() const { return values_.norm(); }
  bool same_shape(const Matrix& other) const noexcept {
    return rows() == other.rows() && cols() == other.cols();
  }
  std::string shape_string() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend Matrix operator-(const Matrix& a);

  /// Bitwise equality of shape and payload.
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Eigen::MatrixXd values_;
};

/// trace(aᵀb), the Frobenius inner product. Shapes must match.
double frobenius_inner(const Matrix& a, const Matrix& b);

/// Throws ArgumentError naming `what` unless both shapes match.
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

}  // namespace revive
