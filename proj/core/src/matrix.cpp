#include "revive/matrix.hpp"

#include <cstring>

#include "revive/errors.hpp"

namespace revive {

namespace {

void validate(const Eigen::MatrixXd& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw ConstructionError("matrix must have at least one row and one column, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw ConstructionError("matrix contains non-finite entries");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : values_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))) {
  validate(values_);
}

Matrix::Matrix(Eigen::MatrixXd values) : values_(std::move(values)) { validate(values_); }

Matrix Matrix::from_row_major(std::size_t rows, std::size_t cols, std::span<const double> data) {
  if (data.size() != rows * cols) {
    throw ConstructionError("row-major payload has " + std::to_string(data.size()) +
                            " entries, expected " + std::to_string(rows * cols));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i * cols + j];
    }
  }
  return Matrix(std::move(m));
}

Matrix Matrix::identity(std::size_t n) {
  return Matrix(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(diag.size()),
                                            static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  return Matrix(std::move(m));
}

std::vector<double> Matrix::to_row_major() const {
  std::vector<double> out;
  out.reserve(rows() * cols());
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) out.push_back(values_(i, j));
  }
  return out;
}

std::string Matrix::shape_string() const {
  return std::to_string(rows()) + "x" + std::to_string(cols());
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "matrix addition");
  return Matrix(a.values_ + b.values_);
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "matrix subtraction");
  return Matrix(a.values_ - b.values_);
}

Matrix operator*(double s, const Matrix& a) { return Matrix(s * a.values_); }

Matrix operator-(const Matrix& a) { return Matrix(-a.values_); }

bool operator==(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) return false;
  return std::memcmp(a.values_.data(), b.values_.data(),
                     sizeof(double) * static_cast<std::size_t>(a.values_.size())) == 0;
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "frobenius_inner");
  return a.values().cwiseProduct(b.values()).sum();
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ArgumentError(std::string(what) + ": shape mismatch " + a.shape_string() + " vs " +
                        b.shape_string());
  }
}

}  // namespace revive
