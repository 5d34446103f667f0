#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "revive/matrix.hpp"

namespace revive {

/// Absolute tolerance on ‖UᵀU − I‖_max and ‖VᵀV − I‖_max.
inline constexpr double kOrthonormalityTolerance = 1e-8;
/// Relative Frobenius tolerance on ‖UΣVᵀ − W‖ / ‖W‖.
inline constexpr double kReconstructionTolerance = 1e-10;
/// Singular-value gaps below this fraction of σ₁ make the paired vectors
/// non-unique.
inline constexpr double kDegeneracyGap = 1e-8;

/// Full SVD W = UΣVᵀ with U m×m, V n×n and r = min(m, n) singular values in
/// descending order.
///
/// Signs are fixed so that the largest-magnitude entry of every left vector
/// uᵢ (i < r) is positive, the paired vᵢ flipping with it; ties go to the
/// lowest row index. Columns beyond r (null-space completions) follow the same
/// rule on their own.
///
/// The factorization is immutable and cheap to copy: copies share storage.
class SvdFactorization {
 public:
  std::size_t rows() const noexcept { return static_cast<std::size_t>(data_->u.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(data_->v.rows()); }
  std::size_t rank_bound() const noexcept { return data_->sigma.size(); }

  const Eigen::MatrixXd& left() const noexcept { return data_->u; }
  const Eigen::MatrixXd& right() const noexcept { return data_->v; }
  std::span<const double> singular_values() const noexcept { return data_->sigma; }

  auto left_vector(std::size_t i) const { return data_->u.col(static_cast<Eigen::Index>(i)); }
  auto right_vector(std::size_t j) const { return data_->v.col(static_cast<Eigen::Index>(j)); }
  double sigma(std::size_t i) const { return data_->sigma.at(i); }

  /// True when some neighbouring singular values differ by less than
  /// kDegeneracyGap·σ₁.
  bool degenerate() const noexcept { return data_->degenerate; }
  /// True when σᵢ is separated from both neighbours by at least kDegeneracyGap·σ₁,
  /// i.e. uᵢ and vᵢ are determined up to sign.
  bool isolated(std::size_t i) const;

  /// Identity of the underlying factorization (not numeric equality).
  bool same_as(const SvdFactorization& other) const noexcept { return data_ == other.data_; }

 private:
  struct Data {
    Eigen::MatrixXd u;
    Eigen::MatrixXd v;
    std::vector<double> sigma;
    bool degenerate = false;
  };

  explicit SvdFactorization(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;

  friend SvdFactorization svd(const Matrix& w);
};

/// Computes the full SVD. Throws NumericalError if the iteration fails to
/// converge.
SvdFactorization svd(const Matrix& w);

/// Σ_{i∈indices} σᵢ uᵢ vᵢᵀ. Indices are 0-based, must be < r and distinct.
Matrix reconstruct(const SvdFactorization& f, std::span<const std::size_t> indices);

/// Reconstruction from the leading `count` components.
Matrix reconstruct_leading(const SvdFactorization& f, std::size_t count);

}  // namespace revive
