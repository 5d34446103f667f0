#pragma once

#include <cstddef>
#include <cstdint>

#include "revive/matrix.hpp"
#include "revive/svd.hpp"

namespace revive {

/// Coordinates of an m×n matrix in the outer-product basis {uᵢvⱼᵀ} of a base
/// matrix: alpha(i, j) = uᵢᵀ Δ vⱼ.
class SpectralCoefficients {
 public:
  /// Wraps an explicit coefficient grid; its shape must match the basis.
  SpectralCoefficients(Eigen::MatrixXd alpha, SvdFactorization basis);

  const Eigen::MatrixXd& alpha() const noexcept { return alpha_; }
  double operator()(std::size_t i, std::size_t j) const {
    return alpha_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const SvdFactorization& basis() const noexcept { return basis_; }

  double frobenius_norm() const { return alpha_.norm(); }

 private:
  Eigen::MatrixXd alpha_;
  SvdFactorization basis_;
};

/// Uᵀ·Δ·V.
SpectralCoefficients decompose(const Matrix& delta, const SvdFactorization& basis);

/// U·alpha·Vᵀ = Σᵢⱼ αᵢⱼ uᵢvⱼᵀ.
Matrix recompose(const SpectralCoefficients& coeffs);

struct BasisCheck {
  std::size_t samples = 0;
  double max_deviation = 0.0;
};

/// Samples `sample_count` random pairs of basis elements and reports the
/// largest |⟨u_p v_qᵀ, u_p' v_q'ᵀ⟩_F − δ_pp'·δ_qq'|. Roughly one pair in four
/// is drawn as a diagonal pair (p, q) = (p', q') so that unit norms are
/// exercised as well as orthogonality.
BasisCheck verify_basis_orthonormality(const SvdFactorization& basis, std::size_t sample_count,
                                       std::uint64_t seed);

}  // namespace revive
