#include "revive/spectral_basis.hpp"

#include <algorithm>
#include <cmath>

#include "revive/errors.hpp"
#include "revive/random.hpp"

namespace revive {

SpectralCoefficients::SpectralCoefficients(Eigen::MatrixXd alpha, SvdFactorization basis)
    : alpha_(std::move(alpha)), basis_(std::move(basis)) {
  if (static_cast<std::size_t>(alpha_.rows()) != basis_.rows() ||
      static_cast<std::size_t>(alpha_.cols()) != basis_.cols()) {
    throw ArgumentError("coefficient grid shape does not match its basis");
  }
}

SpectralCoefficients decompose(const Matrix& delta, const SvdFactorization& basis) {
  if (delta.rows() != basis.rows() || delta.cols() != basis.cols()) {
    throw ArgumentError("decompose: update is " + delta.shape_string() + " but basis is " +
                        std::to_string(basis.rows()) + "x" + std::to_string(basis.cols()));
  }
  Eigen::MatrixXd alpha = basis.left().transpose() * delta.values() * basis.right();
  return SpectralCoefficients(std::move(alpha), basis);
}

Matrix recompose(const SpectralCoefficients& coeffs) {
  const auto& b = coeffs.basis();
  return Matrix(b.left() * coeffs.alpha() * b.right().transpose());
}

BasisCheck verify_basis_orthonormality(const SvdFactorization& basis, std::size_t sample_count,
                                       std::uint64_t seed) {
  if (sample_count == 0) throw ArgumentError("verify_basis_orthonormality: sample_count must be >= 1");
  RandomStream rng(seed, stream_id(StreamTag::kBasisCheck, 0));
  const std::uint64_t m = basis.rows();
  const std::uint64_t n = basis.cols();

  BasisCheck report;
  report.samples = sample_count;
  for (std::size_t s = 0; s < sample_count; ++s) {
    const std::size_t p = rng.next_u64() % m;
    const std::size_t q = rng.next_u64() % n;
    std::size_t p2 = rng.next_u64() % m;
    std::size_t q2 = rng.next_u64() % n;
    if (rng.next_u64() % 4 == 0) {
      p2 = p;
      q2 = q;
    }
    // ⟨u_p v_qᵀ, u_p' v_q'ᵀ⟩_F evaluated entrywise on the two outer products.
    const Eigen::MatrixXd a = basis.left_vector(p) * basis.right_vector(q).transpose();
    const Eigen::MatrixXd b = basis.left_vector(p2) * basis.right_vector(q2).transpose();
    const double inner = a.cwiseProduct(b).sum();
    const double expected = (p == p2 && q == q2) ? 1.0 : 0.0;
    report.max_deviation = std::max(report.max_deviation, std::abs(inner - expected));
  }
  return report;
}

}  // namespace revive
