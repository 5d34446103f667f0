#include "revive/safe_update.hpp"

#include <algorithm>

#include "revive/errors.hpp"

namespace revive {

FilterOutcome filter_with_basis(const SvdFactorization& basis, const DominantSubspace& subspace,
                                const Matrix& delta) {
  if (!subspace.basis().same_as(basis)) {
    throw ArgumentError("filter_with_basis: subspace was selected on a different factorization");
  }
  if (delta.rows() != basis.rows() || delta.cols() != basis.cols()) {
    throw ArgumentError("filter_with_basis: update is " + delta.shape_string() + " but basis is " +
                        std::to_string(basis.rows()) + "x" + std::to_string(basis.cols()));
  }

  const std::size_t k = subspace.k();
  FilterOutcome out{delta, 0.0, k, subspace.tau()};
  if (k == 0) return out;

  if (k == basis.rank_bound()) {
    // Every (i, j) pair has i < k or j < k.
    out.safe_delta = Matrix(delta.rows(), delta.cols());
  } else {
    const auto uk = subspace.left_block();
    const auto vk = subspace.right_block();
    Eigen::MatrixXd d = delta.values();
    d.noalias() -= uk * (uk.transpose() * d);
    d.noalias() -= (d * vk) * vk.transpose();
    out.safe_delta = Matrix(std::move(d));
  }

  const double norm = delta.frobenius_norm();
  if (norm > 0.0) {
    out.removed_energy_fraction =
        std::min(1.0, (delta.values() - out.safe_delta.values()).norm() / norm);
  }
  return out;
}

FilterOutcome filter_update(const Matrix& w, const Matrix& delta, double tau) {
  require_same_shape(w, delta, "filter_update");
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw ArgumentError("tau must lie in [0, 1), got " + std::to_string(tau));
  }
  const SvdFactorization basis = svd(w);
  return filter_with_basis(basis, select_k(basis, tau), delta);
}

EditResult apply_edit(const Matrix& w, const Matrix& delta, double tau) {
  FilterOutcome outcome = filter_update(w, delta, tau);
  Matrix updated = w + outcome.safe_delta;
  return {std::move(updated), std::move(outcome)};
}

}  // namespace revive
