#pragma once

#include <cstddef>

#include "revive/dominant_subspace.hpp"
#include "revive/matrix.hpp"
#include "revive/svd.hpp"

namespace revive {

struct FilterOutcome {
  Matrix safe_delta;
  /// ‖Δ − Δ_safe‖_F / ‖Δ‖_F, defined as 0 for Δ = 0.
  double removed_energy_fraction = 0.0;
  std::size_t k_used = 0;
  double tau_used = 0.0;
};

/// Removes every component of `delta` that reads from or writes to the
/// dominant subspace of `w`:
///
///   Δ_safe = (I − U_k U_kᵀ) · Δ · (I − V_k V_kᵀ)
///
/// which equals Σ_{i≥k, j≥k} αᵢⱼ uᵢvⱼᵀ in the SVD basis of `w`. The SVD is
/// recomputed from `w` on every call; pass the current matrix state.
FilterOutcome filter_update(const Matrix& w, const Matrix& delta, double tau = kDefaultTau);

/// Same filter on a caller-supplied factorization, for several candidate
/// updates against one matrix state. `subspace` must have been selected on
/// `basis`.
FilterOutcome filter_with_basis(const SvdFactorization& basis, const DominantSubspace& subspace,
                                const Matrix& delta);

struct EditResult {
  Matrix updated;
  FilterOutcome outcome;
};

/// w + filter_update(w, delta, tau).safe_delta.
EditResult apply_edit(const Matrix& w, const Matrix& delta, double tau = kDefaultTau);

}  // namespace revive
