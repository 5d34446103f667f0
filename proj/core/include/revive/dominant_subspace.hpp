#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "revive/svd.hpp"

namespace revive {

/// Fraction of the σ-sum protected when no threshold is given.
inline constexpr double kDefaultTau = 0.10;

/// Leading singular directions that carry a `tau` share of the σ-sum.
class DominantSubspace {
 public:
  std::size_t k() const noexcept { return k_; }
  double tau() const noexcept { return tau_; }
  /// Σ_{i<k} σᵢ / Σᵢ σᵢ.
  double energy_captured() const noexcept { return energy_captured_; }
  const SvdFactorization& basis() const noexcept { return basis_; }

  /// U_k (m×k) and V_k (n×k).
  auto left_block() const { return basis_.left().leftCols(static_cast<Eigen::Index>(k_)); }
  auto right_block() const { return basis_.right().leftCols(static_cast<Eigen::Index>(k_)); }

 private:
  DominantSubspace(std::size_t k, double tau, double energy, SvdFactorization basis)
      : k_(k), tau_(tau), energy_captured_(energy), basis_(std::move(basis)) {}

  std::size_t k_;
  double tau_;
  double energy_captured_;
  SvdFactorization basis_;

  friend DominantSubspace select_k(const SvdFactorization& basis, double tau);
};

/// Smallest k with Σ_{i<k} σᵢ / Σᵢ σᵢ ≥ fraction, for fraction ∈ [0, 1] and a
/// descending, non-negative spectrum. fraction = 0 gives 0. Throws
/// DegenerateMatrixError when every σ is zero.
std::size_t energy_rank(std::span<const double> sigma, double fraction);

/// Protected subspace for threshold tau ∈ [0, 1). tau = 0 selects nothing.
DominantSubspace select_k(const SvdFactorization& basis, double tau = kDefaultTau);

struct EnergyShare {
  double absolute = 0.0;
  double ratio = 0.0;
};

/// σ-sum over `indices` (0-based, distinct) and its share of the total.
EnergyShare energy_of(const SvdFactorization& basis, std::span<const std::size_t> indices);

using IndexGroup = std::vector<std::size_t>;

/// Splits 0..r−1 into `group_count` contiguous bands on the cumulative energy
/// grid j/group_count. Index i lands in the first band whose upper boundary is
/// ≥ the cumulative share through σᵢ (σᵢ included). Bands may be empty.
std::vector<IndexGroup> energy_groups(const SvdFactorization& basis, std::size_t group_count);
std::vector<IndexGroup> energy_groups(std::span<const double> sigma, std::size_t group_count);

}  // namespace revive
