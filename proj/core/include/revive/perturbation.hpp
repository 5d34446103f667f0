#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "revive/dominant_subspace.hpp"
#include "revive/matrix.hpp"
#include "revive/spectral_metrics.hpp"
#include "revive/svd.hpp"

namespace revive {

/// Structured perturbation confined to one band of singular directions.
///
/// Input side: Δ = Σ_{j∈group} Σ_{i<r} αᵢⱼ uᵢvⱼᵀ remaps the group's input
/// directions to random mixtures of outputs. Output side: Δ = Σ_{i∈group}
/// Σ_{j<r} βᵢⱼ uᵢvⱼᵀ. Coefficients are i.i.d. N(0, 1) drawn in row-major
/// (i, j) order from stream (seed, substream); Δ is then rescaled to
/// Frobenius norm `epsilon`.
struct PerturbationSpec {
  Side side = Side::input;
  IndexGroup group;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t substream = 0;
};

Matrix generate_perturbation(const SvdFactorization& basis, const PerturbationSpec& spec);

struct PerturbedMatrix {
  std::size_t group_index = 0;
  IndexGroup group;
  Matrix perturbed;  ///< W + Δ̃
  Matrix perturbation;
};

/// One perturbed copy of `w` per energy group, all at norm `epsilon`. Group g
/// draws from substream g. Empty groups are skipped.
std::vector<PerturbedMatrix> perturbation_sweep(const Matrix& w, double epsilon, std::size_t group_count,
                                                Side side, std::uint64_t seed);

}  // namespace revive
