#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "revive/matrix.hpp"
#include "revive/svd.hpp"

namespace revive {

/// Share of the σ-sum kept by the low-rank reconstructions compared in LS.
inline constexpr double kDefaultEnergyFraction = 0.10;
/// Number of leading directions tracked by SS when the caller does not say.
inline constexpr std::size_t kDefaultTrackedCount = 10;

enum class Side {
  input,   ///< right singular vectors
  output,  ///< left singular vectors
};

/// Smallest leading-index reconstruction of `basis` holding `energy_fraction`
/// of its σ-sum.
Matrix energy_reconstruction(const SvdFactorization& basis, double energy_fraction);

/// Cosine similarity ⟨Ŵ_t, Ŵ_0⟩_F / (‖Ŵ_t‖_F ‖Ŵ_0‖_F) of the energy-truncated
/// reconstructions. energy_fraction ∈ (0, 1]. Throws UndefinedMetricError
/// when either reconstruction is zero.
double low_rank_similarity(const Matrix& w0, const Matrix& wt,
                           double energy_fraction = kDefaultEnergyFraction);
double low_rank_similarity(const Matrix& w0_reconstruction, const SvdFactorization& wt_basis,
                           double energy_fraction);

/// |cosine| between one direction of the current matrix and every direction
/// of the baseline.
struct SimilarityRow {
  std::size_t direction = 0;
  std::vector<double> similarities;
  std::size_t argmax = 0;
  double max = 0.0;
  /// False when the current singular value is not isolated, so the direction
  /// itself is not well defined.
  bool reliable = true;
};

std::vector<SimilarityRow> singular_vector_similarity(const SvdFactorization& baseline,
                                                      const SvdFactorization& current,
                                                      std::span<const std::size_t> tracked,
                                                      Side side = Side::input);

struct SpectralReport {
  std::size_t round_index = 0;
  double ls = 1.0;
  std::vector<SimilarityRow> ss_rows;         ///< input side
  std::vector<SimilarityRow> ss_output_rows;  ///< output side
  std::vector<double> energy_profile;         ///< σ of the current matrix
  double frobenius_distance = 0.0;            ///< ‖W_t − W_0‖_F

  /// Smallest row maximum over the tracked input-side rows (1 when nothing
  /// rotated).
  double ss_min_max() const;
  double ss_output_min_max() const;
};

/// Compares matrices against a fixed baseline; the baseline SVD and
/// reconstruction are computed once.
class TrajectoryAnalyzer {
 public:
  TrajectoryAnalyzer(Matrix baseline, double energy_fraction = kDefaultEnergyFraction,
                     std::size_t tracked_count = kDefaultTrackedCount);

  SpectralReport analyze(const Matrix& current, std::size_t round_index) const;
  SpectralReport analyze(const Matrix& current, const SvdFactorization& current_basis,
                         std::size_t round_index) const;

  const Matrix& baseline() const noexcept { return baseline_; }
  const SvdFactorization& baseline_basis() const noexcept { return basis_; }
  std::size_t tracked_count() const noexcept { return tracked_.size(); }
  double energy_fraction() const noexcept { return energy_fraction_; }

 private:
  Matrix baseline_;
  SvdFactorization basis_;
  Matrix reconstruction_;
  double energy_fraction_;
  std::vector<std::size_t> tracked_;
};

/// snapshots[0] is the baseline; one report per later snapshot, numbered from
/// 1. tracked_count is clamped to min(m, n).
std::vector<SpectralReport> analyze_trajectory(std::span<const Matrix> snapshots,
                                               double energy_fraction = kDefaultEnergyFraction,
                                               std::size_t tracked_count = kDefaultTrackedCount);

}  // namespace revive
