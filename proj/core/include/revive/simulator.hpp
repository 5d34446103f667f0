#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "revive/dominant_subspace.hpp"
#include "revive/matrix.hpp"
#include "revive/spectral_metrics.hpp"

namespace revive {

/// σᵢ = scale · i^(−exponent), i = 1..r.
struct PowerLawSpectrum {
  double exponent = 1.0;
  double scale = 1.0;
};

/// Either a power law or an explicit descending list of r = min(m, n) values.
using Spectrum = std::variant<PowerLawSpectrum, std::vector<double>>;

std::vector<double> spectrum_values(const Spectrum& spectrum, std::size_t r);

/// W₀ = U·diag(σ)·Vᵀ with Haar-random U, V drawn from `seed`.
Matrix synthesize_base(std::size_t rows, std::size_t cols, const Spectrum& spectrum, std::uint64_t seed);

enum class EditKind {
  rank_one_association,
  random_low_rank,
};

/// Shared structure across a stream of synthetic edits. A key is drawn as
/// normalize(a·key_anchor + √(1−a²)·g) with g uniform on the sphere and
/// a = key_alignment; residual directions use residual_anchor the same way.
/// Alignments of zero give isotropic edits.
struct EditBias {
  Vector key_anchor;
  Vector residual_anchor;
  double key_alignment = 0.0;
  double residual_alignment = 0.0;
};

/// One synthetic edit and the association it writes: (w + delta)·key = target.
struct Edit {
  Matrix delta;
  Vector key;
  Vector target;
};

/// rank-one-association: Δ = scale·‖w‖_F · d·xᵀ for a unit key x and unit
/// residual direction d, with target = w·x + Δ·x.
/// random-low-rank: a random rank-2 Δ at the same norm; the key is its
/// leading input factor.
/// Deterministic in (seed, counter).
Edit generate_edit(const Matrix& w, EditKind kind, double scale, std::uint64_t seed, std::uint64_t counter,
                   const EditBias* bias = nullptr);

struct SimulationConfig {
  std::uint64_t seed = 0;
  std::size_t rounds = 20;
  std::size_t edits_per_round = 100;
  double tau = kDefaultTau;
  std::size_t rows = 128;
  std::size_t cols = 96;
  Spectrum spectrum = PowerLawSpectrum{};
  EditKind edit_kind = EditKind::rank_one_association;
  double edit_scale = 0.02;
  bool filter_enabled = true;
  std::size_t probe_count = 16;
  /// Probes live in span(v₁..v_p) of W₀, p the energy rank at this fraction.
  double probe_energy = 0.10;
  double key_alignment = 0.5;
  double residual_alignment = 0.6;
  /// An association is retained while ‖W_t·x − y‖ < threshold·‖y − W_before·x‖.
  double retention_threshold = 0.1;
  double energy_fraction = kDefaultEnergyFraction;
  /// 0 tracks the directions protected at W₀ (at least one).
  std::size_t tracked_count = 0;

  /// Throws ArgumentError describing the first invalid field.
  void validate() const;
};

struct RoundRecord {
  SpectralReport report;
  /// Mean over probes of ‖(W_t − W₀)x‖ / ‖W₀x‖.
  double probe_fidelity = 0.0;
  /// Share of this round's associations still reproduced at round end.
  double edit_retention = 0.0;
  /// Protected rank used by the round's last edit (0 when unfiltered).
  std::size_t k_used = 0;
  double mean_removed_fraction = 0.0;
};

struct SimulationFailure {
  std::size_t round = 0;
  std::string message;
};

struct SimulationResult {
  std::vector<RoundRecord> rounds;
  std::optional<SimulationFailure> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

struct SimulationHooks {
  std::function<void(const Matrix&)> on_baseline;
  std::function<void(const RoundRecord&, const Matrix&)> on_round;
};

/// Runs the sequential-editing loop. When filtering, every edit passes through
/// filter_update on the current matrix (fresh SVD per edit). A numerical
/// failure stops the run and is reported in `failure`; completed rounds are
/// kept.
SimulationResult run_simulation(const SimulationConfig& config, const SimulationHooks& hooks = {});

/// Independent runs, one worker thread per config up to `workers`
/// (0 = hardware concurrency). Results keep input order.
std::vector<SimulationResult> run_batch(std::span<const SimulationConfig> configs, std::size_t workers = 0);

}  // namespace revive
