#include "revive/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "revive/errors.hpp"
#include "revive/random.hpp"
#include "revive/safe_update.hpp"
#include "revive/svd.hpp"

namespace revive {

namespace {

Vector biased_unit(RandomStream& rng, std::size_t n, const Vector* anchor, double alignment) {
  Vector g = rng.unit_vector(n);
  if (anchor == nullptr || alignment == 0.0) return g;
  Vector x = alignment * *anchor + std::sqrt(1.0 - alignment * alignment) * g;
  const double norm = x.norm();
  return norm > 0.0 ? Vector(x / norm) : g;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ArgumentError("simulation config: " + message);
}

bool is_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::vector<double> spectrum_values(const Spectrum& spectrum, std::size_t r) {
  if (const auto* law = std::get_if<PowerLawSpectrum>(&spectrum)) {
    if (!(law->exponent >= 0.0) || !(law->scale > 0.0) || !std::isfinite(law->exponent) ||
        !std::isfinite(law->scale)) {
      throw ArgumentError("power-law spectrum needs exponent >= 0 and scale > 0");
    }
    std::vector<double> sigma(r);
    for (std::size_t i = 0; i < r; ++i) sigma[i] = law->scale * std::pow(static_cast<double>(i + 1), -law->exponent);
    return sigma;
  }
  const auto& values = std::get<std::vector<double>>(spectrum);
  if (values.size() != r) {
    throw ArgumentError("explicit spectrum has " + std::to_string(values.size()) + " values, expected " +
                        std::to_string(r));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) throw ArgumentError("spectrum values must be finite and >= 0");
    if (i > 0 && values[i] > values[i - 1]) throw ArgumentError("spectrum must be non-increasing");
  }
  return values;
}

Matrix synthesize_base(std::size_t rows, std::size_t cols, const Spectrum& spectrum, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw ArgumentError("synthesize_base: shape must be positive");
  const std::size_t r = std::min(rows, cols);
  const std::vector<double> sigma = spectrum_values(spectrum, r);
  RandomStream u_rng(seed, stream_id(StreamTag::kBaseMatrix, 0));
  RandomStream v_rng(seed, stream_id(StreamTag::kBaseMatrix, 1));
  const Eigen::MatrixXd u = u_rng.orthogonal(rows);
  const Eigen::MatrixXd v = v_rng.orthogonal(cols);
  const auto k = static_cast<Eigen::Index>(r);
  const Eigen::Map<const Eigen::VectorXd> s(sigma.data(), k);
  return Matrix(u.leftCols(k) * s.asDiagonal() * v.leftCols(k).transpose());
}

Edit generate_edit(const Matrix& w, EditKind kind, double scale, std::uint64_t seed, std::uint64_t counter,
                   const EditBias* bias) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ArgumentError("edit scale must be positive and finite");
  RandomStream rng(seed, stream_id(StreamTag::kEdit, counter));
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  const double magnitude = scale * w.frobenius_norm();

  if (kind == EditKind::rank_one_association) {
    const Vector key = bias ? biased_unit(rng, n, &bias->key_anchor, bias->key_alignment) : rng.unit_vector(n);
    const Vector dir =
        bias ? biased_unit(rng, m, &bias->residual_anchor, bias->residual_alignment) : rng.unit_vector(m);
    Matrix delta(magnitude * dir * key.transpose());
    Vector target = w.values() * key + delta.values() * key;
    return {std::move(delta), key, std::move(target)};
  }

  const Eigen::MatrixXd a = rng.normal_matrix(m, 2);
  const Eigen::MatrixXd b = rng.normal_matrix(n, 2);
  Eigen::MatrixXd raw = a * b.transpose();
  const double norm = raw.norm();
  if (norm > 0.0) raw *= magnitude / norm;
  Matrix delta(std::move(raw));
  Vector key = b.col(0).normalized();
  Vector target = w.values() * key + delta.values() * key;
  return {std::move(delta), std::move(key), std::move(target)};
}

void SimulationConfig::validate() const {
  require(rounds >= 1, "rounds must be >= 1");
  require(edits_per_round >= 1, "edits_per_round must be >= 1");
  require(tau >= 0.0 && tau < 1.0, "tau must lie in [0, 1)");
  require(rows >= 1 && cols >= 1, "shape must be positive");
  require(edit_scale > 0.0 && std::isfinite(edit_scale), "edit_scale must be positive");
  require(probe_count >= 1, "probe_count must be >= 1");
  require(probe_energy > 0.0 && probe_energy <= 1.0, "probe_energy must lie in (0, 1]");
  require(is_unit_interval(key_alignment), "key_alignment must lie in [0, 1]");
  require(is_unit_interval(residual_alignment), "residual_alignment must lie in [0, 1]");
  require(retention_threshold > 0.0 && std::isfinite(retention_threshold), "retention_threshold must be positive");
  require(energy_fraction > 0.0 && energy_fraction <= 1.0, "energy_fraction must lie in (0, 1]");
  (void)spectrum_values(spectrum, std::min(rows, cols));
}

SimulationResult run_simulation(const SimulationConfig& config, const SimulationHooks& hooks) {
  config.validate();

  const Matrix w0 = synthesize_base(config.rows, config.cols, config.spectrum, config.seed);
  const SvdFactorization basis0 = svd(w0);
  if (hooks.on_baseline) hooks.on_baseline(w0);

  const std::size_t tracked =
      config.tracked_count > 0 ? config.tracked_count : std::max<std::size_t>(1, select_k(basis0, config.tau).k());
  const TrajectoryAnalyzer analyzer(w0, config.energy_fraction, tracked);

  // Probes: unit vectors in the leading input subspace of W₀.
  const std::size_t probe_rank =
      std::max<std::size_t>(1, energy_rank(basis0.singular_values(), config.probe_energy));
  RandomStream probe_rng(config.seed, stream_id(StreamTag::kProbe, 0));
  Eigen::MatrixXd probes(static_cast<Eigen::Index>(config.cols), static_cast<Eigen::Index>(config.probe_count));
  for (Eigen::Index p = 0; p < probes.cols(); ++p) {
    const Vector c = probe_rng.unit_vector(probe_rank);
    probes.col(p) = basis0.right().leftCols(static_cast<Eigen::Index>(probe_rank)) * c;
  }
  const Eigen::VectorXd probe_base = (w0.values() * probes).colwise().norm().transpose();

  RandomStream anchor_rng(config.seed, stream_id(StreamTag::kAnchor, 0));
  const EditBias bias{Vector(basis0.right_vector(0)), anchor_rng.unit_vector(config.rows), config.key_alignment,
                      config.residual_alignment};

  SimulationResult result;
  Matrix w = w0;
  std::uint64_t counter = 0;
  std::size_t round = 0;
  try {
    for (round = 1; round <= config.rounds; ++round) {
      struct Injected {
        Vector key;
        Vector target;
        double requested;
      };
      std::vector<Injected> injected;
      injected.reserve(config.edits_per_round);
      RoundRecord record;
      double removed_sum = 0.0;

      for (std::size_t e = 0; e < config.edits_per_round; ++e, ++counter) {
        Edit edit = generate_edit(w, config.edit_kind, config.edit_scale, config.seed, counter, &bias);
        const Vector before = w.values() * edit.key;
        const double requested = (edit.target - before).norm();
        if (config.filter_enabled) {
          EditResult applied = apply_edit(w, edit.delta, config.tau);
          w = std::move(applied.updated);
          record.k_used = applied.outcome.k_used;
          removed_sum += applied.outcome.removed_energy_fraction;
        } else {
          w = w + edit.delta;
        }
        injected.push_back({std::move(edit.key), std::move(edit.target), requested});
      }

      const SvdFactorization basis = svd(w);
      record.report = analyzer.analyze(w, basis, round);

      const Eigen::MatrixXd drift = (w.values() - w0.values()) * probes;
      double fidelity = 0.0;
      for (Eigen::Index p = 0; p < probes.cols(); ++p) fidelity += drift.col(p).norm() / probe_base(p);
      record.probe_fidelity = fidelity / static_cast<double>(probes.cols());

      std::size_t retained = 0;
      for (const auto& a : injected) {
        if ((w.values() * a.key - a.target).norm() < config.retention_threshold * a.requested) ++retained;
      }
      record.edit_retention = static_cast<double>(retained) / static_cast<double>(injected.size());
      record.mean_removed_fraction = removed_sum / static_cast<double>(config.edits_per_round);

      if (hooks.on_round) hooks.on_round(record, w);
      result.rounds.push_back(std::move(record));
    }
  } catch (const NumericalError& e) {
    result.failure = SimulationFailure{round, e.what()};
  } catch (const ConstructionError& e) {
    // Entries overflowed to Inf/NaN.
    result.failure = SimulationFailure{round, e.what()};
  }
  return result;
}

std::vector<SimulationResult> run_batch(std::span<const SimulationConfig> configs, std::size_t workers) {
  for (const auto& c : configs) c.validate();
  std::vector<SimulationResult> results(configs.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, configs.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) results[i] = run_simulation(configs[i]);
  };
  if (workers <= 1) {
    work();
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  pool.clear();
  return results;
}

}  // namespace revive
