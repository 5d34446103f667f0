#include "revive/spectral_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revive/dominant_subspace.hpp"
#include "revive/errors.hpp"

namespace revive {

namespace {

void check_fraction(double energy_fraction) {
  if (!(energy_fraction > 0.0 && energy_fraction <= 1.0)) {
    throw ArgumentError("energy fraction must lie in (0, 1], got " + std::to_string(energy_fraction));
  }
}

double cosine(const Matrix& a, const Matrix& b) {
  const double aa = frobenius_inner(a, a);
  const double bb = frobenius_inner(b, b);
  if (aa == 0.0 || bb == 0.0) {
    throw UndefinedMetricError("low-rank similarity undefined: reconstruction is identically zero",
                               a.rows(), a.cols());
  }
  // sqrt(aa·bb) rather than sqrt(aa)·sqrt(bb): keeps cos(A, A) exactly 1.
  return std::clamp(frobenius_inner(a, b) / std::sqrt(aa * bb), -1.0, 1.0);
}

double min_row_max(const std::vector<SimilarityRow>& rows) {
  double out = 1.0;
  for (const auto& r : rows) out = std::min(out, r.max);
  return out;
}

}  // namespace

Matrix energy_reconstruction(const SvdFactorization& basis, double energy_fraction) {
  check_fraction(energy_fraction);
  const auto sigma = basis.singular_values();
  std::size_t k = 0;
  try {
    k = energy_rank(sigma, energy_fraction);
  } catch (const DegenerateMatrixError&) {
    throw UndefinedMetricError("low-rank similarity undefined: matrix has no spectral energy",
                               basis.rows(), basis.cols());
  }
  return reconstruct_leading(basis, k);
}

double low_rank_similarity(const Matrix& w0_reconstruction, const SvdFactorization& wt_basis,
                           double energy_fraction) {
  return cosine(energy_reconstruction(wt_basis, energy_fraction), w0_reconstruction);
}

double low_rank_similarity(const Matrix& w0, const Matrix& wt, double energy_fraction) {
  require_same_shape(w0, wt, "low_rank_similarity");
  check_fraction(energy_fraction);
  return low_rank_similarity(energy_reconstruction(svd(w0), energy_fraction), svd(wt), energy_fraction);
}

std::vector<SimilarityRow> singular_vector_similarity(const SvdFactorization& baseline,
                                                      const SvdFactorization& current,
                                                      std::span<const std::size_t> tracked, Side side) {
  if (baseline.rows() != current.rows() || baseline.cols() != current.cols()) {
    throw ArgumentError("singular_vector_similarity: bases have different shapes");
  }
  const Eigen::MatrixXd& original = side == Side::input ? baseline.right() : baseline.left();
  const Eigen::MatrixXd& now = side == Side::input ? current.right() : current.left();

  std::vector<SimilarityRow> rows;
  rows.reserve(tracked.size());
  for (std::size_t t : tracked) {
    if (t >= current.rank_bound()) {
      throw ArgumentError("singular_vector_similarity: tracked direction " + std::to_string(t) +
                          " out of range [0, " + std::to_string(current.rank_bound()) + ")");
    }
    SimilarityRow row;
    row.direction = t;
    row.reliable = current.isolated(t);
    const Eigen::VectorXd dots = (original.transpose() * now.col(static_cast<Eigen::Index>(t))).cwiseAbs();
    row.similarities.resize(static_cast<std::size_t>(dots.size()));
    row.max = -1.0;
    for (Eigen::Index j = 0; j < dots.size(); ++j) {
      const double v = std::min(1.0, dots(j));
      row.similarities[static_cast<std::size_t>(j)] = v;
      if (v > row.max) {
        row.max = v;
        row.argmax = static_cast<std::size_t>(j);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double SpectralReport::ss_min_max() const { return min_row_max(ss_rows); }
double SpectralReport::ss_output_min_max() const { return min_row_max(ss_output_rows); }

TrajectoryAnalyzer::TrajectoryAnalyzer(Matrix baseline, double energy_fraction, std::size_t tracked_count)
    : baseline_(std::move(baseline)),
      basis_(svd(baseline_)),
      reconstruction_(energy_reconstruction(basis_, energy_fraction)),
      energy_fraction_(energy_fraction) {
  const std::size_t n = std::min(tracked_count, basis_.rank_bound());
  tracked_.resize(n);
  for (std::size_t i = 0; i < n; ++i) tracked_[i] = i;
}

SpectralReport TrajectoryAnalyzer::analyze(const Matrix& current, std::size_t round_index) const {
  require_same_shape(baseline_, current, "trajectory snapshot");
  return analyze(current, svd(current), round_index);
}

SpectralReport TrajectoryAnalyzer::analyze(const Matrix& current, const SvdFactorization& current_basis,
                                           std::size_t round_index) const {
  require_same_shape(baseline_, current, "trajectory snapshot");
  SpectralReport report;
  report.round_index = round_index;
  report.ls = low_rank_similarity(reconstruction_, current_basis, energy_fraction_);
  report.ss_rows = singular_vector_similarity(basis_, current_basis, tracked_, Side::input);
  report.ss_output_rows = singular_vector_similarity(basis_, current_basis, tracked_, Side::output);
  const auto sigma = current_basis.singular_values();
  report.energy_profile.assign(sigma.begin(), sigma.end());
  report.frobenius_distance = (current.values() - baseline_.values()).norm();
  return report;
}

std::vector<SpectralReport> analyze_trajectory(std::span<const Matrix> snapshots, double energy_fraction,
                                               std::size_t tracked_count) {
  if (snapshots.size() < 2) throw ArgumentError("analyze_trajectory: need at least two snapshots");
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    if (!snapshots[i].same_shape(snapshots[0])) {
      throw ArgumentError("analyze_trajectory: snapshot " + std::to_string(i) + " is " +
                          snapshots[i].shape_string() + ", baseline is " + snapshots[0].shape_string());
    }
  }
  check_fraction(energy_fraction);
  const TrajectoryAnalyzer analyzer(snapshots[0], energy_fraction, tracked_count);
  std::vector<SpectralReport> reports;
  reports.reserve(snapshots.size() - 1);
  for (std::size_t i = 1; i < snapshots.size(); ++i) reports.push_back(analyzer.analyze(snapshots[i], i));
  return reports;
}

}  // namespace revive
