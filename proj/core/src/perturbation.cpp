#include "revive/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revive/errors.hpp"
#include "revive/random.hpp"

namespace revive {

namespace {

// Attempts before giving up on a non-zero draw; a zero draw has probability 0.
constexpr std::uint64_t kMaxRedraws = 16;
constexpr std::uint64_t kRedrawStride = std::uint64_t{1} << 40;

}  // namespace

Matrix generate_perturbation(const SvdFactorization& basis, const PerturbationSpec& spec) {
  if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon)) {
    throw ArgumentError("perturbation epsilon must be positive and finite");
  }
  if (spec.group.empty()) throw ArgumentError("perturbation group is empty");
  const std::size_t r = basis.rank_bound();
  IndexGroup group = spec.group;
  std::sort(group.begin(), group.end());
  if (std::adjacent_find(group.begin(), group.end()) != group.end()) {
    throw ArgumentError("perturbation group has duplicate indices");
  }
  if (group.back() >= r) {
    throw ArgumentError("perturbation group index " + std::to_string(group.back()) + " out of range [0, " +
                        std::to_string(r) + ")");
  }

  std::vector<bool> in_group(r, false);
  for (std::size_t g : group) in_group[g] = true;

  for (std::uint64_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    RandomStream rng(spec.seed, stream_id(StreamTag::kPerturbation, spec.substream + attempt * kRedrawStride));
    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(basis.rows()),
                                                   static_cast<Eigen::Index>(basis.cols()));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        const bool selected = spec.side == Side::input ? in_group[j] : in_group[i];
        if (selected) coeffs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.normal();
      }
    }
    Eigen::MatrixXd delta = basis.left() * coeffs * basis.right().transpose();
    const double norm = delta.norm();
    if (norm > 0.0) return Matrix((spec.epsilon / norm) * delta);
  }
  throw NumericalError("perturbation draw vanished repeatedly", basis.rows(), basis.cols());
}

std::vector<PerturbedMatrix> perturbation_sweep(const Matrix& w, double epsilon, std::size_t group_count,
                                                Side side, std::uint64_t seed) {
  const SvdFactorization basis = svd(w);
  const auto groups = energy_groups(basis, group_count);
  std::vector<PerturbedMatrix> out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) continue;
    PerturbationSpec spec{side, groups[g], epsilon, seed, g};
    Matrix delta = generate_perturbation(basis, spec);
    Matrix perturbed = w + delta;
    out.push_back({g, groups[g], std::move(perturbed), std::move(delta)});
  }
  return out;
}

}  // namespace revive
