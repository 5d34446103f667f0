#include "revive/dominant_subspace.hpp"

#include <string>

#include "revive/errors.hpp"

namespace revive {

namespace {

double total_energy(std::span<const double> sigma) {
  double total = 0.0;
  for (double s : sigma) total += s;
  if (!(total > 0.0)) throw DegenerateMatrixError("spectrum has no energy: all singular values are zero");
  return total;
}

}  // namespace

std::size_t energy_rank(std::span<const double> sigma, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ArgumentError("energy fraction must lie in [0, 1], got " + std::to_string(fraction));
  }
  const double total = total_energy(sigma);
  if (fraction == 0.0) return 0;
  double partial = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    partial += sigma[k];
    if (partial / total >= fraction) return k + 1;
  }
  return sigma.size();
}

DominantSubspace select_k(const SvdFactorization& basis, double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw ArgumentError("tau must lie in [0, 1), got " + std::to_string(tau));
  }
  const auto sigma = basis.singular_values();
  const std::size_t k = energy_rank(sigma, tau);
  double partial = 0.0;
  for (std::size_t i = 0; i < k; ++i) partial += sigma[i];
  return DominantSubspace(k, tau, partial / total_energy(sigma), basis);
}

EnergyShare energy_of(const SvdFactorization& basis, std::span<const std::size_t> indices) {
  const auto sigma = basis.singular_values();
  std::vector<bool> seen(sigma.size(), false);
  EnergyShare share;
  for (std::size_t i : indices) {
    if (i >= sigma.size()) {
      throw ArgumentError("energy_of: index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(sigma.size()) + ")");
    }
    if (seen[i]) throw ArgumentError("energy_of: duplicate index " + std::to_string(i));
    seen[i] = true;
    share.absolute += sigma[i];
  }
  share.ratio = share.absolute / total_energy(sigma);
  return share;
}

std::vector<IndexGroup> energy_groups(std::span<const double> sigma, std::size_t group_count) {
  if (group_count == 0) throw ArgumentError("energy_groups: group_count must be >= 1");
  const double total = total_energy(sigma);
  std::vector<IndexGroup> groups(group_count);
  double partial = 0.0;
  std::size_t band = 1;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    partial += sigma[i];
    const double position = i + 1 == sigma.size() ? 1.0 : partial / total;
    while (band < group_count &&
           static_cast<double>(band) / static_cast<double>(group_count) < position) {
      ++band;
    }
    groups[band - 1].push_back(i);
  }
  return groups;
}

std::vector<IndexGroup> energy_groups(const SvdFactorization& basis, std::size_t group_count) {
  return energy_groups(basis.singular_values(), group_count);
}

}  // namespace revive
