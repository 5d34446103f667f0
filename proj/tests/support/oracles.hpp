#pragma once

// Reference implementations used only by tests. Each one follows the
// textbook definition directly (explicit sums, explicit loops) and shares no
// code path with the library routine it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "revive/matrix.hpp"
#include "revive/svd.hpp"

namespace revive::testing {

/// Gaussian matrix from std::mt19937_64; independent of the library RNG.
inline Matrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = dist(gen);
  }
  return Matrix(std::move(m));
}

/// Σᵢⱼ aᵢⱼ bᵢⱼ by explicit double loop.
inline double entrywise_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
  }
  return s;
}

/// ⟨Δ, uᵢvⱼᵀ⟩_F with the outer product materialized.
inline double rank_one_coefficient(const Eigen::MatrixXd& delta, const SvdFactorization& basis, std::size_t i,
                                   std::size_t j) {
  const Eigen::MatrixXd outer = basis.left_vector(i) * basis.right_vector(j).transpose();
  return entrywise_inner(delta, outer);
}

/// UΣVᵀ by explicit sum of σᵢ uᵢvᵢᵀ over all i < r.
inline Eigen::MatrixXd triple_product(const SvdFactorization& f) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(f.rows()), static_cast<Eigen::Index>(f.cols()));
  for (std::size_t i = 0; i < f.rank_bound(); ++i) {
    for (Eigen::Index a = 0; a < out.rows(); ++a) {
      for (Eigen::Index b = 0; b < out.cols(); ++b) {
        out(a, b) += f.sigma(i) * f.left_vector(i)(a) * f.right_vector(i)(b);
      }
    }
  }
  return out;
}

/// Smallest k with (Σ_{i<k} σᵢ)/(Σ σᵢ) ≥ tau, recomputing each prefix sum from
/// scratch.
inline std::size_t brute_force_k(const std::vector<double>& sigma, double tau) {
  double total = 0.0;
  for (double s : sigma) total += s;
  if (tau == 0.0) return 0;
  for (std::size_t k = 1; k <= sigma.size(); ++k) {
    double prefix = 0.0;
    for (std::size_t i = 0; i < k; ++i) prefix += sigma[i];
    if (prefix / total >= tau) return k;
  }
  return sigma.size();
}

/// Safe update by the explicit coefficient loop: compute every αᵢⱼ as a
/// Frobenius inner product, then accumulate αᵢⱼ uᵢvⱼᵀ for i ≥ k and j ≥ k.
inline Eigen::MatrixXd coefficient_zeroing_filter(const Eigen::MatrixXd& delta, const SvdFactorization& basis,
                                                  std::size_t k) {
  const std::size_t m = basis.rows();
  const std::size_t n = basis.cols();
  Eigen::MatrixXd safe = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i >= k && j >= k) {
        const double alpha = rank_one_coefficient(delta, basis, i, j);
        safe += alpha * basis.left_vector(i) * basis.right_vector(j).transpose();
      }
    }
  }
  return safe;
}

inline double relative_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want, double scale) {
  return (got - want).norm() / (scale > 0.0 ? scale : 1.0);
}

}  // namespace revive::testing
