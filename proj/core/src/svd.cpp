#include "revive/svd.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "revive/errors.hpp"

namespace revive {

namespace {

// Index of the entry with the largest magnitude; the first wins ties.
Eigen::Index dominant_entry(const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

}  // namespace

bool SvdFactorization::isolated(std::size_t i) const {
  const auto& s = data_->sigma;
  if (i >= s.size()) {
    throw ArgumentError("singular index " + std::to_string(i) + " out of range [0, " +
                        std::to_string(s.size()) + ")");
  }
  const double gap = kDegeneracyGap * s.front();
  if (s.front() == 0.0) return false;
  if (i > 0 && s[i - 1] - s[i] < gap) return false;
  if (i + 1 < s.size() && s[i] - s[i + 1] < gap) return false;
  return true;
}

SvdFactorization svd(const Matrix& w) {
  Eigen::BDCSVD<Eigen::MatrixXd> solver(w.values(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("SVD failed to converge on " + w.shape_string() + " matrix", w.rows(),
                         w.cols());
  }

  auto data = std::make_shared<SvdFactorization::Data>();
  data->u = solver.matrixU();
  data->v = solver.matrixV();
  const Eigen::VectorXd& s = solver.singularValues();
  data->sigma.assign(s.data(), s.data() + s.size());

  const auto r = static_cast<Eigen::Index>(data->sigma.size());
  for (Eigen::Index i = 0; i < r; ++i) {
    if (data->u(dominant_entry(data->u.col(i)), i) < 0.0) {
      data->u.col(i) *= -1.0;
      data->v.col(i) *= -1.0;
    }
  }
  for (Eigen::Index i = r; i < data->u.cols(); ++i) {
    if (data->u(dominant_entry(data->u.col(i)), i) < 0.0) data->u.col(i) *= -1.0;
  }
  for (Eigen::Index j = r; j < data->v.cols(); ++j) {
    if (data->v(dominant_entry(data->v.col(j)), j) < 0.0) data->v.col(j) *= -1.0;
  }

  for (std::size_t i = 0; i + 1 < data->sigma.size(); ++i) {
    if (data->sigma[i] - data->sigma[i + 1] < kDegeneracyGap * data->sigma.front()) {
      data->degenerate = true;
      break;
    }
  }
  if (!data->sigma.empty() && data->sigma.front() == 0.0) data->degenerate = true;

  return SvdFactorization(std::move(data));
}

Matrix reconstruct(const SvdFactorization& f, std::span<const std::size_t> indices) {
  const std::size_t r = f.rank_bound();
  std::vector<bool> seen(r, false);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(f.rows()),
                                              static_cast<Eigen::Index>(f.cols()));
  for (std::size_t i : indices) {
    if (i >= r) {
      throw ArgumentError("reconstruct: component index " + std::to_string(i) +
                          " out of range [0, " + std::to_string(r) + ")");
    }
    if (seen[i]) throw ArgumentError("reconstruct: duplicate component index " + std::to_string(i));
    seen[i] = true;
    out.noalias() += f.sigma(i) * f.left_vector(i) * f.right_vector(i).transpose();
  }
  return Matrix(std::move(out));
}

Matrix reconstruct_leading(const SvdFactorization& f, std::size_t count) {
  if (count > f.rank_bound()) {
    throw ArgumentError("reconstruct_leading: count " + std::to_string(count) + " exceeds rank bound " +
                        std::to_string(f.rank_bound()));
  }
  const auto k = static_cast<Eigen::Index>(count);
  const Eigen::Map<const Eigen::VectorXd> s(f.singular_values().data(), k);
  return Matrix(f.left().leftCols(k) * s.asDiagonal() * f.right().leftCols(k).transpose());
}

}  // namespace revive
