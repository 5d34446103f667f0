#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "revive/matrix.hpp"

namespace revive {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Maps a 128-bit counter and 64-bit key to 128 random bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key) noexcept;
};

/// Sequential stream of random variates over a Philox counter space.
///
/// The 64-bit seed is the key; the counter is (block index: 64 bits,
/// stream id: 64 bits). Streams with distinct ids never overlap. Every variate
/// is derived with integer arithmetic plus std::log/std::cos/std::sqrt:
///   uniform  = (x >> 11) · 2⁻⁵³             in [0, 1)
///   normal   = √(−2 ln u₁) · cos(2π u₂)     with u₁ = ((x₁ >> 11) + 1) · 2⁻⁵³
/// (Box–Muller, cosine branch only; one normal consumes two 64-bit words).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  double normal() noexcept;

  Vector normal_vector(std::size_t n);
  /// Uniformly distributed point on the unit sphere in ℝⁿ.
  Vector unit_vector(std::size_t n);
  /// rows × cols standard-normal matrix, filled in row-major order.
  Eigen::MatrixXd normal_matrix(std::size_t rows, std::size_t cols);
  /// n × n Haar-distributed orthogonal matrix (QR of a Gaussian matrix with
  /// the sign of R's diagonal folded into Q).
  Eigen::MatrixXd orthogonal(std::size_t n);

 private:
  void refill() noexcept;

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  std::size_t available_ = 0;
};

/// Stream ids used by the toolkit. The high byte tags the purpose, the low
/// 56 bits carry a caller counter (edit number, group index, ...).
enum class StreamTag : std::uint8_t {
  kBaseMatrix = 1,
  kEdit = 2,
  kProbe = 3,
  kPerturbation = 4,
  kAnchor = 5,
  kBasisCheck = 6,
};

std::uint64_t stream_id(StreamTag tag, std::uint64_t counter) noexcept;

}  // namespace revive
