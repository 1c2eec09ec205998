#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace bergman {

using Philox4x32Block = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// The Philox4x32 block function with 10 rounds (Salmon et al., SC'11).
Philox4x32Block philox4x32_10(Philox4x32Block counter, Philox4x32Key key);

/// Counter-based random stream. The 128-bit counter holds a 64-bit position
/// and a 64-bit stream id; the key is the run seed. Streams with distinct ids
/// are independent, so work can be split into tasks (one id per task) and
/// the results stay bit-identical however the tasks are scheduled.
///
/// Satisfies UniformRandomBitGenerator, but the distribution helpers below
/// are implemented here rather than through <random> so sample values do not
/// depend on the standard library in use.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  /// Independent child stream for a task.
  RandomStream split(std::uint64_t task) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_positive();
  /// Standard normal (Box-Muller).
  double normal();
  /// Standard complex normal, E|z|^2 = 1.
  std::complex<double> complex_normal();
  /// Uniform point of the unit circle.
  std::complex<double> phase();
  /// Gamma(shape, 1) by Marsaglia-Tsang.
  double gamma(double shape);
  double beta(double a, double b);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
  Philox4x32Block buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace bergman
