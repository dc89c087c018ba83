#ifndef QCHAN_RNG_HPP
#define QCHAN_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace qchan {

/// Philox4x32-10 block function: 10 rounds of the counter-based bijection.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer, used to derive child keys.
std::uint64_t mix64(std::uint64_t z);

/// Reproducible random stream keyed by (master_seed, stream_index).
///
/// The Philox key is the master seed and the upper half of the counter is the
/// stream index, so streams never overlap and need no coordination between
/// threads. Draws are a pure function of the pair and the draw position.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller; each call consumes two uniforms.
  double normal();

  /// Standard complex Gaussian: real and imaginary parts iid N(0, 1/2).
  std::complex<double> complex_normal();

  /// Independent stream derived from this one's key and `index`.
  RngStream child(std::uint64_t index) const;

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int pos_ = 2;
};

}  // namespace qchan

#endif  // QCHAN_RNG_HPP
