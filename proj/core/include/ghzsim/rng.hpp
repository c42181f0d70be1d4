#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace ghzsim {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Top byte of the stream index; keeps sampling and noise draws disjoint.
enum class StreamDomain : std::uint8_t { sampling = 1, noise = 2, test = 0xff };

std::uint64_t stream_id(StreamDomain domain, std::uint64_t index);

/// Independent random stream keyed by (seed, stream index). Each stream owns a
/// 2^64-block counter space, so identical (seed, index) pairs replay exactly.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint32_t next_u32();

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();

  bool coin() { return (next_u32() >> 31) != 0; }

  /// Standard real normal (Box-Muller).
  double normal();

  /// Density exp(-|c|^2) / pi: each real component has variance 1/2.
  std::complex<double> complex_normal();

  /// Gamma(shape 2, scale 1) as -ln(u1 u2).
  double gamma2();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ghzsim
