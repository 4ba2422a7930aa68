#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "procyc/distribution.hpp"

namespace procyc::rng {

/// Philox4x64-10 counter-based block cipher (Salmon, Moraes, Dror, Shaw,
/// "Parallel random numbers: as easy as 1, 2, 3", SC'11). One call encrypts a
/// 256-bit counter under a 128-bit key; distinct (key, counter) values give
/// independent, reproducible 256-bit blocks with no sequential state.
struct Philox4x64 {
  static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                            std::array<std::uint64_t, 2> key) {
    constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
    constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
    constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
    constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;
    for (int round = 0; round < 10; ++round) {
      const unsigned __int128 p0 = static_cast<unsigned __int128>(kMul0) * ctr[0];
      const unsigned __int128 p1 = static_cast<unsigned __int128>(kMul1) * ctr[2];
      const auto lo0 = static_cast<std::uint64_t>(p0);
      const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
      const auto lo1 = static_cast<std::uint64_t>(p1);
      const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// Maps 64 random bits to a double strictly inside (0,1):
/// (k + 1/2) / 2^53 for the top 53 bits k. Safe under log() and pow().
inline double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// A deterministic random stream identified by (seed, stream_id). Draw i is a
/// pure function of (seed, stream_id, i): each variate consumes exactly one
/// Philox block, so replication streams are independent and random-access,
/// and results do not depend on thread scheduling.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{seed, 0}, stream_id_(stream_id), index_(0) {}

  /// Two independent uniforms in (0,1) from block `index`.
  std::array<double, 2> uniform_pair_at(std::uint64_t index) const {
    const auto b = Philox4x64::block({index, 0, stream_id_, 0}, key_);
    return {to_open_unit(b[0]), to_open_unit(b[1])};
  }

  /// Standard normal via the Box-Muller cosine form.
  double normal_at(std::uint64_t index) const {
    const auto u = uniform_pair_at(index);
    return std::sqrt(-2.0 * std::log(u[0])) * std::cos(2.0 * M_PI * u[1]);
  }

  /// Plain Student-t(nu) via the polar/cosine form
  /// T = sqrt(nu (U1^{-2/nu} - 1)) cos(2 pi U2): the radius is the radial
  /// quantile of the bivariate spherical t, and the method reduces to
  /// Box-Muller as nu -> inf.
  double student_t_at(std::uint64_t index, double nu) const {
    const auto u = uniform_pair_at(index);
    const double r2 = nu * (std::pow(u[0], -2.0 / nu) - 1.0);
    return std::sqrt(r2) * std::cos(2.0 * M_PI * u[1]);
  }

  /// Mean-0 variance-1 innovation for the given model.
  double innovation_at(std::uint64_t index, const DistributionModel& model) const {
    if (model.kind() == DistKind::Gaussian) return normal_at(index);
    const double nu = model.nu();
    return std::sqrt((nu - 2.0) / nu) * student_t_at(index, nu);
  }

  // Stateful convenience wrappers (sequential draw index).
  double next_normal() { return normal_at(index_++); }
  double next_student_t(double nu) { return student_t_at(index_++, nu); }
  double next_innovation(const DistributionModel& model) { return innovation_at(index_++, model); }
  std::uint64_t position() const { return index_; }

 private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t index_;
};

}  // namespace procyc::rng
