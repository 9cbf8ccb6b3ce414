// Counter-based random number streams for reproducible parallel Monte Carlo.
//
// Every stream is addressed by (master seed, repetition, purpose). Draws are a
// pure function of that address and the draw counter, so repetitions can run
// on any number of threads in any order and still produce identical output.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace pbv {

// Philox-4x32 block function, 10 rounds (Salmon et al., SC'11 reference wiring).
struct Philox4x32 {
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Block round(const Block& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  static Block encrypt(Block ctr, Key key) {
    ctr = round(ctr, key);
    for (int r = 1; r < 10; ++r) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
      ctr = round(ctr, key);
    }
    return ctr;
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Addresses one repetition of an ensemble. Identical (master, rep) pairs
// always reproduce the same trajectory and the same photon counts.
struct SimSeed {
  std::uint64_t master = 0;
  std::uint64_t rep = 0;
};

// Independent draw families within one (master, rep) stream. Keeping jump
// sampling and photon emission on separate purposes means adding a draw to
// one never shifts the other.
enum class RngPurpose : std::uint32_t {
  Jumps = 0,
  Emission = 1,
  ScanNoise = 2,
  Generic = 3,
};

class CounterRng {
 public:
  explicit CounterRng(SimSeed seed, RngPurpose purpose = RngPurpose::Generic)
      : rep_(seed.rep) {
    const std::uint64_t key =
        seed.master ^ splitmix64(static_cast<std::uint64_t>(purpose) + 1);
    key_ = {static_cast<std::uint32_t>(key),
            static_cast<std::uint32_t>(key >> 32)};
  }

  std::uint64_t next_u64() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const Philox4x32::Block ctr = {
        static_cast<std::uint32_t>(counter_),
        static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(rep_),
        static_cast<std::uint32_t>(rep_ >> 32)};
    ++counter_;
    const auto out = Philox4x32::encrypt(ctr, key_);
    spare_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    have_spare_ = true;
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  }

  // Uniform on (0, 1]; never returns 0 so -log(u) is always finite.
  double uniform() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return 1.0 - u;
  }

  // Exponential dwell with the given rate; +inf when the rate vanishes.
  double exponential(double rate_hz) {
    if (rate_hz <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(uniform()) / rate_hz;
  }

  // Exact Poisson sampling by counting unit-rate arrivals in [0, mean).
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    long n = 0;
    double acc = -std::log(uniform());
    while (acc < mean) {
      ++n;
      acc += -std::log(uniform());
    }
    return n;
  }

  // Standard normal via Box-Muller (one value per call, no caching).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  Philox4x32::Key key_{};
  std::uint64_t rep_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t spare_ = 0;
  bool have_spare_ = false;
};

// Stable sub-seed derivation for pipeline stages ("fig2/power1", ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag));
}

}  // namespace pbv
