#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace v2x {

// Finalizer of the splitmix64 generator (Steele et al.), also used as the
// mixing step when deriving child seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Derives a child seed from (master seed, purpose tag, entity ids, ...).
// Streams for different key tuples never overlap, which keeps the channel
// realization independent of scheduler settings and iteration order.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = 0x6a09e667f3bcc909ull;
  for (std::uint64_t k : keys) {
    s = mix64(s ^ (k + 0x9e3779b97f4a7c15ull));
    s += 0x9e3779b97f4a7c15ull;
  }
  return mix64(s);
}

// Purpose tags for derive_seed. Keeping them in one enum avoids accidental
// stream collisions between subsystems.
enum class StreamPurpose : std::uint64_t {
  kShadowing = 1,
  kScheduler = 2,
  kMobility = 3,
};

inline std::uint64_t purpose_tag(StreamPurpose p) {
  return static_cast<std::uint64_t>(p);
}

// Small deterministic generator (splitmix64 sequence). All randomness in the
// simulator goes through this class so results are reproducible bit-for-bit
// across runs and platforms, which std::random distributions do not provide.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, bound) via Lemire's method.
  std::uint32_t next_below(std::uint32_t bound) {
    std::uint64_t x = next_u64() & 0xffffffffull;
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m) & 0xffffffffull;
    if (low < bound) {
      std::uint64_t threshold = (0x100000000ull - bound) % bound;
      while (low < threshold) {
        x = next_u64() & 0xffffffffull;
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m) & 0xffffffffull;
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // Standard normal via Box-Muller (cosine branch, no cached second value).
  double next_gaussian() {
    double u1 = next_unit_open();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_;
};

// One standard-normal value fully determined by the key. Used for the
// per-(window, pair) shadowing draws.
inline double keyed_gaussian(std::uint64_t key) {
  Rng r(key);
  return r.next_gaussian();
}

// FNV-1a, used for config digests and hashing opaque string ids.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  return fnv1a64(s.data(), s.size());
}

}  // namespace v2x
