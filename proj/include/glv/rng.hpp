#pragma once

#include <cstdint>
#include <cmath>

namespace glv {

// Deterministic keyed random streams. Every draw is a pure function of its
// key, so a run is bit-reproducible for a fixed seed no matter how the work
// is scheduled across threads. Not cryptographic.

enum class Channel : std::uint64_t {
  ConsumptionDraw = 0,
  TraitInit = 1,
};

struct StreamKey {
  std::uint64_t seed = 0;
  std::int64_t agent_index = 0;
  std::int64_t iteration = 0;
  Channel channel = Channel::ConsumptionDraw;
};

namespace rng_detail {

// murmur3 64-bit finalizer
inline std::uint64_t fmix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

// positional salts so that permuted key words hash differently
inline constexpr std::uint64_t kSalt1 = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kSalt2 = 0xbf58476d1ce4e5b9ULL;
inline constexpr std::uint64_t kSalt3 = 0x94d049bb133111ebULL;
inline constexpr std::uint64_t kLane = 0xd6e8feb86659fd93ULL;

}  // namespace rng_detail

// Collapse (seed, w1, w2, w3) into one well-mixed 64-bit state.
inline std::uint64_t keyed_state(std::uint64_t seed, std::uint64_t w1,
                                 std::uint64_t w2, std::uint64_t w3) {
  using namespace rng_detail;
  std::uint64_t h = fmix64(seed ^ kSalt1);
  h = fmix64(h ^ fmix64(w1 ^ kSalt1));
  h = fmix64(h ^ fmix64(w2 ^ kSalt2));
  h = fmix64(h ^ fmix64(w3 ^ kSalt3));
  return h;
}

inline std::uint64_t keyed_state(const StreamKey& key) {
  return keyed_state(key.seed, static_cast<std::uint64_t>(key.agent_index),
                     static_cast<std::uint64_t>(key.iteration),
                     static_cast<std::uint64_t>(key.channel));
}

inline std::uint64_t lane_bits(std::uint64_t state, std::uint64_t lane) {
  using namespace rng_detail;
  return fmix64(state ^ fmix64(lane ^ kLane));
}

// Uniform on the open interval (0,1); never returns 0 or 1 exactly.
inline double bits_to_uniform01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double keyed_uniform01(std::uint64_t state, std::uint64_t lane) {
  return bits_to_uniform01(lane_bits(state, lane));
}

// Standard normal deviate from lanes (2k, 2k+1) of the keyed state
// (Box-Muller; u1 is bounded away from 0 so the log is always finite).
inline double keyed_standard_normal(std::uint64_t state, std::uint64_t pair_index) {
  const double u1 = keyed_uniform01(state, 2 * pair_index);
  const double u2 = keyed_uniform01(state, 2 * pair_index + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(6.283185307179586476925286766559 * u2);
}

// Deterministic N(mean, sd) draw for a key. sd = 0 returns mean exactly.
inline double sample_normal(const StreamKey& key, double mean, double sd) {
  if (sd == 0.0) return mean;
  return mean + sd * keyed_standard_normal(keyed_state(key), 0);
}

// Normal draw resampled (with derived sub-keys) until it is >= lo.
// Gives up after 64 attempts and returns lo; with sensible (mean, sd, lo)
// that path is unreachable in practice.
inline double sample_truncated_normal(const StreamKey& key, double mean,
                                      double sd, double lo) {
  if (sd == 0.0) return mean >= lo ? mean : lo;
  const std::uint64_t state = keyed_state(key);
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const double draw = mean + sd * keyed_standard_normal(state, attempt);
    if (draw >= lo) return draw;
  }
  return lo;
}

inline double sample_uniform01(const StreamKey& key) {
  return keyed_uniform01(keyed_state(key), 0);
}

}  // namespace glv
