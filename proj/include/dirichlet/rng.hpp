#pragma once

#include <cstdint>

namespace dirichlet::rng {

// Counter-mode pseudorandom function built from the splitmix64 finalizer.
// Every draw is a pure function of (key, counter), so results do not depend
// on evaluation order or on how work is partitioned.

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0) noexcept {
  std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
  k = mix64(k ^ (a * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL));
  k = mix64(k ^ (b * 0xa0761d6478bd642fULL + 0xe7037ed1a0b428dbULL));
  return k;
}

constexpr std::uint64_t draw(std::uint64_t key, std::uint64_t counter) noexcept {
  return mix64(key ^ mix64(counter + 0x9e3779b97f4a7c15ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double draw_unit(std::uint64_t key, std::uint64_t counter) noexcept {
  return static_cast<double>(draw(key, counter) >> 11) * 0x1.0p-53;
}

}  // namespace dirichlet::rng
