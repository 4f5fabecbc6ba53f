#pragma once

#include <cstdint>
#include <initializer_list>

namespace rmbmi {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed for one experiment cell: every random draw derives from
/// the experiment seed and the cell's coordinates only.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> counters) noexcept {
  std::uint64_t state = mix64(seed);
  for (const auto c : counters) state = mix64(state ^ mix64(c + 0x632be59bd9b4e019ULL));
  return state;
}

}  // namespace rmbmi
