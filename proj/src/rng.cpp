#include "gmfb/rng.hpp"

#include <cmath>
#include <limits>

namespace gmfb {

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n <= 1) return 0;
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return static_cast<std::size_t>(x % range);
}

namespace {

// splitmix64 finalizer; good avalanche for seed mixing.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t mix_bytes(std::uint64_t h, std::string_view s) {
  for (const char c : s) {
    h = mix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  }
  return mix64(h ^ static_cast<std::uint64_t>(s.size()));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t seed_index,
                          std::string_view role, std::string_view name) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ seed_index);
  h = mix_bytes(h, role);
  h = mix_bytes(h, name);
  return h;
}

}  // namespace gmfb
