#ifndef GMFB_RNG_HPP_
#define GMFB_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace gmfb {

// Deterministic random stream. The bit source is std::mt19937_64 (whose
// output sequence is fixed by the standard); the real-valued draws below are
// implemented here rather than with std::*_distribution so that results are
// identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes two uniforms per call.
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return radius * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Unbiased uniform index in [0, n) by rejection.
  std::size_t uniform_index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Child-stream seed derived by hashing (base_seed, seed_index, role, name).
// Adding a policy or reordering the roster never changes another stream.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t seed_index,
                          std::string_view role, std::string_view name = {});

}  // namespace gmfb

#endif  // GMFB_RNG_HPP_
