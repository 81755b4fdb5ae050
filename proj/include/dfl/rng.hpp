#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace dfl {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Role tags keep streams independent even when two base seeds collide.
namespace seed_role {
constexpr std::uint64_t topology = 0x746f706f;
constexpr std::uint64_t data = 0x64617461;
constexpr std::uint64_t test_data = 0x74657374;
constexpr std::uint64_t init = 0x696e6974;
constexpr std::uint64_t walk = 0x77616c6b;
constexpr std::uint64_t batch = 0x62617463;
}  // namespace seed_role

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t role,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(base ^ splitmix64(role)) + index);
}

// Deterministic random stream. All draw functions are stateless beyond the
// engine, so a serialized engine restores the exact stream position.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; two engine draws per call, no cached spare.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Circularly symmetric complex normal, E|z|^2 = 1.
  std::complex<double> cnormal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

  // Uniform integer in [0, n), rejection sampling (exact).
  std::uint64_t index(std::uint64_t n) {
    assert(n >= 1);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  std::string serialize() const {
    std::ostringstream oss;
    oss << engine_;
    return oss.str();
  }

  void restore(const std::string& s) {
    std::istringstream iss(s);
    iss >> engine_;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dfl
