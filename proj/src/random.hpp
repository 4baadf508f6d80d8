#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace foodrec::detail {

// mt19937_64 output is fixed by the standard; the distributions in <random>
// are not, so bounded draws are done here to keep corpora reproducible
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::mt19937_64::max();
    const std::uint64_t limit = max - (max % n + 1) % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x > limit);
    return x % n;
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

// Largest-remainder apportionment of `total` over `weights`; ties go to the
// lower index.
std::vector<std::size_t> apportion(const std::vector<double>& weights, std::size_t total);

}  // namespace foodrec::detail
