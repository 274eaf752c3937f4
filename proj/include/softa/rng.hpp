#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace softa {

// Deterministic random stream. All sampling goes through explicit draws from
// mt19937_64 so results are bit-identical across platforms and independent of
// the standard library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform() {
    return std::ldexp(static_cast<double>(gen_() >> 11), -53);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller, pair cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double std) { return mean + std * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  // uniform integer in [0, n)
  int uniform_int(int n) {
    return static_cast<int>(static_cast<uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * static_cast<uint64_t>(n)) >>
        64));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[uniform_int(i + 1)]);
    }
  }

  uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace softa
