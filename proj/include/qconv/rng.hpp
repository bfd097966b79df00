#ifndef QCONV_RNG_HPP
#define QCONV_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace qconv {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}
}  // namespace detail

// Counter-based generator: the i-th draw of stream s under seed q is a pure
// function of (q, s, i). Sweeps assign one stream per sample index, so results
// do not depend on how samples are scheduled across threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(detail::splitmix64(seed ^ detail::splitmix64(stream * 0x632BE59BD9B4E019ull))) {}

  std::uint64_t next_u64() {
    return detail::splitmix64(key_ ^ (0xD1B54A32D192ED03ull * ++counter_));
  }

  // uniform on [0,1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller; pairs are cached
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // complex gaussian with E|z|^2 = 1
  std::complex<double> next_cgaussian() {
    const double s = std::numbers::sqrt2 / 2.0;
    double re = next_gaussian();
    double im = next_gaussian();
    return {s * re, s * im};
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qconv

#endif
