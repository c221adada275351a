#pragma once

#include <complex>
#include <cstdint>

namespace kch {

/// SplitMix64 stream. Used instead of <random> distributions so that
/// sampled values are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    /// Log-uniform modulus in [rmin, rmax], uniform argument.
    std::complex<double> next_annulus(double rmin, double rmax) {
        const double r = rmin * std::pow(rmax / rmin, next_double());
        const double t = 6.283185307179586476925286766559 * next_double();
        return {r * std::cos(t), r * std::sin(t)};
    }

    /// Derive an independent stream for subtask `index`.
    Rng fork(std::uint64_t index) const {
        Rng child(state_ ^ (0xd1342543de82ef95ULL * (index + 1)));
        child.next_u64();
        return child;
    }

  private:
    std::uint64_t state_;
};

} // namespace kch
