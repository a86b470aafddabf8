#pragma once

#include <cstdint>
#include <random>

namespace dw {

// Seeded generator with hand-rolled variate transforms so that a given seed
// reproduces the same stream on every platform (std:: distribution
// implementations are not pinned by the standard).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unit-mean exponential.
    double exponential();

    // Standard normal (polar Marsaglia, spare discarded to keep the stream
    // a pure function of draw count).
    double normal();

    // Poisson via inversion (sum of exponential gaps); fine for the means
    // used here (window counts of a few hundred).
    std::uint64_t poisson(double mean);

    // Gamma(shape, scale), Marsaglia-Tsang.
    double gamma(double shape, double scale);

  private:
    std::mt19937_64 engine_;
};

// Per-realization seed derived from a base seed and an index (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace dw
