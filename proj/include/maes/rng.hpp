#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace maes {

// Deterministic random source. All randomized operations in the library take
// one of these explicitly; there is no hidden global RNG. The helper methods
// avoid std:: distributions so that results do not depend on the standard
// library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static Rng from_entropy();

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n), n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n);

    std::uint8_t byte() { return static_cast<std::uint8_t>(next_u64() & 0xFF); }

    void fill(std::span<std::uint8_t> out);

    // Uniform in [0, 1) with 53 bits of precision.
    double unit();

    // Gaussian via Box-Muller.
    double normal(double mean, double stddev);

private:
    std::mt19937_64 eng_;
};

} // namespace maes
