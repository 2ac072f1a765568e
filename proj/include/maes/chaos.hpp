#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "maes/util.hpp"

namespace maes::chaos {

// One logistic-map iteration x <- r*x*(1-x). Seeds outside (0,1) or r outside
// (0,4] are rejected. An iterate that lands exactly on 0 or 1 (possible only
// at r = 4 or through rounding) is replaced by 0.5 so the orbit never sticks
// to a fixed point.
double logistic_step(double x, double r);

// n iterates starting from the step after `seed`; the seed itself is not
// emitted and there is no burn-in.
std::vector<double> logistic_sequence(double seed, double r, std::size_t n);

// Keystream bytes k_i = floor(256 * x_i).
Bytes keystream_bytes(double seed, double r, std::size_t n);

// Argsort of `seq`, ties broken by lower index (stable). perm[i] is the index
// of the rank-i element.
std::vector<std::uint32_t> permutation_from_sequence(std::span<const double> seq);

// Logistic-tent hybrid: 4x(1-x) for x < 0.5, mu*(1-|2x-1|) otherwise.
double logistic_tent_step(double x, double mu);

struct HenonState {
    double x = 0.1;
    double y = 0.1;
    double a = 1.4;
    double b = 0.3;
};

// One exact Henon iteration (x,y) <- (1 - a*x^2 + y, b*x).
HenonState henon_step(const HenonState& s);

// Byte substitution table and its inverse. forward is a permutation of 0..255.
struct SBox {
    std::array<std::uint8_t, 256> forward{};
    std::array<std::uint8_t, 256> inverse{};
};

struct SBoxResult {
    SBox sbox;
    HenonState state; // Henon state when the table completed, for seed chaining
};

// Builds an S-box by iterating the Henon map from (x0, y0), normalizing the
// fractional part of |x| to a byte and keeping first occurrences until 256
// unique values exist (capped at 1e6 iterations). Orbits that leave the
// trapping region (|x| or |y| > 2) are folded back into the unit square, so
// generation terminates for every seed pair in (0,1]^2.
SBoxResult generate_sbox(double x0, double y0, double a = 1.4, double b = 0.3);

// Seeds for the next block's S-box: fractional parts of the final state, with
// components <= 1e-9 replaced by 0.1.
HenonState chain_seed(const HenonState& final_state);

// Per-row cyclic left-shift amounts; always a permutation of {0,1,2,3}.
struct ShiftPattern {
    std::array<std::uint8_t, 4> shifts{};
};

// Four logistic iterations from (seed + block_index*0.0001) mod 1 propose
// shift values floor(4x) mod 4; duplicates are skipped and the pattern is
// completed with the missing values in ascending order.
ShiftPattern shift_pattern(double seed, double r, std::size_t block_index);

} // namespace maes::chaos
