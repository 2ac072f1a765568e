#include "maes/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maes/errors.hpp"

namespace maes::chaos {

namespace {

// Evaluation order is pinned: (r*x) first, then *(1-x). Contraction is
// disabled project-wide, so iterates are bit-identical across builds.
inline double logistic_next(double x, double r) {
    x = (r * x) * (1.0 - x);
    if (x == 0.0 || x == 1.0) x = 0.5;
    return x;
}

void check_logistic_domain(double x, double r) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("logistic seed must lie in (0,1)");
    if (!(r > 0.0 && r <= 4.0)) throw DomainError("logistic parameter r must lie in (0,4]");
}

inline double frac_abs(double v) { return std::fmod(std::fabs(v), 1.0); }

} // namespace

double logistic_step(double x, double r) {
    check_logistic_domain(x, r);
    return logistic_next(x, r);
}

std::vector<double> logistic_sequence(double seed, double r, std::size_t n) {
    check_logistic_domain(seed, r);
    if (n == 0) throw DomainError("logistic_sequence: n must be >= 1");
    std::vector<double> out(n);
    double x = seed;
    for (std::size_t i = 0; i < n; ++i) {
        x = logistic_next(x, r);
        out[i] = x;
    }
    return out;
}

Bytes keystream_bytes(double seed, double r, std::size_t n) {
    check_logistic_domain(seed, r);
    if (n == 0) throw DomainError("keystream_bytes: n must be >= 1");
    Bytes out(n);
    double x = seed;
    for (std::size_t i = 0; i < n; ++i) {
        x = logistic_next(x, r);
        out[i] = static_cast<std::uint8_t>(static_cast<int>(256.0 * x) & 0xFF);
    }
    return out;
}

std::vector<std::uint32_t> permutation_from_sequence(std::span<const double> seq) {
    if (seq.empty()) throw DomainError("permutation_from_sequence: empty sequence");
    std::vector<std::uint32_t> perm(seq.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return seq[a] < seq[b]; });
    return perm;
}

double logistic_tent_step(double x, double mu) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("logistic-tent: x must lie in [0,1]");
    if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("logistic-tent: mu must lie in (0,1]");
    if (x < 0.5) return (4.0 * x) * (1.0 - x);
    return mu * (1.0 - std::fabs(2.0 * x - 1.0));
}

HenonState henon_step(const HenonState& s) {
    HenonState n = s;
    n.x = (1.0 - (s.a * s.x) * s.x) + s.y;
    n.y = s.b * s.x;
    return n;
}

SBoxResult generate_sbox(double x0, double y0, double a, double b) {
    if (!(x0 > 0.0 && x0 <= 1.0) || !(y0 > 0.0 && y0 <= 1.0))
        throw DomainError("generate_sbox: seeds must lie in (0,1]");

    constexpr std::size_t kIterationCap = 1'000'000;

    HenonState s{x0, y0, a, b};
    std::array<bool, 256> seen{};
    SBox box;
    std::size_t count = 0;
    std::size_t iters = 0;

    while (count < 256) {
        if (iters++ >= kIterationCap)
            throw DomainError("generate_sbox: degenerate orbit, no full table within cap");
        s = henon_step(s);
        if (!std::isfinite(s.x) || !std::isfinite(s.y) ||
            std::fabs(s.x) > 2.0 || std::fabs(s.y) > 2.0) {
            // Orbit left the trapping region; fold back into the unit square.
            s.x = std::isfinite(s.x) ? frac_abs(s.x) : 0.1;
            s.y = std::isfinite(s.y) ? frac_abs(s.y) : 0.1;
            if (s.x <= 1e-9) s.x = 0.1;
            if (s.y <= 1e-9) s.y = 0.1;
        }
        const double frac = frac_abs(s.x);
        const int v = std::min(static_cast<int>(frac * 256.0), 255);
        if (!seen[v]) {
            seen[v] = true;
            box.forward[count++] = static_cast<std::uint8_t>(v);
        }
    }
    for (int i = 0; i < 256; ++i) box.inverse[box.forward[i]] = static_cast<std::uint8_t>(i);
    return SBoxResult{box, s};
}

HenonState chain_seed(const HenonState& final_state) {
    HenonState next = final_state;
    next.x = frac_abs(final_state.x);
    next.y = frac_abs(final_state.y);
    if (next.x <= 1e-9) next.x = 0.1;
    if (next.y <= 1e-9) next.y = 0.1;
    return next;
}

ShiftPattern shift_pattern(double seed, double r, std::size_t block_index) {
    double x = std::fmod(seed + static_cast<double>(block_index) * 0.0001, 1.0);
    bool used[4] = {false, false, false, false};
    ShiftPattern p;
    std::size_t n = 0;
    for (int i = 0; i < 4; ++i) {
        x = logistic_next(x, r);
        const int sv = static_cast<int>(x * 4.0) % 4;
        if (!used[sv]) {
            used[sv] = true;
            p.shifts[n++] = static_cast<std::uint8_t>(sv);
        }
    }
    for (int v = 0; v < 4; ++v)
        if (!used[v]) p.shifts[n++] = static_cast<std::uint8_t>(v);
    return p;
}

} // namespace maes::chaos
