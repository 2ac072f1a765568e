#pragma once

#include <span>
#include <string>

#include "maes/image.hpp"
#include "maes/pipeline.hpp"
#include "maes/rng.hpp"

namespace maes::analysis {

// Shannon entropy over 256 intensity bins, in bits (0*log0 = 0).
double entropy(std::span<const std::uint8_t> data);
double entropy(const GrayImage& img);

enum class Direction { Horizontal, Vertical, Diagonal };

// Pearson correlation of n_pairs adjacent-pixel pairs sampled without
// replacement. A zero-variance sample is reported as 0.
double correlation(const GrayImage& img, Direction dir, std::size_t n_pairs, Rng& rng);

// Differential metrics between two equal-length byte fields (percent).
double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
// UACI variant with the byte difference taken modulo 256, the convention the
// reported ~50% differential figures follow.
double uaci_mod256(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

double mse(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double psnr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b); // inf if equal

// Mean SSIM over 11x11 Gaussian windows (sigma 1.5), C1=(0.01*255)^2 and
// C2=(0.03*255)^2. Images must be at least 11x11.
double ssim(const GrayImage& a, const GrayImage& b);

// Gray-level co-occurrence matrix at `offset` (dx, dy) with pixels quantized
// to `levels` bins via floor(p*levels/256); probabilities sum to 1.
struct Glcm {
    unsigned levels = 0;
    int dx = 1, dy = 0;
    std::vector<double> p; // levels x levels, row-major

    double at(unsigned a, unsigned b) const { return p[std::size_t(a) * levels + b]; }
};

Glcm glcm(const GrayImage& img, unsigned levels, int dx = 1, int dy = 0);
double homogeneity(const Glcm& g);
double energy(const Glcm& g);

// Percent of ciphertext bits that change when one key bit flips.
double avalanche(const GrayImage& img, const cipher::Key& key, unsigned key_bit,
                 const pipeline::Iv& iv, const pipeline::ChaoticParams& params);

// Re-encrypts with pixel (0,0) changed by +1 mod 256, identical IV and seeds.
struct DifferentialResult {
    double npcr = 0;
    double uaci = 0;         // classical |a-b| convention (~33.5 for random fields)
    double uaci_wrapped = 0; // mod-256 convention (~50 for random fields)
};
DifferentialResult differential_metrics(const GrayImage& img, const cipher::Key& key,
                                        const pipeline::Iv& iv,
                                        const pipeline::ChaoticParams& params);

// Ciphertext corruption experiments. Geometry is interpreted on the
// width x height byte grid of the ciphertext.
pipeline::CipherImage attack_crop(const pipeline::CipherImage& c, std::uint32_t x,
                                  std::uint32_t y, std::uint32_t w, std::uint32_t h);
pipeline::CipherImage attack_data_loss(const pipeline::CipherImage& c, double fraction,
                                       std::uint32_t block_size, Rng& rng);
pipeline::CipherImage attack_salt_pepper(const pipeline::CipherImage& c, double density,
                                         Rng& rng);
pipeline::CipherImage attack_gaussian(const pipeline::CipherImage& c, double sigma, Rng& rng);
pipeline::CipherImage attack_xor_mask(const pipeline::CipherImage& c, std::uint8_t mask);

// Image-domain distortions for the code-robustness harness.
GrayImage add_gaussian_noise(const GrayImage& img, double sigma, Rng& rng);
GrayImage add_salt_pepper(const GrayImage& img, double density, Rng& rng);
GrayImage gaussian_blur5(const GrayImage& img, double sigma = 1.0);

struct MetricReport {
    double entropy = 0;
    double corr_h = 0, corr_v = 0, corr_d = 0;
    double npcr = 0, uaci = 0, uaci_wrapped = 0;
    double mse = 0, psnr = 0;
    double ssim = 0;
    double homogeneity = 0, energy = 0;
};

std::string report_text(const MetricReport& r);
std::string report_json(const MetricReport& r);

} // namespace maes::analysis
