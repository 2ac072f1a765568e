#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "maes/block_cipher.hpp"
#include "maes/image.hpp"
#include "maes/util.hpp"

namespace maes::pipeline {

using Iv = std::array<std::uint8_t, 16>;

// All seeds and map parameters fixing one deterministic encryption session.
struct ChaoticParams {
    double r = 3.99;
    double mask_seed = 0.5;
    double perm_seed = 0.75;
    double shift_seed = 0.7;
    double henon_a = 1.4;
    double henon_b = 0.3;
    double henon_x0 = 0.1;
    double henon_y0 = 0.1;
    double shuffle_seed = 0.37; // post-encryption shuffle stage only

    void validate() const; // throws DomainError
};

// Fixed IV and key used for reproducing the reported tables.
Iv paper_iv();
cipher::Key paper_key();

struct CipherImage {
    Iv iv{};
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    bool post_shuffle = false;
    Bytes ciphertext; // length = width*height zero-padded to a multiple of 16

    bool operator==(const CipherImage&) const = default;
};

// Zero-pad to the next multiple of 16; true length is recoverable from the
// stored dimensions so the padding needs no self-description.
Bytes pad_to_block(std::span<const std::uint8_t> data);

// M[0] = P[0]^K[0]; M[i] = P[i]^K[i]^M[i-1].
Bytes mask_with_feedback(std::span<const std::uint8_t> data,
                         std::span<const std::uint8_t> keystream);
Bytes unmask_with_feedback(std::span<const std::uint8_t> masked,
                           std::span<const std::uint8_t> keystream);

// out[i] = data[perm[i]].
Bytes permute(std::span<const std::uint8_t> data, std::span<const std::uint32_t> perm);
Bytes unpermute(std::span<const std::uint8_t> data, std::span<const std::uint32_t> perm);

// Full pipeline: pad, feedback XOR mask, chaotic permutation, then per 16-byte
// block a fresh Henon S-box (seed-chained), CBC pre-XOR, a logistic shift
// pattern and the modified AES round function; ciphertext blocks are chained
// once more by XOR, and an optional logistic shuffle reorders the final bytes.
// Round keys are expanded once from the block-0 S-box.
CipherImage encrypt_image(const GrayImage& img, const cipher::Key& key, const Iv& iv,
                          const ChaoticParams& params, bool post_shuffle = false);

// Exact inverse; truncates padding using the stored dimensions.
GrayImage decrypt_image(const CipherImage& c, const cipher::Key& key,
                        const ChaoticParams& params);

// Container format, big-endian: "MAE1" | version u8 | flags u8 | width u32 |
// height u32 | iv[16] | ciphertext.
Bytes write_container(const CipherImage& c);
CipherImage read_container(std::span<const std::uint8_t> data);

} // namespace maes::pipeline
