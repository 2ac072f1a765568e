#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "maes/chaos.hpp"
#include "maes/util.hpp"

namespace maes::cipher {

// 16-byte block, column-major AES state: byte i sits at row i%4, column i/4.
using Block = std::array<std::uint8_t, 16>;
using Key = std::array<std::uint8_t, 16>;

// 11 round keys of 16 bytes (44 expanded words).
using RoundKeys = std::array<std::uint8_t, 176>;

// The FIPS-197 S-box paired with its inverse, usable wherever a chaotic box is.
const chaos::SBox& standard_sbox();

// Classical ShiftRows amounts (0,1,2,3).
chaos::ShiftPattern standard_shift_pattern();

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b);

Block sub_bytes(Block state, const chaos::SBox& sbox);
Block inv_sub_bytes(Block state, const chaos::SBox& sbox);
Block shift_rows(Block state, const chaos::ShiftPattern& pattern);
Block inv_shift_rows(Block state, const chaos::ShiftPattern& pattern);
Block mix_columns(Block state);
Block inv_mix_columns(Block state);
Block add_round_key(Block state, std::span<const std::uint8_t> round_key);

// AES-128 schedule with SubWord routed through the supplied S-box. With the
// standard S-box this reproduces the classical schedule bit for bit.
RoundKeys expand_key(const Key& key, const chaos::SBox& sbox);

// AES-128 round structure with per-call S-box and ShiftRows pattern; the same
// box and pattern apply to all ten rounds, and the final round omits
// MixColumns as in classical AES.
Block encrypt_block(const Block& block, const RoundKeys& rks,
                    const chaos::SBox& sbox, const chaos::ShiftPattern& pattern);

// Rounds undone in reverse order (not the equivalent-inverse-cipher form).
Block decrypt_block(const Block& block, const RoundKeys& rks,
                    const chaos::SBox& sbox, const chaos::ShiftPattern& pattern);

// Plain FIPS-197 AES-128 in ECB mode with PKCS#7 padding. Used to wrap the
// dynamic session key under the static key.
Bytes aes128_ecb_encrypt(std::span<const std::uint8_t> data, const Key& key);

// Throws CryptoError on bad padding, which is how a wrong static key shows up.
Bytes aes128_ecb_decrypt(std::span<const std::uint8_t> data, const Key& key);

} // namespace maes::cipher
